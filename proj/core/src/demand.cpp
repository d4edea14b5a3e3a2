#include "stochlot/demand.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stochlot/math.hpp"

namespace stochlot {

namespace {

constexpr double kPsdRelTol = 1e-10;
constexpr double kJitterCap = 1e-8;  // relative to trace

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

MVNHorizon::MVNHorizon(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  const auto T = mean_.size();
  require(T >= 1, "MVNHorizon: horizon must be at least 1");
  require(cov_.rows() == T && cov_.cols() == T,
          "MVNHorizon: covariance dimensions must match the mean vector");
  const double scale = cov_.cwiseAbs().maxCoeff();
  require((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() <= kPsdRelTol * std::max(scale, 1.0),
          "MVNHorizon: covariance must be symmetric");
  cov_ = 0.5 * (cov_ + cov_.transpose().eval());
  if (scale > 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov_, Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= -kPsdRelTol * scale,
            "MVNHorizon: covariance must be positive semidefinite");
  }
}

double MVNHorizon::sd(int t) const {
  return std::sqrt(std::max(cov_(t - 1, t - 1), 0.0));
}

double MVNHorizon::total_sd() const { return std::sqrt(std::max(cov_.sum(), 0.0)); }

bool MVNHorizon::is_lag1() const {
  const int T = horizon();
  const double tol = 1e-12 * std::max(cov_.cwiseAbs().maxCoeff(), 1.0);
  for (int i = 0; i < T; ++i) {
    for (int j = i + 2; j < T; ++j) {
      if (std::abs(cov_(i, j)) > tol) return false;
    }
  }
  return true;
}

MVNHorizon build_lag1_mvn(std::span<const double> pattern, double cv, double rho) {
  const int T = static_cast<int>(pattern.size());
  require(T >= 1, "build_lag1_mvn: empty pattern");
  require(cv > 0.0, "build_lag1_mvn: cv must be positive");
  require(std::abs(rho) <= 0.5, "build_lag1_mvn: |rho| must not exceed 0.5");
  Eigen::VectorXd mean(T);
  for (int t = 0; t < T; ++t) {
    require(pattern[t] > 0.0, "build_lag1_mvn: pattern entries must be positive");
    mean(t) = pattern[t];
  }
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(T, T);
  for (int t = 0; t < T; ++t) cov(t, t) = (cv * mean(t)) * (cv * mean(t));
  for (int t = 0; t + 1 < T; ++t) {
    const double c = rho * (cv * mean(t)) * (cv * mean(t + 1));
    cov(t, t + 1) = cov(t + 1, t) = c;
  }
  return MVNHorizon(std::move(mean), std::move(cov));
}

std::string to_string(TsKind kind) {
  switch (kind) {
    case TsKind::ar: return "AR";
    case TsKind::ma: return "MA";
    case TsKind::arma: return "ARMA";
    case TsKind::ar_arch: return "AR_ARCH";
  }
  return "?";
}

namespace {

double companion_spectral_radius(const std::vector<double>& beta) {
  const int P = static_cast<int>(beta.size());
  if (P == 0) return 0.0;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(P, P);
  for (int p = 0; p < P; ++p) comp(0, p) = beta[p];
  for (int p = 1; p < P; ++p) comp(p, p - 1) = 1.0;
  return comp.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

void TimeSeriesSpec::validate() const {
  const bool has_ar = kind == TsKind::ar || kind == TsKind::arma || kind == TsKind::ar_arch;
  if (has_ar) {
    require(!ar_coeffs.empty(), "TimeSeriesSpec: AR-family process needs AR coefficients");
    require(companion_spectral_radius(ar_coeffs) < 1.0,
            "TimeSeriesSpec: AR part is not covariance-stationary");
  } else {
    require(ar_coeffs.empty(), "TimeSeriesSpec: MA process cannot carry AR coefficients");
  }
  if (kind == TsKind::ar || kind == TsKind::ar_arch) {
    require(ma_coeffs.empty(), "TimeSeriesSpec: pure AR process cannot carry MA coefficients");
  }
  if (kind == TsKind::ar_arch) {
    require(arch_coeffs.size() >= 2, "TimeSeriesSpec: ARCH needs alpha_0 and at least alpha_1");
    require(arch_coeffs[0] > 0.0, "TimeSeriesSpec: alpha_0 must be positive");
    double sum = 0.0;
    for (std::size_t m = 1; m < arch_coeffs.size(); ++m) {
      require(arch_coeffs[m] >= 0.0, "TimeSeriesSpec: alpha_m must be non-negative");
      sum += arch_coeffs[m];
    }
    require(sum < 1.0, "TimeSeriesSpec: sum of alpha_m must be below 1");
  } else {
    require(arch_coeffs.empty(), "TimeSeriesSpec: ARCH coefficients only valid for AR_ARCH");
    require(!innovation_sd.empty(), "TimeSeriesSpec: innovation sd required");
    for (double s : innovation_sd) require(s >= 0.0, "TimeSeriesSpec: negative innovation sd");
  }
}

double TimeSeriesSpec::stationary_mean() const {
  if (kind == TsKind::ma) return intercept;
  double s = 0.0;
  for (double b : ar_coeffs) s += b;
  return intercept / (1.0 - s);
}

double TimeSeriesSpec::innovation_variance(int t) const {
  if (kind == TsKind::ar_arch) {
    double sum = 0.0;
    for (std::size_t m = 1; m < arch_coeffs.size(); ++m) sum += arch_coeffs[m];
    return arch_coeffs[0] / (1.0 - sum);
  }
  if (innovation_sd.size() == 1) return innovation_sd[0] * innovation_sd[0];
  const auto idx = static_cast<std::size_t>(t - 1);
  require(idx < innovation_sd.size(), "TimeSeriesSpec: period outside sd schedule");
  return innovation_sd[idx] * innovation_sd[idx];
}

double TimeSeriesSpec::init_demand(int k) const {
  const auto idx = static_cast<std::size_t>(k);
  if (idx < init_demands.size()) return init_demands[idx];
  return stationary_mean();
}

double TimeSeriesSpec::init_shock(int k) const {
  const auto idx = static_cast<std::size_t>(k);
  if (idx < init_shocks.size()) return init_shocks[idx];
  return 0.0;
}

double StationaryMoments::gamma(int lag) const {
  const auto idx = static_cast<std::size_t>(std::abs(lag));
  require(idx < autocov.size(), "StationaryMoments: lag beyond precomputed range");
  return autocov[idx];
}

namespace {

// Weights of the causal MA(infinity) expansion: psi_0 = 1,
// psi_j = theta_j + sum_p beta_p psi_{j-p}.
std::vector<double> psi_weights(const std::vector<double>& beta,
                                const std::vector<double>& theta, int upto) {
  std::vector<double> psi(static_cast<std::size_t>(upto) + 1, 0.0);
  psi[0] = 1.0;
  for (int j = 1; j <= upto; ++j) {
    double v = j <= static_cast<int>(theta.size()) ? theta[j - 1] : 0.0;
    for (int p = 1; p <= static_cast<int>(beta.size()) && p <= j; ++p) {
      v += beta[p - 1] * psi[j - p];
    }
    psi[static_cast<std::size_t>(j)] = v;
  }
  return psi;
}

// Yule-Walker with MA correction terms:
//   gamma_k - sum_p beta_p gamma_{|k-p|} = sigma^2 sum_{j=k}^{Q} theta_j psi_{j-k}
// for k = 0..max(P,Q), then pure AR recursion beyond.
std::vector<double> autocov_numeric(const std::vector<double>& beta,
                                    const std::vector<double>& theta, double sigma2,
                                    int max_lag) {
  const int P = static_cast<int>(beta.size());
  const int Q = static_cast<int>(theta.size());
  const int m = std::max(P, Q);
  const auto psi = psi_weights(beta, theta, Q);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + 1, m + 1);
  Eigen::VectorXd rhs(m + 1);
  for (int k = 0; k <= m; ++k) {
    A(k, k) += 1.0;
    for (int p = 1; p <= P; ++p) A(k, std::abs(k - p)) -= beta[p - 1];
    double s = k == 0 ? psi[0] : 0.0;  // theta_0 = 1 contributes only at k=0
    for (int j = std::max(k, 1); j <= Q; ++j) s += theta[j - 1] * psi[j - k];
    rhs(k) = sigma2 * s;
  }
  Eigen::VectorXd g = A.fullPivLu().solve(rhs);
  std::vector<double> out(static_cast<std::size_t>(max_lag) + 1, 0.0);
  for (int k = 0; k <= std::min(m, max_lag); ++k) out[k] = g(k);
  for (int k = m + 1; k <= max_lag; ++k) {
    double v = 0.0;
    for (int p = 1; p <= P; ++p) v += beta[p - 1] * out[k - p];
    out[k] = v;
  }
  return out;
}

std::vector<double> autocov_arma11(double b1, double t1, double sigma2, int max_lag) {
  std::vector<double> g(static_cast<std::size_t>(max_lag) + 1, 0.0);
  g[0] = (1.0 + t1 * t1 + 2.0 * t1 * b1) / (1.0 - b1 * b1) * sigma2;
  if (max_lag >= 1) g[1] = b1 * g[0] + t1 * sigma2;
  for (int k = 2; k <= max_lag; ++k) g[k] = b1 * g[k - 1];
  return g;
}

// Closed-form ARMA(3,3) autocovariance: the gamma_0..gamma_3 linear system
// eliminated by substitution, with shorthand constants
//   a = sum_{j=0..3} theta_j psi_j   (theta_0 = 1)
//   b = sum_{j=1..3} theta_j psi_{j-1}
//   c = sum_{j=2..3} theta_j psi_{j-2}
//   d = theta_3.
std::vector<double> autocov_arma33(const std::vector<double>& beta,
                                   const std::vector<double>& theta, double sigma2,
                                   int max_lag) {
  const double b1 = beta[0], b2 = beta[1], b3 = beta[2];
  const double t1 = theta[0], t2 = theta[1], t3 = theta[2];
  const double a = t3 * b1 * b1 * b1 + t2 * b1 * b1 + t3 * t1 * b1 * b1 +
                   2.0 * t3 * b1 * b2 + t1 * b1 + t1 * t2 * b1 + t2 * t3 * b1 +
                   t2 * b2 + t1 * t3 * b2 + t3 * b3 + t1 * t1 + t2 * t2 + t3 * t3 + 1.0;
  const double b = t3 * b1 * b1 + t2 * b1 + t3 * t1 * b1 + t3 * b2 + t1 + t1 * t2 + t2 * t3;
  const double c = t3 * b1 + t2 + t1 * t3;
  const double d = t3;
  const double ep = 1.0 - b2 - b1 * b3 - b3 * b3;
  const double A = 1.0 - b3 * b3 - b2 * b2 - b1 * b2 * b3;
  const double B = (b1 + b2 * b3) + (b2 + b1 * b3) * (b1 + b3);
  const double C = c * (b2 + b1 * b3) + a + d * b3;

  std::vector<double> g(static_cast<std::size_t>(std::max(max_lag, 3)) + 1, 0.0);
  g[0] = sigma2 * (B * (c * b3 + b) + C * ep) / (A * ep - B * (b1 + b2 * b3));
  g[1] = ((b1 + b2 * b3) * g[0] + (c * b3 + b) * sigma2) / ep;
  g[2] = b2 * g[0] + (b1 + b3) * g[1] + c * sigma2;
  g[3] = b3 * g[0] + b2 * g[1] + b1 * g[2] + d * sigma2;
  for (int k = 4; k <= max_lag; ++k) {
    g[k] = b1 * g[k - 1] + b2 * g[k - 2] + b3 * g[k - 3];
  }
  g.resize(static_cast<std::size_t>(max_lag) + 1);
  return g;
}

}  // namespace

StationaryMoments ts_stationary_moments_numeric(const TimeSeriesSpec& spec, int max_lag) {
  spec.validate();
  require(spec.constant_sd() || spec.kind == TsKind::ar_arch,
          "ts_stationary_moments: constant innovation sd required");
  StationaryMoments out;
  out.mean = spec.stationary_mean();
  out.autocov = autocov_numeric(spec.ar_coeffs, spec.ma_coeffs,
                                spec.innovation_variance(1), max_lag);
  out.variance = out.autocov[0];
  return out;
}

StationaryMoments ts_stationary_moments(const TimeSeriesSpec& spec, int max_lag) {
  spec.validate();
  require(spec.constant_sd() || spec.kind == TsKind::ar_arch,
          "ts_stationary_moments: constant innovation sd required");
  const double sigma2 = spec.innovation_variance(1);
  StationaryMoments out;
  out.mean = spec.stationary_mean();
  switch (spec.kind) {
    case TsKind::ma: {
      const int Q = spec.ma_order();
      std::vector<double> th(static_cast<std::size_t>(Q) + 1, 0.0);
      th[0] = 1.0;
      for (int q = 1; q <= Q; ++q) th[q] = spec.ma_coeffs[q - 1];
      out.autocov.assign(static_cast<std::size_t>(max_lag) + 1, 0.0);
      for (int k = 0; k <= std::min(Q, max_lag); ++k) {
        double s = 0.0;
        for (int i = 0; i + k <= Q; ++i) s += th[i] * th[i + k];
        out.autocov[k] = s * sigma2;
      }
      break;
    }
    case TsKind::ar:
    case TsKind::ar_arch:
      out.autocov = autocov_numeric(spec.ar_coeffs, {}, sigma2, max_lag);
      break;
    case TsKind::arma:
      if (spec.ar_order() == 1 && spec.ma_order() == 1) {
        out.autocov = autocov_arma11(spec.ar_coeffs[0], spec.ma_coeffs[0], sigma2, max_lag);
      } else if (spec.ar_order() == 3 && spec.ma_order() == 3) {
        out.autocov = autocov_arma33(spec.ar_coeffs, spec.ma_coeffs, sigma2, max_lag);
      } else {
        out.autocov = autocov_numeric(spec.ar_coeffs, spec.ma_coeffs, sigma2, max_lag);
      }
      break;
  }
  out.variance = out.autocov[0];
  return out;
}

MVNHorizon ts_horizon_mvn(const TimeSeriesSpec& spec, int T) {
  spec.validate();
  require(T >= 1, "ts_horizon_mvn: horizon must be at least 1");
  const int P = spec.ar_order();
  const int Q = spec.ma_order();

  // Mean path: deterministic recursion with fixed initial conditions.
  Eigen::VectorXd mean(T);
  for (int t = 1; t <= T; ++t) {
    double m = spec.intercept;
    for (int p = 1; p <= P; ++p) {
      m += spec.ar_coeffs[p - 1] *
           (t - p >= 1 ? mean(t - p - 1) : spec.init_demand(p - t));
    }
    for (int q = 1; q <= Q; ++q) {
      if (t - q <= 0) m += spec.ma_coeffs[q - 1] * spec.init_shock(q - t);
      // in-horizon shocks have zero mean
    }
    mean(t - 1) = m;
  }

  // w(t,s): weight of innovation eps_s in demand d_t.
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(T, T);
  for (int t = 1; t <= T; ++t) {
    for (int s = 1; s <= t; ++s) {
      double v = (s == t) ? 1.0 : 0.0;
      const int lag = t - s;
      if (lag >= 1 && lag <= Q) v += spec.ma_coeffs[lag - 1];
      for (int p = 1; p <= P && t - p >= s; ++p) {
        v += spec.ar_coeffs[p - 1] * w(t - p - 1, s - 1);
      }
      w(t - 1, s - 1) = v;
    }
  }

  Eigen::VectorXd ivar(T);
  for (int s = 1; s <= T; ++s) ivar(s - 1) = spec.innovation_variance(s);

  Eigen::MatrixXd cov(T, T);
  for (int t = 0; t < T; ++t) {
    for (int u = t; u < T; ++u) {
      double c = 0.0;
      for (int s = 0; s <= t; ++s) c += w(t, s) * w(u, s) * ivar(s);
      cov(t, u) = cov(u, t) = c;
    }
  }
  return MVNHorizon(std::move(mean), std::move(cov));
}

ConvolutionMoments convolution_moments(const MVNHorizon& mvn, int j, int t) {
  require(1 <= j && j <= t && t <= mvn.horizon(),
          "convolution_moments: need 1 <= j <= t <= T");
  ConvolutionMoments out;
  out.start = j;
  out.end = t;
  double m = 0.0;
  for (int k = j; k <= t; ++k) m += mvn.mean(k);
  out.mean = m;
  const auto block = mvn.covariance_matrix().block(j - 1, j - 1, t - j + 1, t - j + 1);
  out.sd = std::sqrt(std::max(block.sum(), 0.0));
  return out;
}

ConditionalMVN condition_on_prefix(const MVNHorizon& mvn,
                                   std::span<const double> observed) {
  const int T = mvn.horizon();
  const int p = static_cast<int>(observed.size());
  require(p >= 1 && p < T, "condition_on_prefix: observed prefix must leave periods ahead");

  const auto& cov = mvn.covariance_matrix();
  const auto& mu = mvn.mean_vector();
  const int q = T - p;
  const Eigen::MatrixXd s11 = cov.topLeftCorner(p, p);
  const Eigen::MatrixXd s21 = cov.bottomLeftCorner(q, p);
  const Eigen::MatrixXd s22 = cov.bottomRightCorner(q, q);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s11);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double thresh = 1e-12 * std::max(ev.cwiseAbs().maxCoeff(), 0.0);
  bool truncated = false;
  Eigen::VectorXd inv_ev(p);
  for (int i = 0; i < p; ++i) {
    if (ev(i) > thresh) {
      inv_ev(i) = 1.0 / ev(i);
    } else {
      inv_ev(i) = 0.0;
      truncated = true;
    }
  }
  const Eigen::MatrixXd pinv =
      es.eigenvectors() * inv_ev.asDiagonal() * es.eigenvectors().transpose();

  Eigen::VectorXd delta(p);
  for (int i = 0; i < p; ++i) delta(i) = observed[i] - mu(i);

  Eigen::VectorXd cmean = mu.tail(q) + s21 * (pinv * delta);
  Eigen::MatrixXd ccov = s22 - s21 * pinv * s21.transpose();
  ccov = 0.5 * (ccov + ccov.transpose().eval());
  return ConditionalMVN{MVNHorizon(std::move(cmean), std::move(ccov)), truncated};
}

namespace {

// PSD-tolerant lower Cholesky; returns the 1-based order of the offending
// leading minor on failure, 0 on success.
int try_cholesky(const Eigen::MatrixXd& a, Eigen::MatrixXd& lower) {
  const int n = static_cast<int>(a.rows());
  const double tol = 1e-14 * std::max(a.diagonal().cwiseAbs().maxCoeff(), 1.0);
  lower = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) d -= lower(j, k) * lower(j, k);
    if (d < -tol) return j + 1;
    if (d <= tol) {
      // exactly degenerate direction: the rest of the column must vanish
      for (int i = j + 1; i < n; ++i) {
        double s = a(i, j);
        for (int k = 0; k < j; ++k) s -= lower(i, k) * lower(j, k);
        if (std::abs(s) > 1e-7 * std::max(1.0, std::abs(a(i, j)))) return j + 1;
        lower(i, j) = 0.0;
      }
      lower(j, j) = 0.0;
      continue;
    }
    lower(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= lower(i, k) * lower(j, k);
      lower(i, j) = s / lower(j, j);
    }
  }
  return 0;
}

Eigen::MatrixXd cholesky_with_jitter(const Eigen::MatrixXd& cov) {
  const int n = static_cast<int>(cov.rows());
  const double trace = cov.trace();
  Eigen::MatrixXd lower;
  if (trace <= 0.0) return Eigen::MatrixXd::Zero(n, n);
  double jitter = 0.0;
  int minor = try_cholesky(cov, lower);
  while (minor != 0) {
    jitter = jitter == 0.0 ? 1e-12 * trace : jitter * 10.0;
    if (jitter > kJitterCap * trace) {
      throw std::runtime_error(
          "sample_paths: covariance factorization failed, leading minor of order " +
          std::to_string(minor) + " not positive definite after jitter");
    }
    Eigen::MatrixXd shifted = cov;
    shifted.diagonal().array() += jitter;
    minor = try_cholesky(shifted, lower);
  }
  return lower;
}

}  // namespace

PathSampler::PathSampler(const MVNHorizon& mvn)
    : horizon_(mvn.horizon()),
      model_(MvnData{mvn.mean_vector(), cholesky_with_jitter(mvn.covariance_matrix())}) {}

PathSampler::PathSampler(const TimeSeriesSpec& spec, int T) : horizon_(T), model_(spec) {
  spec.validate();
  require(T >= 1, "PathSampler: horizon must be at least 1");
}

void PathSampler::sample(std::uint64_t substream, std::span<double> out) const {
  require(static_cast<int>(out.size()) == horizon_, "PathSampler: output span size mismatch");
  std::mt19937_64 eng(substream);
  if (const auto* mvn = std::get_if<MvnData>(&model_)) {
    const int T = horizon_;
    Eigen::VectorXd z(T);
    for (int t = 0; t < T; ++t) z(t) = standard_normal(eng);
    Eigen::VectorXd d = mvn->mean + mvn->chol * z;
    for (int t = 0; t < T; ++t) out[t] = d(t);
    return;
  }
  const auto& spec = std::get<TimeSeriesSpec>(model_);
  const int P = spec.ar_order();
  const int Q = spec.ma_order();
  const int M = spec.kind == TsKind::ar_arch
                    ? static_cast<int>(spec.arch_coeffs.size()) - 1
                    : 0;
  // lag buffers: index 0 = most recent
  std::vector<double> lag_d(static_cast<std::size_t>(std::max(P, 1)), 0.0);
  std::vector<double> lag_e(static_cast<std::size_t>(std::max(std::max(Q, M), 1)), 0.0);
  for (int p = 0; p < P; ++p) lag_d[p] = spec.init_demand(p);
  for (int q = 0; q < static_cast<int>(lag_e.size()); ++q) lag_e[q] = spec.init_shock(q);

  for (int t = 1; t <= horizon_; ++t) {
    double sd;
    if (spec.kind == TsKind::ar_arch) {
      double v = spec.arch_coeffs[0];
      for (int m = 1; m <= M; ++m) v += spec.arch_coeffs[m] * lag_e[m - 1] * lag_e[m - 1];
      sd = std::sqrt(v);
    } else {
      sd = std::sqrt(spec.innovation_variance(t));
    }
    const double eps = sd * standard_normal(eng);
    double d = spec.intercept + eps;
    for (int p = 1; p <= P; ++p) d += spec.ar_coeffs[p - 1] * lag_d[p - 1];
    for (int q = 1; q <= Q; ++q) d += spec.ma_coeffs[q - 1] * lag_e[q - 1];
    out[t - 1] = d;
    for (int p = P - 1; p >= 1; --p) lag_d[p] = lag_d[p - 1];
    if (P > 0) lag_d[0] = d;
    for (int q = static_cast<int>(lag_e.size()) - 1; q >= 1; --q) lag_e[q] = lag_e[q - 1];
    lag_e[0] = eps;
  }
}

namespace {

Eigen::MatrixXd sample_matrix(const PathSampler& sampler, int n, std::uint64_t seed) {
  require(n >= 1, "sample_paths: need at least one path");
  const int T = sampler.horizon();
  Eigen::MatrixXd paths(n, T);
  std::vector<double> row(static_cast<std::size_t>(T));
  for (int r = 0; r < n; ++r) {
    sampler.sample(substream_seed(seed, static_cast<std::uint64_t>(r)), row);
    for (int t = 0; t < T; ++t) paths(r, t) = row[static_cast<std::size_t>(t)];
  }
  return paths;
}

}  // namespace

Eigen::MatrixXd sample_paths(const MVNHorizon& mvn, int n, std::uint64_t seed) {
  return sample_matrix(PathSampler(mvn), n, seed);
}

Eigen::MatrixXd sample_paths(const TimeSeriesSpec& spec, int T, int n, std::uint64_t seed) {
  return sample_matrix(PathSampler(spec, T), n, seed);
}

}  // namespace stochlot
