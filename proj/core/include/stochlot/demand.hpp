#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace stochlot {

/// Multivariate-normal demand over a planning horizon: one mean per period
/// plus the full period-by-period covariance. Immutable after construction.
class MVNHorizon {
 public:
  /// Validates symmetry, positive semidefiniteness (relative tolerance 1e-10)
  /// and dimension consistency; throws std::invalid_argument otherwise.
  MVNHorizon(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  int horizon() const { return static_cast<int>(mean_.size()); }

  /// Period indices are 1-based throughout, matching planning conventions.
  double mean(int t) const { return mean_(t - 1); }
  double sd(int t) const;
  double covariance(int t, int u) const { return cov_(t - 1, u - 1); }

  const Eigen::VectorXd& mean_vector() const { return mean_; }
  const Eigen::MatrixXd& covariance_matrix() const { return cov_; }

  double total_mean() const { return mean_.sum(); }
  /// Standard deviation of total demand over the whole horizon.
  double total_sd() const;

  /// True when every entry beyond the first off-diagonal vanishes, i.e. the
  /// lag-1 structure the SDP benchmark requires.
  bool is_lag1() const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

/// Lag-1 correlated demand: sd(t) = cv * mean(t), adjacent periods correlate
/// with coefficient rho, all other pairs are independent. |rho| <= 0.5 keeps
/// the tridiagonal matrix positive definite for any horizon.
MVNHorizon build_lag1_mvn(std::span<const double> pattern, double cv, double rho);

enum class TsKind { ar, ma, arma, ar_arch };

std::string to_string(TsKind kind);

/// Coefficients of an AR/MA/ARMA/AR-ARCH demand process.
///
/// intercept is beta_0 for AR-family processes and theta_0' (the process
/// mean) for MA. innovation_sd holds either a single constant value or one
/// value per period; AR_ARCH ignores it (the ARCH coefficients determine the
/// innovation variance). init_demands[k] is the observed demand of period
/// -k (k=0 is period 0); init_shocks likewise. Both default to the
/// stationary mean resp. zero when left empty.
struct TimeSeriesSpec {
  TsKind kind = TsKind::ar;
  double intercept = 0.0;
  std::vector<double> ar_coeffs;    // beta_1..beta_P
  std::vector<double> ma_coeffs;    // theta_1..theta_Q
  std::vector<double> arch_coeffs;  // alpha_0..alpha_M
  std::vector<double> innovation_sd;
  std::vector<double> init_demands;
  std::vector<double> init_shocks;

  /// Stationarity (companion-matrix spectral radius < 1 for the AR part) and
  /// ARCH positivity/summability checks. Throws on violation.
  void validate() const;

  bool constant_sd() const { return innovation_sd.size() <= 1; }
  double stationary_mean() const;
  /// Var(eps_t); for AR_ARCH this is the unconditional ARCH variance
  /// alpha_0 / (1 - sum alpha_m).
  double innovation_variance(int t) const;

  double init_demand(int k) const;  // demand of period -k
  double init_shock(int k) const;   // shock of period -k

  int ar_order() const { return static_cast<int>(ar_coeffs.size()); }
  int ma_order() const { return static_cast<int>(ma_coeffs.size()); }
};

/// Mean, variance, and autocovariance function of a stationary process.
struct StationaryMoments {
  double mean = 0.0;
  double variance = 0.0;
  std::vector<double> autocov;  // autocov[k] = gamma^{|k|}, k = 0..max_lag

  double gamma(int lag) const;
};

/// Closed-form stationary moments where the process admits them (AR via the
/// Yule-Walker recursion, MA directly, ARMA(1,1)/(3,3) in closed form) and
/// the numeric Yule-Walker-with-MA linear system otherwise.
StationaryMoments ts_stationary_moments(const TimeSeriesSpec& spec, int max_lag = 64);

/// Numeric-only path (linear system), exposed so the closed forms can be
/// cross-checked against it.
StationaryMoments ts_stationary_moments_numeric(const TimeSeriesSpec& spec,
                                                int max_lag = 64);

/// Exact horizon-wide MVN representation of the process: every period demand
/// is an affine function of in-horizon innovations given the initial lagged
/// demands/shocks, so means follow the deterministic recursion and
/// covariances accumulate innovation weights. AR_ARCH uses its unconditional
/// innovation variance (Gaussian planning approximation).
MVNHorizon ts_horizon_mvn(const TimeSeriesSpec& spec, int T);

/// Moments of the demand convolution d_j + ... + d_t.
struct ConvolutionMoments {
  int start = 0;
  int end = 0;
  double mean = 0.0;
  double sd = 0.0;
};

ConvolutionMoments convolution_moments(const MVNHorizon& mvn, int j, int t);

/// Distribution of periods t..T given observed demands for periods
/// 1..t-1. used_pseudo_inverse flags a numerically singular prefix block
/// handled via eigenvalue-truncated pseudo-inversion.
struct ConditionalMVN {
  MVNHorizon dist;
  bool used_pseudo_inverse = false;
};

ConditionalMVN condition_on_prefix(const MVNHorizon& mvn,
                                   std::span<const double> observed);

/// Streams demand paths one replication at a time. MVN models sample through
/// a cached Cholesky factor (with bounded diagonal jitter when the matrix is
/// only semidefinite); time-series models simulate the true dynamics,
/// including state-dependent ARCH variance.
class PathSampler {
 public:
  explicit PathSampler(const MVNHorizon& mvn);
  PathSampler(const TimeSeriesSpec& spec, int T);

  int horizon() const { return horizon_; }

  /// Fills `out` (length horizon()) with one path drawn from the given
  /// substream. Same substream seed, same path, bit for bit.
  void sample(std::uint64_t substream, std::span<double> out) const;

 private:
  struct MvnData {
    Eigen::VectorXd mean;
    Eigen::MatrixXd chol;  // lower triangular
  };
  int horizon_;
  std::variant<MvnData, TimeSeriesSpec> model_;
};

/// n demand paths of length T as an n-by-T matrix; paths are substreams
/// 0..n-1 of `seed`, so a fixed seed reproduces paths exactly.
Eigen::MatrixXd sample_paths(const MVNHorizon& mvn, int n, std::uint64_t seed);
Eigen::MatrixXd sample_paths(const TimeSeriesSpec& spec, int T, int n,
                             std::uint64_t seed);

}  // namespace stochlot
