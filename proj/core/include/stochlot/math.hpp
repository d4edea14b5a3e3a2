#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace stochlot {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779;

/// Standard normal density.
double norm_pdf(double x);

/// Standard normal CDF, accurate in both tails (erfc based).
double norm_cdf(double x);

/// Standard normal survival function 1 - Phi(x).
double norm_sf(double x);

/// Standard normal quantile. Rational approximation polished with one
/// Halley step against the erfc-based CDF; relative error ~1e-15.
/// Requires 0 < p < 1.
double norm_quantile(double p);

/// Numerically stable sum (recursive pairwise). Result depends only on the
/// order of elements in the span, never on evaluation scheduling.
double pairwise_sum(std::span<const double> xs);

/// SplitMix64 step; used to derive independent substream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Derives the seed of substream `index` from a master seed. Substreams for
/// distinct indices are decorrelated, so replications/instances can be run
/// concurrently and still reproduce bit-identical results.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index);

/// Standard normal draw by inversion. Inversion keeps the draw count per
/// variate fixed (one engine step), which the deterministic substream
/// contracts rely on.
inline double standard_normal(std::mt19937_64& eng) {
  // 53-bit uniform in the open interval (0,1).
  const double u = (static_cast<double>(eng() >> 11) + 0.5) * 0x1p-53;
  return norm_quantile(u);
}

}  // namespace stochlot
