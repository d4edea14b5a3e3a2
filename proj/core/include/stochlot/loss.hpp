#pragma once

#include <span>
#include <vector>

namespace stochlot {

/// First-order loss L(x) = E[max(Z-x,0)] and complement Lhat(x) = E[max(x-Z,0)]
/// for a standard normal Z.
struct LossPair {
  double loss = 0.0;  // L
  double comp = 0.0;  // Lhat
};

LossPair std_loss(double x);

/// Piecewise linearization of the complementary loss: a partition of the
/// standard normal support into W probability cells, their conditional means,
/// and the maximum Jensen gap e_W that turns the lower envelope into an
/// Edmundson-Madansky upper bound.
struct PiecewiseLoss {
  std::vector<double> masses;       // p_1..p_W
  std::vector<double> cond_means;   // E[Z | cell i], strictly increasing
  std::vector<double> breakpoints;  // interior cell boundaries z_1..z_{W-1}
  double em_error = 0.0;            // e_W
  // prefix sums used by the affine-piece evaluation
  std::vector<double> cum_mass;
  std::vector<double> cum_mass_mean;

  int segments() const { return static_cast<int>(masses.size()); }
  void validate() const;
};

/// Equal-probability partition with W cells.
PiecewiseLoss build_partition(int W);

/// Partition from user-supplied probability masses (e.g. published
/// linearization tables). Masses must be positive and sum to 1.
PiecewiseLoss build_partition(std::span<const double> masses);

/// Edmundson-Madansky upper bound on Lhat: max over the W+1 affine pieces
///   x * sum_{k<=i} p_k - sum_{k<=i} p_k E_k + e_W,  i = 0..W.
double comp_loss_pw(double x, const PiecewiseLoss& pw);

/// Jensen lower bound sum_i p_i max(x - E_i, 0); diagnostic only.
double comp_loss_jensen(double x, const PiecewiseLoss& pw);

enum class LossMode { exact, piecewise };

/// Loss pair for a general normal N(mean, sd^2) via standardization
/// Lhat(x) = sd * Lhat((x-mean)/sd). sd == 0 degenerates to the deterministic
/// positive parts. Piecewise mode routes Lhat through comp_loss_pw and
/// recovers L = Lhat - (x - mean).
LossPair general_loss(double x, double mean, double sd, const PiecewiseLoss& pw,
                      LossMode mode);

}  // namespace stochlot
