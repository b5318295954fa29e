#ifndef TREEISING_NOISE_ALGEBRA_HPP
#define TREEISING_NOISE_ALGEBRA_HPP

#include <span>
#include <utility>
#include <vector>

#include "treeising/model.hpp"
#include "treeising/moments.hpp"

namespace treeising {

// Closed-form identities relating clean moments to moments after
// independent sign flips with per-node probability q.

/// E[x after flips] = (1 - 2q) * mean.
double noisy_mean(double mean, double q);

/// Cov after flips = (1 - 2q_i)(1 - 2q_j) * cov.
double noisy_cov(double cov, double q_i, double q_j);

/// Inverse of noisy_cov.
double clean_cov(double noisy, double q_i, double q_j);

/// Clean variance 1 - (1 - noisy_var) / (1 - 2q)^2. Throws
/// infeasible_noise_error unless the result lands in (0, 1].
double noisy_var_to_clean(double noisy_var, double q);

/// Correlation between path endpoints: the product of the edge
/// correlations along the path. Each input must satisfy 0 < |rho| < 1.
double path_correlation(std::span<const double> edge_corrs);

/// Root in [0, 0.5) of (1-2q)^2 = 1 - s11 + s12*s13/s23, the flip
/// probability of node 1 that would make nodes 2 and 3 independent
/// given node 1. The right side must land in (0, 1] up to a 1e-12
/// outward tolerance (sampling noise allowance); otherwise throws
/// invalid_configuration_error.
double solve_flip_quadratic(double s11, double s12, double s13, double s23);

/// Flip probability recovered for node i from the covariances of the
/// conditioning triple (i; j, k).
struct FlipEstimate {
  double q_hat = 0.0;
  int node = -1;
  int witness_j = -1;
  int witness_k = -1;
};

FlipEstimate estimate_flip(const MomentEstimate& moments, int i, int j, int k);

/// Screening thresholds derived from the assumption bounds:
///   t1 = (1-2q_max)^2 (1-mu_max^2) rho_min^4
///   t2 = min(t1, t1 (1-2q_max) sqrt(1-mu_max^2) / rho_max)
///   t3 = (1 + rho_max^2) / 2
/// t1/t2 cut the proximal sets (guaranteeing at least a radius of 4);
/// t3 is the star test band edge.
struct Thresholds {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
};

Thresholds derive_thresholds(const AssumptionParams& params);

/// Sample-size bound for recovering the equivalence class with
/// probability 1 - tau: m >= (128 / delta^2) ln(6 n^2 / tau) with
/// delta = t2^3 (1 - t3) / 128. m_required is the ceiled value kept as
/// a double because delta^-2 routinely exceeds the 64-bit integer range.
struct SampleBound {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
  double delta = 0.0;
  double m_required = 0.0;
};

SampleBound required_samples(const AssumptionParams& params, int n, double tau);

/// Flip probabilities under which each swapped tree (every (leaf, neighbor)
/// pair in `swaps` exchanging positions) reproduces the identical noisy
/// joint: the leaf gets
///   1/2 (1 - (1-2q_leaf) sqrt(cov_lp^2/cov_pp - cov_ll + 1))
/// from the model's clean covariances, its neighbor gets 0, and all other
/// entries stay. Clean covariances come from enumeration, so n <= 20.
/// Throws construction_failure on a non-leaf pair, repeated neighbors,
/// or an out-of-range result.
NoiseSpec swap_equivalent_noise(const IsingModel& model, const NoiseSpec& noise,
                                const std::vector<std::pair<int, int>>& swaps);

}  // namespace treeising

#endif  // TREEISING_NOISE_ALGEBRA_HPP
