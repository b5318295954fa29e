#include "treeising/noise_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "treeising/errors.hpp"
#include "treeising/oracle.hpp"

namespace treeising {

double noisy_mean(double mean, double q) { return (1.0 - 2.0 * q) * mean; }

double noisy_cov(double cov, double q_i, double q_j) {
  return (1.0 - 2.0 * q_i) * (1.0 - 2.0 * q_j) * cov;
}

double clean_cov(double noisy, double q_i, double q_j) {
  return noisy / ((1.0 - 2.0 * q_i) * (1.0 - 2.0 * q_j));
}

double noisy_var_to_clean(double noisy_var, double q) {
  const double f = 1.0 - 2.0 * q;
  const double clean = 1.0 - (1.0 - noisy_var) / (f * f);
  if (!(clean > 0.0 && clean <= 1.0 + 1e-12)) {
    throw infeasible_noise_error("clean variance " + std::to_string(clean) +
                                 " outside (0, 1]; q inconsistent with data");
  }
  return std::min(clean, 1.0);
}

double path_correlation(std::span<const double> edge_corrs) {
  double prod = 1.0;
  for (double r : edge_corrs) {
    if (!(std::abs(r) > 0.0 && std::abs(r) < 1.0))
      throw std::invalid_argument("edge correlations must lie in (0, 1) in "
                                  "absolute value");
    prod *= r;
  }
  return prod;
}

double solve_flip_quadratic(double s11, double s12, double s13, double s23) {
  if (s23 == 0.0)
    throw invalid_configuration_error("conditioning covariance s23 is zero");
  double r = 1.0 - s11 + s12 * s13 / s23;
  constexpr double kTol = 1e-12;
  if (!(r > 0.0 && r <= 1.0 + kTol)) {
    throw invalid_configuration_error(
        "quadratic right side " + std::to_string(r) +
        " outside (0, 1]; inputs inconsistent with a tree triple");
  }
  r = std::min(r, 1.0);
  return (1.0 - std::sqrt(r)) / 2.0;
}

FlipEstimate estimate_flip(const MomentEstimate& moments, int i, int j, int k) {
  FlipEstimate out;
  out.node = i;
  out.witness_j = j;
  out.witness_k = k;
  out.q_hat = solve_flip_quadratic(moments.cov(i, i), moments.cov(i, j),
                                   moments.cov(i, k), moments.cov(j, k));
  return out;
}

Thresholds derive_thresholds(const AssumptionParams& params) {
  Thresholds t;
  const double f = 1.0 - 2.0 * params.q_max;
  const double v = 1.0 - params.mu_max * params.mu_max;
  t.t1 = f * f * v * std::pow(params.rho_min, 4);
  t.t2 = std::min(t.t1, t.t1 * f * std::sqrt(v) / params.rho_max);
  t.t3 = (1.0 + params.rho_max * params.rho_max) / 2.0;
  return t;
}

SampleBound required_samples(const AssumptionParams& params, int n,
                             double tau) {
  if (n < 4) throw structure_error("bound needs n >= 4");
  if (!(tau > 0.0 && tau < 1.0))
    throw structure_error("tau must lie in (0, 1)");
  const Thresholds t = derive_thresholds(params);
  SampleBound b;
  b.t1 = t.t1;
  b.t2 = t.t2;
  b.t3 = t.t3;
  b.delta = t.t2 * t.t2 * t.t2 * (1.0 - t.t3) / 128.0;
  b.m_required = std::ceil(128.0 / (b.delta * b.delta) *
                           std::log(6.0 * double(n) * double(n) / tau));
  return b;
}

NoiseSpec swap_equivalent_noise(
    const IsingModel& model, const NoiseSpec& noise,
    const std::vector<std::pair<int, int>>& swaps) {
  if (noise.n() != model.n())
    throw structure_error("noise length does not match model");
  std::vector<double> q = noise.q();
  if (swaps.empty()) return NoiseSpec(q);

  const TreeGraph& tree = model.tree();
  std::set<int> parents_seen, leaves_seen;
  for (const auto& [leaf, parent] : swaps) {
    if (!tree.is_leaf(leaf) || !tree.has_edge(leaf, parent)) {
      throw construction_failure("swap (" + std::to_string(leaf) + ", " +
                                 std::to_string(parent) +
                                 ") is not a leaf and its neighbor");
    }
    if (!parents_seen.insert(parent).second ||
        !leaves_seen.insert(leaf).second) {
      throw construction_failure("swapped leaves must have distinct neighbors");
    }
  }

  const MomentEstimate clean = model_moments(model);
  for (const auto& [leaf, parent] : swaps) {
    const double radicand = clean.cov(leaf, parent) * clean.cov(leaf, parent) /
                                clean.cov(parent, parent) -
                            clean.cov(leaf, leaf) + 1.0;
    if (!(radicand > 0.0 && radicand <= 1.0 + 1e-12)) {
      throw construction_failure("swap radicand " + std::to_string(radicand) +
                                 " outside (0, 1]");
    }
    const double q_hat =
        0.5 * (1.0 - (1.0 - 2.0 * q[leaf]) * std::sqrt(std::min(radicand, 1.0)));
    if (!(q_hat >= 0.0 && q_hat < 0.5)) {
      throw construction_failure("compensated flip probability " +
                                 std::to_string(q_hat) + " outside [0, 0.5)");
    }
    q[leaf] = q_hat;
    q[parent] = 0.0;
  }
  return NoiseSpec(q);
}

}  // namespace treeising
