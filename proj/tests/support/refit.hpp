#ifndef TREEISING_TESTS_REFIT_HPP
#define TREEISING_TESTS_REFIT_HPP

// Builds the distribution that a candidate tree would need to produce the
// base model's noisy joint: un-noise the noisy pairwise moments by the
// candidate flip probabilities, factorize over the candidate tree, then
// push the result back through the channel.

#include <vector>

#include "treeising/model.hpp"
#include "treeising/noise_algebra.hpp"
#include "treeising/oracle.hpp"

namespace treeising::testsupport {

inline JointDistribution refit_noisy_joint(const IsingModel& base,
                                           const NoiseSpec& noise,
                                           const TreeGraph& candidate,
                                           const NoiseSpec& q_hat) {
  const int n = base.n();
  const MomentEstimate clean = model_moments(base);

  std::vector<double> mean_hat(n);
  for (int v = 0; v < n; ++v) {
    const double noisy = noisy_mean(clean.mean(v), noise.q(v));
    mean_hat[v] = noisy / (1.0 - 2.0 * q_hat.q(v));
  }
  std::vector<double> edge_moment_hat;
  for (const auto& [u, v] : candidate.edges()) {
    const double noisy = noisy_cov(clean.cov(u, v), noise.q(u), noise.q(v));
    const double cov_hat = clean_cov(noisy, q_hat.q(u), q_hat.q(v));
    edge_moment_hat.push_back(cov_hat + mean_hat[u] * mean_hat[v]);
  }
  JointDistribution fitted =
      tree_joint_from_moments(candidate, mean_hat, edge_moment_hat);
  return noisy_joint(fitted, q_hat);
}

}  // namespace treeising::testsupport

#endif  // TREEISING_TESTS_REFIT_HPP
