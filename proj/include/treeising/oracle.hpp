#ifndef TREEISING_ORACLE_HPP
#define TREEISING_ORACLE_HPP

#include <vector>

#include "treeising/categorize.hpp"
#include "treeising/model.hpp"
#include "treeising/moments.hpp"

namespace treeising {

// Exhaustive-enumeration ground truth for small n. State s encodes the
// sign vector with node i at bit i; bit 0 means x_i = -1, bit 1 means +1.
// Everything here is capped at n <= 20 (2^20 doubles per distribution).

/// Probability vector over all 2^n sign states.
struct JointDistribution {
  int n = 0;
  std::vector<double> p;

  static int sign_of(std::uint32_t state, int node) {
    return (state >> node) & 1u ? 1 : -1;
  }
};

inline constexpr int kMaxOracleNodes = 20;

/// Normalized exp(sum_edges w x_u x_v + b.x) over all states.
JointDistribution exact_joint(const IsingModel& model);

/// Pushforward through the per-node flip channel, applied as n sequential
/// binary-channel convolutions (O(n 2^n)).
JointDistribution noisy_joint(const JointDistribution& dist,
                              const NoiseSpec& noise);

/// Exact mean/cov/corr by summation over states. Zero-variance nodes get
/// corr 0 off the diagonal rather than an error; downstream consumers
/// treat those as degenerate.
MomentEstimate exact_moments(const JointDistribution& dist,
                             MomentSource source = MomentSource::kExactClean);

/// Star/non-star ground truth from topology alone: a quad is a non-star
/// with pairing {p,q}/{r,s} iff removing some edge puts {p,q} and {r,s}
/// in different components.
StarVerdict verdict_from_topology(const TreeGraph& tree, int a, int b, int c,
                                  int d);

/// Half the L1 distance between two distributions on the same state space.
double tv_distance(const JointDistribution& d1, const JointDistribution& d2);

/// Joint distribution of the tree-factorized sign model with the given
/// node means and per-edge second moments E[x_u x_v] (indexed like
/// tree.edges()). Throws structure_error if some edge table is not a
/// valid distribution.
JointDistribution tree_joint_from_moments(const TreeGraph& tree,
                                          const std::vector<double>& means,
                                          const std::vector<double>& edge_moments);

/// Exact clean moments of a model (enumeration; n <= 20).
MomentEstimate model_moments(const IsingModel& model);

/// Exact moments after corrupting the model with the given noise.
MomentEstimate noisy_model_moments(const IsingModel& model,
                                   const NoiseSpec& noise);

}  // namespace treeising

#endif  // TREEISING_ORACLE_HPP
