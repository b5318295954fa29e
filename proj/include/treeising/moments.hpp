#ifndef TREEISING_MOMENTS_HPP
#define TREEISING_MOMENTS_HPP

#include <Eigen/Dense>

#include "treeising/sampling.hpp"

namespace treeising {

enum class MomentSource {
  kEmpiricalNoisy,
  kEmpiricalClean,
  kExactClean,
  kExactNoisy,
};

/// First and second moments of a sign vector. diag(cov) = 1 - mean^2
/// holds by construction (it is an identity for +-1 variables under 1/m
/// normalization). corr rows/cols of a zero-variance node are set to 0.
struct MomentEstimate {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  Eigen::MatrixXd corr;
  MomentSource source = MomentSource::kEmpiricalNoisy;

  int n() const { return static_cast<int>(mean.size()); }
};

/// Plain 1/m moments of a batch. Throws degenerate_column_error if any
/// column is constant. Integer accumulation keeps the result independent
/// of summation order.
MomentEstimate empirical_moments(const SampleBatch& batch,
                                 MomentSource source = MomentSource::kEmpiricalNoisy);

}  // namespace treeising

#endif  // TREEISING_MOMENTS_HPP
