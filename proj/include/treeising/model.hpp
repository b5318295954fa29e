#ifndef TREEISING_MODEL_HPP
#define TREEISING_MODEL_HPP

#include <vector>

#include "treeising/tree.hpp"

namespace treeising {

/// Tree Ising model: P(x) proportional to exp(sum_edges w*x_u*x_v + b.x)
/// over x in {-1,+1}^n. weights[k] belongs to tree.edges()[k].
/// Weight magnitudes are not checked here; validate_model reports
/// zero weights and assumption violations.
class IsingModel {
 public:
  IsingModel(TreeGraph tree, std::vector<double> weights,
             std::vector<double> biases);

  const TreeGraph& tree() const { return tree_; }
  int n() const { return tree_.n(); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& biases() const { return biases_; }
  double weight(int edge_index) const { return weights_[edge_index]; }
  double bias(int v) const { return biases_[v]; }

 private:
  TreeGraph tree_;
  std::vector<double> weights_;
  std::vector<double> biases_;
};

/// Per-node flip probabilities, each in [0, 0.5).
class NoiseSpec {
 public:
  explicit NoiseSpec(std::vector<double> q);
  static NoiseSpec zeros(int n) { return NoiseSpec(std::vector<double>(n, 0.0)); }

  int n() const { return static_cast<int>(q_.size()); }
  const std::vector<double>& q() const { return q_; }
  double q(int v) const { return q_[v]; }
  double max_q() const;

 private:
  std::vector<double> q_;
};

/// Bounds the estimators rely on: |mean| <= mu_max < 1,
/// rho_min <= |edge correlation| <= rho_max in (0,1), noise <= q_max < 0.5.
struct AssumptionParams {
  double mu_max = 0.0;
  double rho_min = 0.0;
  double rho_max = 0.0;
  double q_max = 0.0;

  AssumptionParams(double mu_max_, double rho_min_, double rho_max_,
                   double q_max_);
};

}  // namespace treeising

#endif  // TREEISING_MODEL_HPP
