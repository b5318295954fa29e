#include "treeising/model.hpp"

#include <algorithm>
#include <string>

#include "treeising/errors.hpp"

namespace treeising {

IsingModel::IsingModel(TreeGraph tree, std::vector<double> weights,
                       std::vector<double> biases)
    : tree_(std::move(tree)),
      weights_(std::move(weights)),
      biases_(std::move(biases)) {
  if (weights_.size() != tree_.edges().size()) {
    throw structure_error("need one weight per edge: got " +
                          std::to_string(weights_.size()) + " for " +
                          std::to_string(tree_.edges().size()) + " edges");
  }
  if (static_cast<int>(biases_.size()) != tree_.n()) {
    throw structure_error("need one bias per node");
  }
}

NoiseSpec::NoiseSpec(std::vector<double> q) : q_(std::move(q)) {
  for (std::size_t i = 0; i < q_.size(); ++i) {
    if (!(q_[i] >= 0.0 && q_[i] < 0.5)) {
      throw structure_error("flip probability q[" + std::to_string(i) +
                            "] outside [0, 0.5)");
    }
  }
}

double NoiseSpec::max_q() const {
  double m = 0.0;
  for (double v : q_) m = std::max(m, v);
  return m;
}

AssumptionParams::AssumptionParams(double mu_max_, double rho_min_,
                                   double rho_max_, double q_max_)
    : mu_max(mu_max_), rho_min(rho_min_), rho_max(rho_max_), q_max(q_max_) {
  if (!(mu_max >= 0.0 && mu_max < 1.0))
    throw structure_error("mu_max must lie in [0, 1)");
  if (!(rho_min > 0.0 && rho_min <= rho_max && rho_max < 1.0))
    throw structure_error("need 0 < rho_min <= rho_max < 1");
  if (!(q_max >= 0.0 && q_max < 0.5))
    throw structure_error("q_max must lie in [0, 0.5)");
}

}  // namespace treeising
