#include "treeising/validate.hpp"

#include <cmath>
#include <string>

#include "treeising/oracle.hpp"

namespace treeising {

std::vector<Violation> validate_model(const IsingModel& model,
                                      const AssumptionParams& params) {
  std::vector<Violation> out;
  const auto& edges = model.tree().edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (model.weight(static_cast<int>(k)) == 0.0) {
      out.push_back({ViolationKind::kZeroWeight, static_cast<int>(k), 0.0,
                     "edge " + std::to_string(edges[k].first) + "-" +
                         std::to_string(edges[k].second) +
                         " has zero weight, forcing correlation below "
                         "rho_min"});
    }
  }

  if (model.n() > kMaxOracleNodes) {
    out.push_back({ViolationKind::kSkippedExactCheck, -1,
                   double(model.n()),
                   "n > " + std::to_string(kMaxOracleNodes) +
                       ": exact mean/correlation checks skipped"});
    return out;
  }

  const MomentEstimate exact = model_moments(model);
  for (int v = 0; v < model.n(); ++v) {
    const double mu = exact.mean(v);
    if (std::abs(mu) > params.mu_max) {
      out.push_back({ViolationKind::kMeanBound, v, mu,
                     "node " + std::to_string(v) + " exact mean " +
                         std::to_string(mu) + " exceeds mu_max"});
    }
  }
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const double rho = exact.corr(edges[k].first, edges[k].second);
    if (std::abs(rho) < params.rho_min || std::abs(rho) > params.rho_max) {
      out.push_back({ViolationKind::kCorrelationBound, static_cast<int>(k),
                     rho,
                     "edge " + std::to_string(edges[k].first) + "-" +
                         std::to_string(edges[k].second) +
                         " exact correlation " + std::to_string(rho) +
                         " outside [rho_min, rho_max]"});
    }
  }
  return out;
}

}  // namespace treeising
