#ifndef TREEISING_VALIDATE_HPP
#define TREEISING_VALIDATE_HPP

#include <string>
#include <vector>

#include "treeising/model.hpp"

namespace treeising {

enum class ViolationKind {
  kZeroWeight,         // an edge weight is exactly zero
  kMeanBound,          // |exact mean| exceeds mu_max
  kCorrelationBound,   // exact |edge correlation| outside [rho_min, rho_max]
  kSkippedExactCheck,  // n too large for enumeration; bounds taken on faith
};

struct Violation {
  ViolationKind kind;
  int index = -1;  // node or edge index, -1 when not applicable
  double value = 0.0;
  std::string detail;
};

/// Checks the model against the assumption bounds using exact moments
/// (enumeration) when n <= 20; for larger n the exact checks are skipped
/// and a kSkippedExactCheck record says so. Empty result means the model
/// satisfies every checked bound.
std::vector<Violation> validate_model(const IsingModel& model,
                                      const AssumptionParams& params);

}  // namespace treeising

#endif  // TREEISING_VALIDATE_HPP
