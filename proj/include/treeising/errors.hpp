#ifndef TREEISING_ERRORS_HPP
#define TREEISING_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace treeising {

// Base class for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed graph input: cycle, disconnection, bad edge, size mismatch.
class structure_error : public error {
 public:
  using error::error;
};

// A sample column is constant, so its variance and correlations are undefined.
class degenerate_column_error : public error {
 public:
  explicit degenerate_column_error(int node, const std::string& what)
      : error(what), node_(node) {}
  int node() const { return node_; }

 private:
  int node_;
};

// Noise level inconsistent with the observed variance.
class infeasible_noise_error : public error {
 public:
  using error::error;
};

// The flip-probability quadratic has no root in [0, 0.5).
class invalid_configuration_error : public error {
 public:
  using error::error;
};

// A correlation needed by a four-node test is zero.
class degenerate_quad_error : public error {
 public:
  using error::error;
};

// The empirical ratios of a four-node test satisfy no category.
class ambiguous_quad_error : public error {
 public:
  using error::error;
};

// Swap-compensation produced a flip probability outside [0, 0.5),
// or a swap pair is not a (leaf, neighbor) pair.
class construction_failure : public error {
 public:
  using error::error;
};

// Structure recovery could not complete; the trial should count as a miss.
class learner_failure : public error {
 public:
  using error::error;
};

// File parse errors for the text formats.
class parse_error : public error {
 public:
  using error::error;
};

}  // namespace treeising

#endif  // TREEISING_ERRORS_HPP
