#ifndef TREEISING_SAMPLING_HPP
#define TREEISING_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include "treeising/model.hpp"

namespace treeising {

/// m draws of an n-node sign vector, entries in {-1,+1}, row-major.
class SampleBatch {
 public:
  SampleBatch(int m, int n, std::vector<std::int8_t> values);

  int m() const { return m_; }
  int n() const { return n_; }
  std::int8_t at(int sample, int node) const {
    return values_[static_cast<std::size_t>(sample) * n_ + node];
  }
  const std::vector<std::int8_t>& values() const { return values_; }

 private:
  int m_ = 0;
  int n_ = 0;
  std::vector<std::int8_t> values_;
};

/// Exact i.i.d. draws by ancestral sampling: root the tree at node 0,
/// run an upward sum-product pass, sample the root from its marginal and
/// each child from its conditional given the sampled parent.
/// Deterministic given the seed.
SampleBatch sample_clean(const IsingModel& model, int m, std::uint64_t seed);

/// Independently negates each entry of column i with probability q_i.
/// Returns a new batch; deterministic given the seed.
SampleBatch apply_noise(const SampleBatch& batch, const NoiseSpec& noise,
                        std::uint64_t seed);

/// Seed for a derived stream (per trial, per shard); splitmix64 step.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace treeising

#endif  // TREEISING_SAMPLING_HPP
