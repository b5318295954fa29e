#include "treeising/sampling.hpp"

#include <array>
#include <cmath>
#include <random>
#include <string>

#include "treeising/errors.hpp"

namespace treeising {

SampleBatch::SampleBatch(int m, int n, std::vector<std::int8_t> values)
    : m_(m), n_(n), values_(std::move(values)) {
  if (m_ < 1 || n_ < 1 ||
      values_.size() != static_cast<std::size_t>(m_) * n_) {
    throw structure_error("sample batch dimensions do not match payload");
  }
  for (std::int8_t v : values_) {
    if (v != 1 && v != -1)
      throw structure_error("sample entries must be -1 or +1");
  }
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 on master + index; decorrelates derived streams.
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

// Rooted view of the model with everything sample_clean needs precomputed:
// visit order, parent pointers, P(root=+1) and P(child=+1 | parent=s).
struct RootedSampler {
  std::vector<int> order;        // parents before children, order[0] = root
  std::vector<int> parent;       // -1 for the root
  double p_root_plus = 0.5;
  std::vector<double> p_plus_given_parent_plus;   // indexed by node
  std::vector<double> p_plus_given_parent_minus;  // indexed by node

  explicit RootedSampler(const IsingModel& model) {
    const TreeGraph& tree = model.tree();
    const int n = tree.n();
    parent.assign(n, -1);
    std::vector<double> edge_weight_to_parent(n, 0.0);

    // Edge weight lookup by endpoints.
    auto weight_of = [&](int u, int v) {
      const auto& edges = tree.edges();
      for (std::size_t k = 0; k < edges.size(); ++k) {
        if ((edges[k].first == u && edges[k].second == v) ||
            (edges[k].first == v && edges[k].second == u))
          return model.weight(static_cast<int>(k));
      }
      throw structure_error("edge lookup failed");
    };

    order.reserve(n);
    std::vector<int> stack = {0};
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (int w : tree.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = v;
          edge_weight_to_parent[w] = weight_of(v, w);
          stack.push_back(w);
        }
      }
    }

    // Upward pass: message[v][s] = sum over x_v of
    //   exp(w*x_v*s + b_v*x_v) * prod(child messages at x_v),
    // with s the parent sign (index 0 -> s=-1, 1 -> s=+1).
    // Messages are normalized for numerical safety; only ratios matter.
    std::vector<std::array<double, 2>> msg(n, {1.0, 1.0});
    std::vector<std::array<double, 2>> belief(n);  // unnormalized over x_v
    for (int idx = n - 1; idx >= 0; --idx) {
      int v = order[idx];
      double bm = std::exp(-model.bias(v));
      double bp = std::exp(model.bias(v));
      for (int w : tree.neighbors(v)) {
        if (w != parent[v] && parent[w] == v) {
          bm *= msg[w][0];
          bp *= msg[w][1];
        }
      }
      belief[v] = {bm, bp};
      if (parent[v] >= 0) {
        double w = edge_weight_to_parent[v];
        double ep = std::exp(w), em = std::exp(-w);
        // parent s=-1: x_v=-1 contributes e^{+w}, x_v=+1 contributes e^{-w}
        double m0 = bm * ep + bp * em;
        double m1 = bm * em + bp * ep;
        double norm = m0 + m1;
        msg[v] = {m0 / norm, m1 / norm};
      }
    }

    p_root_plus = belief[0][1] / (belief[0][0] + belief[0][1]);
    p_plus_given_parent_plus.assign(n, 0.0);
    p_plus_given_parent_minus.assign(n, 0.0);
    for (int v = 0; v < n; ++v) {
      if (parent[v] < 0) continue;
      double w = edge_weight_to_parent[v];
      double ep = std::exp(w), em = std::exp(-w);
      double plus_p = belief[v][1] * ep, minus_p = belief[v][0] * em;
      double plus_m = belief[v][1] * em, minus_m = belief[v][0] * ep;
      p_plus_given_parent_plus[v] = plus_p / (plus_p + minus_p);
      p_plus_given_parent_minus[v] = plus_m / (plus_m + minus_m);
    }
  }
};

}  // namespace

SampleBatch sample_clean(const IsingModel& model, int m, std::uint64_t seed) {
  if (m < 1) throw structure_error("need m >= 1 samples");
  RootedSampler rs(model);
  const int n = model.n();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::int8_t> values(static_cast<std::size_t>(m) * n);
  std::vector<std::int8_t> x(n);
  for (int k = 0; k < m; ++k) {
    for (int v : rs.order) {
      double p;
      if (rs.parent[v] < 0) {
        p = rs.p_root_plus;
      } else {
        p = x[rs.parent[v]] > 0 ? rs.p_plus_given_parent_plus[v]
                                : rs.p_plus_given_parent_minus[v];
      }
      x[v] = unif(rng) < p ? 1 : -1;
    }
    for (int v = 0; v < n; ++v)
      values[static_cast<std::size_t>(k) * n + v] = x[v];
  }
  return SampleBatch(m, n, std::move(values));
}

SampleBatch apply_noise(const SampleBatch& batch, const NoiseSpec& noise,
                        std::uint64_t seed) {
  if (noise.n() != batch.n()) {
    throw structure_error("noise length " + std::to_string(noise.n()) +
                          " does not match batch width " +
                          std::to_string(batch.n()));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto values = batch.values();
  const int n = batch.n();
  for (int k = 0; k < batch.m(); ++k) {
    for (int v = 0; v < n; ++v) {
      if (unif(rng) < noise.q(v))
        values[static_cast<std::size_t>(k) * n + v] *= -1;
    }
  }
  return SampleBatch(batch.m(), n, std::move(values));
}

}  // namespace treeising
