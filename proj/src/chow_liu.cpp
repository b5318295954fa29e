#include "treeising/chow_liu.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <tuple>
#include <vector>

#include "treeising/errors.hpp"

namespace treeising {

double mutual_information(const SampleBatch& batch, int i, int j) {
  std::array<long long, 4> cells = {0, 0, 0, 0};
  const int n = batch.n();
  const std::int8_t* row = batch.values().data();
  for (int k = 0; k < batch.m(); ++k, row += n) {
    int a = row[i] > 0 ? 1 : 0;
    int b = row[j] > 0 ? 1 : 0;
    ++cells[a * 2 + b];
  }
  const double m = batch.m();
  const double pi1 = (cells[2] + cells[3]) / m;
  const double pj1 = (cells[1] + cells[3]) / m;
  const double pi[2] = {1.0 - pi1, pi1};
  const double pj[2] = {1.0 - pj1, pj1};
  double mi = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double pab = cells[a * 2 + b] / m;
      if (pab > 0.0) mi += pab * std::log(pab / (pi[a] * pj[b]));
    }
  }
  return std::max(mi, 0.0);
}

TreeGraph chow_liu(const SampleBatch& batch) {
  const int n = batch.n();
  if (n < 2) throw structure_error("spanning tree needs n >= 2");

  std::vector<std::tuple<double, int, int>> scored;
  scored.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      scored.emplace_back(mutual_information(batch, i, j), i, j);
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b))
      return std::get<0>(a) > std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b))
      return std::get<1>(a) < std::get<1>(b);
    return std::get<2>(a) < std::get<2>(b);
  });

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  std::vector<std::pair<int, int>> edges;
  for (const auto& [mi, i, j] : scored) {
    int ri = find(i), rj = find(j);
    if (ri == rj) continue;
    parent[ri] = rj;
    edges.emplace_back(i, j);
    if (static_cast<int>(edges.size()) == n - 1) break;
  }
  return TreeGraph(n, std::move(edges));
}

}  // namespace treeising
