#include "treeising/equivalence.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "treeising/errors.hpp"

namespace treeising {

int EquivalenceClass::cluster_of(int node) const {
  for (std::size_t c = 0; c < clusters.size(); ++c)
    if (std::binary_search(clusters[c].begin(), clusters[c].end(), node))
      return static_cast<int>(c);
  return -1;
}

EquivalenceClass build_class(const TreeGraph& tree) {
  const int n = tree.n();
  if (n < 2) throw structure_error("equivalence class needs n >= 2");

  EquivalenceClass out;
  if (n == 2) {
    out.clusters = {{0, 1}};
    out.size = 2;
    return out;
  }

  std::vector<int> cluster_id(n, -1);
  for (int v = 0; v < n; ++v) {
    if (cluster_id[v] >= 0 || tree.is_leaf(v)) continue;
    bool leaf_adjacent = false;
    for (int w : tree.neighbors(v)) leaf_adjacent |= tree.is_leaf(w);
    if (!leaf_adjacent) continue;
    std::vector<int> cluster = {v};
    for (int w : tree.neighbors(v))
      if (tree.is_leaf(w)) cluster.push_back(w);
    std::sort(cluster.begin(), cluster.end());
    int id = static_cast<int>(out.clusters.size());
    for (int x : cluster) cluster_id[x] = id;
    out.clusters.push_back(std::move(cluster));
  }
  for (int v = 0; v < n; ++v) {
    if (cluster_id[v] >= 0) continue;
    cluster_id[v] = static_cast<int>(out.clusters.size());
    out.clusters.push_back({v});
  }

  // Reorder clusters by smallest member and remap ids.
  std::vector<int> order(out.clusters.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return out.clusters[x].front() < out.clusters[y].front();
  });
  std::vector<std::vector<int>> sorted_clusters;
  std::vector<int> new_id(out.clusters.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    new_id[order[k]] = static_cast<int>(k);
    sorted_clusters.push_back(out.clusters[order[k]]);
  }
  out.clusters = std::move(sorted_clusters);
  for (int v = 0; v < n; ++v) cluster_id[v] = new_id[cluster_id[v]];

  for (const auto& [u, v] : tree.edges()) {
    int cu = cluster_id[u], cv = cluster_id[v];
    if (cu == cv) continue;
    out.skeleton.emplace_back(std::min(cu, cv), std::max(cu, cv));
  }
  std::sort(out.skeleton.begin(), out.skeleton.end());

  out.size = 1;
  for (const auto& c : out.clusters)
    if (c.size() > 1) out.size *= c.size();
  return out;
}

std::string canonical_form(const TreeGraph& tree) {
  const EquivalenceClass ec = build_class(tree);
  std::ostringstream os;
  os << "C:";
  for (const auto& c : ec.clusters) {
    os << '{';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) os << ',';
      os << c[i];
    }
    os << '}';
  }
  os << ";S:";
  for (const auto& [a, b] : ec.skeleton)
    os << '(' << ec.clusters[a].front() << ',' << ec.clusters[b].front()
       << ')';
  return os.str();
}

bool is_member(const TreeGraph& candidate, const TreeGraph& class_of) {
  if (candidate.n() != class_of.n()) return false;
  return canonical_form(candidate) == canonical_form(class_of);
}

std::vector<TreeGraph> enumerate_members(const TreeGraph& base,
                                         std::uint64_t cap) {
  const EquivalenceClass ec = build_class(base);
  if (ec.size > cap)
    throw structure_error("class size " + std::to_string(ec.size) +
                          " exceeds cap " + std::to_string(cap));

  // Odometer over the internal-node choice of each non-singleton cluster.
  std::vector<int> choice(ec.clusters.size(), 0);
  std::vector<TreeGraph> out;
  out.reserve(ec.size);
  for (;;) {
    std::vector<int> internal(ec.clusters.size());
    for (std::size_t c = 0; c < ec.clusters.size(); ++c)
      internal[c] = ec.clusters[c][choice[c]];
    std::vector<std::pair<int, int>> edges;
    for (std::size_t c = 0; c < ec.clusters.size(); ++c)
      for (int v : ec.clusters[c])
        if (v != internal[c]) edges.emplace_back(v, internal[c]);
    for (const auto& [a, b] : ec.skeleton)
      edges.emplace_back(internal[a], internal[b]);
    out.emplace_back(base.n(), std::move(edges));

    // Advance the odometer.
    std::size_t c = 0;
    while (c < choice.size()) {
      if (++choice[c] < static_cast<int>(ec.clusters[c].size())) break;
      choice[c] = 0;
      ++c;
    }
    if (c == choice.size()) break;
  }
  return out;
}

int cluster_internal(const TreeGraph& tree, const std::vector<int>& cluster) {
  if (cluster.size() == 1) return cluster.front();
  if (static_cast<int>(cluster.size()) == tree.n()) {
    // Whole tree in one cluster: the hub is the unique non-leaf
    // (minimum node for the 2-node tree).
    for (int v : cluster)
      if (!tree.is_leaf(v)) return v;
    return cluster.front();
  }
  for (int v : cluster) {
    for (int w : tree.neighbors(v)) {
      if (!std::binary_search(cluster.begin(), cluster.end(), w)) return v;
    }
  }
  throw structure_error("cluster has no node with an outside edge");
}

std::vector<std::pair<int, int>> swaps_to_member(const TreeGraph& base,
                                                 const TreeGraph& member) {
  if (!is_member(member, base))
    throw structure_error("tree is not in the base tree's class");
  const EquivalenceClass ec = build_class(base);
  std::vector<std::pair<int, int>> swaps;
  for (const auto& cluster : ec.clusters) {
    if (cluster.size() < 2) continue;
    int ib = cluster_internal(base, cluster);
    int im = cluster_internal(member, cluster);
    if (ib != im) swaps.emplace_back(im, ib);  // im is a leaf of base under ib
  }
  return swaps;
}

}  // namespace treeising
