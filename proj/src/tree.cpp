#include "treeising/tree.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "treeising/errors.hpp"

namespace treeising {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  // Returns false if x and y were already connected.
  bool unite(int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx == ry) return false;
    parent[rx] = ry;
    return true;
  }
};

}  // namespace

bool is_spanning_tree(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 1) return false;
  if (static_cast<int>(edges.size()) != n - 1) return false;
  UnionFind uf(n);
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n || u == v) return false;
    if (!uf.unite(u, v)) return false;  // duplicate edge or cycle
  }
  return true;  // n-1 successful unions on n nodes imply connectivity
}

TreeGraph::TreeGraph(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), edges_(std::move(edges)) {
  if (!is_spanning_tree(n_, edges_)) {
    throw structure_error("edge set is not a spanning tree on " +
                          std::to_string(n_) + " nodes");
  }
  adj_.assign(n_, {});
  for (const auto& [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool TreeGraph::has_edge(int u, int v) const {
  const auto& a = adj_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

std::vector<int> TreeGraph::leaves() const {
  std::vector<int> out;
  for (int v = 0; v < n_; ++v)
    if (is_leaf(v)) out.push_back(v);
  return out;
}

std::vector<int> TreeGraph::distances_from(int src) const {
  std::vector<int> dist(n_, -1);
  std::queue<int> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj_[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

std::vector<int> TreeGraph::path(int u, int v) const {
  // BFS parents from u, then walk back from v.
  std::vector<int> parent(n_, -2);
  std::queue<int> q;
  parent[u] = -1;
  q.push(u);
  while (!q.empty() && parent[v] == -2) {
    int x = q.front();
    q.pop();
    for (int w : adj_[x]) {
      if (parent[w] == -2) {
        parent[w] = x;
        q.push(w);
      }
    }
  }
  std::vector<int> out;
  for (int x = v; x != -1; x = parent[x]) out.push_back(x);
  std::reverse(out.begin(), out.end());
  return out;
}

TreeGraph TreeGraph::relabeled(const std::vector<int>& perm) const {
  std::vector<std::pair<int, int>> mapped;
  mapped.reserve(edges_.size());
  for (const auto& [u, v] : edges_) mapped.emplace_back(perm[u], perm[v]);
  return TreeGraph(n_, std::move(mapped));
}

std::vector<std::pair<int, int>> TreeGraph::sorted_edges() const {
  auto out = edges_;
  for (auto& [u, v] : out)
    if (u > v) std::swap(u, v);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace treeising
