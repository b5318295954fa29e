#ifndef TREEISING_TREE_HPP
#define TREEISING_TREE_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace treeising {

/// Undirected tree on nodes 0..n-1, validated at construction.
class TreeGraph {
 public:
  // Throws structure_error unless the edges form a spanning tree
  // (checked with union-find). n = 1 with no edges is accepted for
  // degenerate single-node uses.
  TreeGraph(int n, std::vector<std::pair<int, int>> edges);

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool is_leaf(int v) const { return degree(v) == 1; }
  bool has_edge(int u, int v) const;

  /// Leaves in ascending order.
  std::vector<int> leaves() const;

  /// Hop distances from src to every node.
  std::vector<int> distances_from(int src) const;

  /// Node sequence from u to v inclusive.
  std::vector<int> path(int u, int v) const;

  /// Tree with node v renamed perm[v]; perm must be a permutation of 0..n-1.
  TreeGraph relabeled(const std::vector<int>& perm) const;

  /// Edges normalized (u < v) and sorted lexicographically.
  std::vector<std::pair<int, int>> sorted_edges() const;

  bool operator==(const TreeGraph& other) const {
    return n_ == other.n_ && sorted_edges() == other.sorted_edges();
  }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

/// True iff the given edges form a spanning tree on 0..n-1.
bool is_spanning_tree(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace treeising

#endif  // TREEISING_TREE_HPP
