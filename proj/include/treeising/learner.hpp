#ifndef TREEISING_LEARNER_HPP
#define TREEISING_LEARNER_HPP

#include <utility>
#include <vector>

#include "treeising/categorize.hpp"
#include "treeising/model.hpp"
#include "treeising/moments.hpp"

namespace treeising {

/// Edge accumulator plus the clusters in discovery order.
struct LearnedEdges {
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> cluster_log;
};

/// Shared read-only state for one recovery run plus the accumulator.
struct LearnContext {
  const MomentEstimate& moments;
  const ProximalSets& prox;
  double t3 = 0.0;
  LearnedEdges acc;
};

/// Members of node i's equivalence cluster inside subset ∪ {i}.
/// subset must be sorted ascending and exclude i. Appends the cluster's
/// edges to the accumulator, every member attached to the first-found
/// member (the hub). Returns the hub first, then i, then the rest; just
/// {i} when no cluster mate is found. For |subset| <= 2 no statistics are
/// consulted: the nodes are taken as one cluster around subset[0].
std::vector<int> find_ec(int i, const std::vector<int>& subset,
                         LearnContext& ctx);

/// Partitions the nodes near the learned pair (i, leaf) — their common
/// radius-1 proximal sets minus x_last — into the subtrees hanging off
/// i's cluster. Two nodes share a subtree when the four-node test pairs
/// them against (i, leaf); a node pairing with an x_last member is
/// dropped entirely. Subtrees are sorted ascending and ordered by their
/// smallest member.
std::vector<std::vector<int>> split_tree(int i, int leaf,
                                         const std::vector<char>& x_last,
                                         LearnContext& ctx);

/// Learns all edges beyond x_last reachable from the pair (i, leaf):
/// splits the nearby nodes into subtrees, finds each subtree's cluster
/// facing i, and recurses into it.
void recurse(int i, int leaf, const std::vector<char>& x_last,
             LearnContext& ctx);

/// Full structure recovery from noisy moments. Returns n-1 edges of one
/// member of the underlying tree's equivalence class. Throws
/// learner_failure when the statistics are inconsistent (ambiguous or
/// degenerate four-node tests, unresolvable nodes, non-tree result).
LearnedEdges find_tree(const MomentEstimate& moments,
                       const AssumptionParams& params);

/// Edges normalized to u < v and sorted lexicographically; the on-disk
/// and stdout ordering.
std::vector<std::pair<int, int>> sorted_edge_list(const LearnedEdges& learned);

}  // namespace treeising

#endif  // TREEISING_LEARNER_HPP
