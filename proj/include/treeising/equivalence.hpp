#ifndef TREEISING_EQUIVALENCE_HPP
#define TREEISING_EQUIVALENCE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "treeising/tree.hpp"

namespace treeising {

/// A tree's identifiable description under unknown per-node sign noise:
/// the leaf clusters (each internal node together with its leaves; one
/// cluster per leaf-adjacent internal node, singletons elsewhere) and the
/// tree connecting them. Every member tree picks one node per cluster as
/// that cluster's internal node, so the class has
/// prod |cluster| (over clusters of size > 1) members.
struct EquivalenceClass {
  std::vector<std::vector<int>> clusters;       // sorted sets, ordered by min
  std::vector<std::pair<int, int>> skeleton;    // edges between cluster indices
  std::uint64_t size = 1;

  int cluster_of(int node) const;
};

/// Cluster/skeleton construction; n >= 2. The two nodes of a 2-node tree
/// form a single cluster of size 2.
EquivalenceClass build_class(const TreeGraph& tree);

/// Text key equal for two trees iff they generate the same class.
std::string canonical_form(const TreeGraph& tree);

/// True iff candidate can be produced from class_of's class by choosing
/// internal nodes per cluster.
bool is_member(const TreeGraph& candidate, const TreeGraph& class_of);

/// All member trees, pairwise distinct; count equals the class size.
/// Throws structure_error when the class size exceeds cap.
std::vector<TreeGraph> enumerate_members(const TreeGraph& base,
                                         std::uint64_t cap = 10000);

/// The node of the cluster acting as its internal node in the given tree:
/// the unique member with an edge leaving the cluster, or the hub when the
/// cluster spans the whole tree.
int cluster_internal(const TreeGraph& tree, const std::vector<int>& cluster);

/// (leaf, neighbor) pairs, in base's labeling, whose exchange turns base
/// into member. Throws structure_error if member is not in base's class.
std::vector<std::pair<int, int>> swaps_to_member(const TreeGraph& base,
                                                 const TreeGraph& member);

}  // namespace treeising

#endif  // TREEISING_EQUIVALENCE_HPP
