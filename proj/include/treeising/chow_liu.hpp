#ifndef TREEISING_CHOW_LIU_HPP
#define TREEISING_CHOW_LIU_HPP

#include "treeising/sampling.hpp"
#include "treeising/tree.hpp"

namespace treeising {

/// Plug-in mutual information (nats) of the empirical joint of columns
/// i and j over {-1,+1}^2; zero-count cells contribute zero.
double mutual_information(const SampleBatch& batch, int i, int j);

/// Maximum-weight spanning tree of pairwise mutual information.
/// Ties break toward the lexicographically smaller edge.
TreeGraph chow_liu(const SampleBatch& batch);

}  // namespace treeising

#endif  // TREEISING_CHOW_LIU_HPP
