#include "treeising/learner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "treeising/errors.hpp"
#include "treeising/tree.hpp"

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
  void unite(int x, int y) { parent[find(x)] = find(y); }
};

}  // namespace

std::vector<int> find_ec(int i, const std::vector<int>& subset,
                         LearnContext& ctx) {
  if (subset.empty()) return {i};
  if (subset.size() == 1) {
    ctx.acc.edges.emplace_back(i, subset[0]);
    ctx.acc.cluster_log.push_back({subset[0], i});
    return {subset[0], i};
  }
  if (subset.size() == 2) {
    ctx.acc.edges.emplace_back(i, subset[0]);
    ctx.acc.edges.emplace_back(subset[1], subset[0]);
    ctx.acc.cluster_log.push_back({subset[0], i, subset[1]});
    return {subset[0], i, subset[1]};
  }

  const int n = ctx.moments.n();
  std::vector<char> in_subset(n, 0);
  for (int v : subset) in_subset[v] = 1;

  std::vector<int> candidates;
  for (int j : ctx.prox.p1[i])
    if (in_subset[j]) candidates.push_back(j);

  std::vector<int> mates;
  for (int j : candidates) {
    // Fixed companion: the lowest-index other candidate.
    int k1 = -1;
    for (int c : candidates) {
      if (c != j) {
        k1 = c;
        break;
      }
    }
    bool is_mate = true;
    if (k1 >= 0) {
      for (int k2 : subset) {
        if (!ctx.prox.in_p2[i][k2] || !ctx.prox.in_p2[j][k2] ||
            !ctx.prox.in_p2[k1][k2])
          continue;
        StarVerdict v = classify_quad(ctx.moments, i, j, k1, k2, ctx.t3);
        if (!(v.is_star() || v.pairs(i, j))) {
          is_mate = false;
          break;
        }
      }
    }
    if (is_mate) mates.push_back(j);
  }

  if (mates.empty()) return {i};
  const int hub = mates[0];
  ctx.acc.edges.emplace_back(i, hub);
  for (std::size_t k = 1; k < mates.size(); ++k)
    ctx.acc.edges.emplace_back(mates[k], hub);

  std::vector<int> result = {hub, i};
  for (std::size_t k = 1; k < mates.size(); ++k) result.push_back(mates[k]);
  ctx.acc.cluster_log.push_back(result);
  return result;
}

std::vector<std::vector<int>> split_tree(int i, int leaf,
                                         const std::vector<char>& x_last,
                                         LearnContext& ctx) {
  const int n = ctx.moments.n();
  std::vector<int> close;
  for (int p : ctx.prox.p1[i])
    if (ctx.prox.in_p1[leaf][p] && !x_last[p]) close.push_back(p);

  std::vector<char> eligible(n, 0);
  for (int p : close) eligible[p] = 1;
  std::vector<std::vector<int>> row(n);

  for (int p : close) {
    for (int q : ctx.prox.p2[p]) {
      if (q == leaf || q == i) continue;
      if (!ctx.prox.in_p1[i][q] || !ctx.prox.in_p1[leaf][q]) continue;
      StarVerdict v = classify_quad(ctx.moments, i, leaf, p, q, ctx.t3);
      if (!v.pairs(i, leaf)) continue;
      if (x_last[q]) {
        // p pairs into already-learned territory: not part of any
        // unexplored subtree.
        eligible[p] = 0;
        row[p].clear();
        break;
      }
      row[p].push_back(q);
    }
  }

  // Merge rows that pair with each other or share a partner.
  UnionFind uf(n);
  std::vector<int> column_owner(n, -1);
  for (int p : close) {
    if (!eligible[p]) continue;
    for (int q : row[p]) {
      if (eligible[q]) uf.unite(p, q);
      if (column_owner[q] < 0)
        column_owner[q] = p;
      else
        uf.unite(p, column_owner[q]);
    }
  }

  std::vector<std::vector<int>> groups(n);
  for (int p : close)
    if (eligible[p]) groups[uf.find(p)].push_back(p);
  std::vector<std::vector<int>> out;
  for (int r = 0; r < n; ++r)
    if (!groups[r].empty()) {
      std::sort(groups[r].begin(), groups[r].end());
      out.push_back(std::move(groups[r]));
    }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

void recurse(int i, int leaf, const std::vector<char>& x_last,
             LearnContext& ctx) {
  const auto subtrees = split_tree(i, leaf, x_last, ctx);
  for (std::size_t s = 0; s < subtrees.size(); ++s) {
    const auto ec = find_ec(i, subtrees[s], ctx);
    if (ec.size() == 1) {
      throw learner_failure("no equivalence cluster found in subtree of " +
                            std::to_string(subtrees[s].size()) +
                            " nodes near node " + std::to_string(i));
    }
    std::vector<char> next_last = x_last;
    for (std::size_t t = 0; t < subtrees.size(); ++t)
      if (t != s)
        for (int v : subtrees[t]) next_last[v] = 1;
    for (int v : ec) next_last[v] = 1;
    recurse(ec[0], i, next_last, ctx);
  }
}

LearnedEdges find_tree(const MomentEstimate& moments,
                       const AssumptionParams& params) {
  const int n = moments.n();
  if (n < 2) throw structure_error("structure recovery needs n >= 2");
  if (!moments.cov.allFinite() || !moments.corr.allFinite())
    throw structure_error("moments contain non-finite entries");

  const Thresholds t = derive_thresholds(params);
  const ProximalSets prox = build_proximal(moments, params);
  LearnContext ctx{moments, prox, t.t3, {}};

  try {
    std::vector<int> ec;
    int start = -1;
    for (int i = 0; i < n; ++i) {
      std::vector<int> rest;
      rest.reserve(n - 1);
      for (int v = 0; v < n; ++v)
        if (v != i) rest.push_back(v);
      ec = find_ec(i, rest, ctx);
      if (ec.size() > 1) {
        start = i;
        break;
      }
    }
    if (start < 0)
      throw learner_failure("no node produced a nontrivial cluster");

    std::vector<char> x_last(n, 0);
    for (int v : ec) x_last[v] = 1;
    if (std::count(x_last.begin(), x_last.end(), char(1)) < n)
      recurse(start, ec[0], x_last, ctx);
  } catch (const ambiguous_quad_error& e) {
    throw learner_failure(std::string("ambiguous four-node test: ") +
                          e.what());
  } catch (const degenerate_quad_error& e) {
    throw learner_failure(std::string("degenerate four-node test: ") +
                          e.what());
  }

  if (static_cast<int>(ctx.acc.edges.size()) != n - 1 ||
      !is_spanning_tree(n, ctx.acc.edges)) {
    throw learner_failure("recovered " + std::to_string(ctx.acc.edges.size()) +
                          " edges, not a spanning tree on " +
                          std::to_string(n) + " nodes");
  }
  return std::move(ctx.acc);
}

std::vector<std::pair<int, int>> sorted_edge_list(const LearnedEdges& learned) {
  auto out = learned.edges;
  for (auto& [u, v] : out)
    if (u > v) std::swap(u, v);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace treeising
