#ifndef TREEISING_CATEGORIZE_HPP
#define TREEISING_CATEGORIZE_HPP

#include <array>
#include <utility>
#include <vector>

#include "treeising/model.hpp"
#include "treeising/moments.hpp"
#include "treeising/noise_algebra.hpp"

namespace treeising {

enum class QuadKind { kStar, kNonStar };

/// Outcome of the four-node shape test. For a non-star, first_pair is the
/// pair containing the first queried node.
struct StarVerdict {
  QuadKind kind = QuadKind::kStar;
  std::pair<int, int> first_pair{-1, -1};
  std::pair<int, int> second_pair{-1, -1};

  bool is_star() const { return kind == QuadKind::kStar; }

  /// True iff the verdict is non-star and {x, y} is one of its pairs.
  bool pairs(int x, int y) const {
    if (kind != QuadKind::kNonStar) return false;
    auto match = [&](const std::pair<int, int>& p) {
      return (p.first == x && p.second == y) ||
             (p.first == y && p.second == x);
    };
    return match(first_pair) || match(second_pair);
  }

  bool operator==(const StarVerdict& other) const;
};

/// Per-node neighborhoods cut at |cov| >= 0.5*t1 (p1) and 0.5*t2 (p2).
/// t2 <= t1, so p1[i] is always a subset of p2[i]; i is never a member
/// of its own sets.
struct ProximalSets {
  double threshold1 = 0.0;  // 0.5 * t1
  double threshold2 = 0.0;  // 0.5 * t2
  std::vector<std::vector<int>> p1;  // ascending
  std::vector<std::vector<int>> p2;  // ascending
  std::vector<std::vector<char>> in_p1;
  std::vector<std::vector<char>> in_p2;

  int n() const { return static_cast<int>(p1.size()); }
};

/// Builds both proximal sets from |cov| thresholds 0.5*t1 and 0.5*t2.
ProximalSets build_proximal(const MomentEstimate& moments,
                            const AssumptionParams& params);

/// Classifies four distinct nodes as star or non-star from the three
/// correlation products A = r(a,b)r(c,d), B = r(a,c)r(b,d),
/// C = r(a,d)r(b,c). A pairing is accepted when its two cross products
/// agree within the t3 band and both are below t3 relative to the
/// within-pair product; a star requires all product ratios inside the
/// band. Throws degenerate_quad_error on a zero correlation and
/// ambiguous_quad_error when no category fits.
StarVerdict classify_quad(const MomentEstimate& moments, int a, int b, int c,
                          int d, double t3);

}  // namespace treeising

#endif  // TREEISING_CATEGORIZE_HPP
