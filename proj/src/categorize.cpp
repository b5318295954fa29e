#include "treeising/categorize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "treeising/errors.hpp"

namespace treeising {

bool StarVerdict::operator==(const StarVerdict& other) const {
  if (kind != other.kind) return false;
  if (kind == QuadKind::kStar) return true;
  auto norm = [](std::pair<int, int> p) {
    if (p.first > p.second) std::swap(p.first, p.second);
    return p;
  };
  auto a1 = norm(first_pair), a2 = norm(second_pair);
  auto b1 = norm(other.first_pair), b2 = norm(other.second_pair);
  if (a2 < a1) std::swap(a1, a2);
  if (b2 < b1) std::swap(b1, b2);
  return a1 == b1 && a2 == b2;
}

ProximalSets build_proximal(const MomentEstimate& moments,
                            const AssumptionParams& params) {
  const Thresholds t = derive_thresholds(params);
  const int n = moments.n();
  ProximalSets out;
  out.threshold1 = 0.5 * t.t1;
  out.threshold2 = 0.5 * t.t2;
  out.p1.assign(n, {});
  out.p2.assign(n, {});
  out.in_p1.assign(n, std::vector<char>(n, 0));
  out.in_p2.assign(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double c = std::abs(moments.cov(i, j));
      if (c >= out.threshold1) {
        out.p1[i].push_back(j);
        out.in_p1[i][j] = 1;
      }
      if (c >= out.threshold2) {
        out.p2[i].push_back(j);
        out.in_p2[i][j] = 1;
      }
    }
  }
  return out;
}

namespace {

// Ratio lies strictly inside (t3, 1/t3); implies x and y share a sign.
bool in_band(double x, double y, double t3) {
  return x / y > t3 && y / x > t3;
}

// x has the sign of y and x/y is strictly below t3.
bool dominated(double x, double y, double t3) {
  double r = x / y;
  return r > 0.0 && r < t3;
}

}  // namespace

StarVerdict classify_quad(const MomentEstimate& moments, int a, int b, int c,
                          int d, double t3) {
  const int nodes[4] = {a, b, c, d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (nodes[i] == nodes[j])
        throw structure_error("quad nodes must be distinct");

  auto r = [&](int x, int y) {
    double v = moments.corr(x, y);
    if (v == 0.0)
      throw degenerate_quad_error("zero correlation between nodes " +
                                  std::to_string(x) + " and " +
                                  std::to_string(y));
    return v;
  };

  // Within-pair products of the three pairings of {a,b,c,d}.
  const double A = r(a, b) * r(c, d);
  const double B = r(a, c) * r(b, d);
  const double C = r(a, d) * r(b, c);
  if (A == 0.0 || B == 0.0 || C == 0.0)
    throw degenerate_quad_error("correlation product underflowed to zero");

  StarVerdict v;
  if (in_band(A, B, t3) && in_band(A, C, t3) && in_band(B, C, t3)) {
    v.kind = QuadKind::kStar;
    return v;
  }
  if (in_band(B, C, t3) && dominated(B, A, t3) && dominated(C, A, t3)) {
    v.kind = QuadKind::kNonStar;
    v.first_pair = {a, b};
    v.second_pair = {c, d};
    return v;
  }
  if (in_band(A, C, t3) && dominated(A, B, t3) && dominated(C, B, t3)) {
    v.kind = QuadKind::kNonStar;
    v.first_pair = {a, c};
    v.second_pair = {b, d};
    return v;
  }
  if (in_band(A, B, t3) && dominated(A, C, t3) && dominated(B, C, t3)) {
    v.kind = QuadKind::kNonStar;
    v.first_pair = {a, d};
    v.second_pair = {b, c};
    return v;
  }
  throw ambiguous_quad_error("correlation ratios of quad {" +
                             std::to_string(a) + "," + std::to_string(b) +
                             "," + std::to_string(c) + "," +
                             std::to_string(d) + "} fit no category");
}

}  // namespace treeising
