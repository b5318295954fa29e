#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "support/generators.hpp"
#include "support/reference.hpp"
#include "treeising/errors.hpp"
#include "treeising/noise_algebra.hpp"
#include "treeising/oracle.hpp"

using namespace treeising;
namespace ts = treeising::testsupport;

namespace {

IsingModel chain_model(int n, double w, double b = 0.0) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return IsingModel(TreeGraph(n, std::move(edges)),
                    std::vector<double>(n - 1, w), std::vector<double>(n, b));
}

}  // namespace

TEST_CASE("exact_joint matches hand arithmetic") {
  SUBCASE("single free node is uniform") {
    IsingModel m(TreeGraph(1, {}), {}, {0.0});
    JointDistribution d = exact_joint(m);
    REQUIRE(d.p.size() == 2);
    CHECK(d.p[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.p[1] == doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("independent pair is uniform") {
    IsingModel m(TreeGraph(2, {{0, 1}}), {0.0}, {0.0, 0.0});
    JointDistribution d = exact_joint(m);
    for (double p : d.p) CHECK(p == doctest::Approx(0.25).epsilon(1e-15));
  }
  SUBCASE("agreement ratio is exp(2w)") {
    IsingModel m(TreeGraph(2, {{0, 1}}), {0.7}, {0.0, 0.0});
    JointDistribution d = exact_joint(m);
    // states: 0 = (-,-), 3 = (+,+) agree; 1,2 disagree
    CHECK(d.p[0] / d.p[1] == doctest::Approx(std::exp(1.4)).epsilon(1e-12));
    CHECK(d.p[3] / d.p[2] == doctest::Approx(std::exp(1.4)).epsilon(1e-12));
  }
}

TEST_CASE("noisy_joint is the exact channel pushforward") {
  SUBCASE("zero noise is the identity") {
    IsingModel m = chain_model(3, 0.7);
    JointDistribution d = exact_joint(m);
    JointDistribution nd = noisy_joint(d, NoiseSpec::zeros(3));
    for (std::size_t s = 0; s < d.p.size(); ++s) CHECK(nd.p[s] == d.p[s]);
  }
  SUBCASE("single-node point mass") {
    JointDistribution d;
    d.n = 1;
    d.p = {1.0, 0.0};
    JointDistribution nd = noisy_joint(d, NoiseSpec({0.3}));
    CHECK(nd.p[0] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(nd.p[1] == doctest::Approx(0.3).epsilon(1e-15));
  }
  SUBCASE("sequential convolutions equal the quadratic-cost pushforward") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
      int n = 2 + int(rng() % 7);  // up to 8
      TreeGraph t = ts::random_tree(n, rng);
      IsingModel m = ts::random_model(t, rng);
      NoiseSpec q = ts::random_noise(n, rng);
      JointDistribution fast = noisy_joint(exact_joint(m), q);
      JointDistribution slow = ts::naive_noisy_joint(exact_joint(m), q);
      for (std::size_t s = 0; s < fast.p.size(); ++s)
        CHECK(fast.p[s] == doctest::Approx(slow.p[s]).epsilon(1e-12));
    }
  }
}

TEST_CASE("exact_moments sums the enumerated states") {
  SUBCASE("uniform pair: zero mean, identity covariance") {
    IsingModel m(TreeGraph(2, {{0, 1}}), {0.0}, {0.0, 0.0});
    MomentEstimate mom = exact_moments(exact_joint(m));
    CHECK(mom.mean.cwiseAbs().maxCoeff() < 1e-15);
    CHECK(mom.cov(0, 0) == 1.0);
    CHECK(mom.cov(1, 1) == 1.0);
    CHECK(std::abs(mom.cov(0, 1)) < 1e-15);
  }
  SUBCASE("point mass: mean one, zero covariance, degenerate corr 0") {
    JointDistribution d;
    d.n = 2;
    d.p = {0.0, 0.0, 0.0, 1.0};
    MomentEstimate mom = exact_moments(d);
    CHECK(mom.mean(0) == 1.0);
    CHECK(mom.cov(0, 0) == 0.0);
    CHECK(mom.corr(0, 1) == 0.0);
  }
  SUBCASE("endpoint correlation of a chain factors over edges") {
    MomentEstimate mom = exact_moments(exact_joint(chain_model(3, 0.7)));
    CHECK(mom.corr(0, 2) ==
          doctest::Approx(mom.corr(0, 1) * mom.corr(1, 2)).epsilon(1e-12));
  }
}

TEST_CASE("diag(cov) = 1 - mean^2 exactly on exact moments") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + int(rng() % 6);
    IsingModel m = ts::random_model(ts::random_tree(n, rng), rng);
    NoiseSpec q = ts::random_noise(n, rng);
    MomentEstimate mom = noisy_model_moments(m, q);
    for (int v = 0; v < n; ++v)
      CHECK(mom.cov(v, v) == 1.0 - mom.mean(v) * mom.mean(v));
  }
}

TEST_CASE("topological verdicts: examples and path cross-check") {
  SUBCASE("path quad splits at the middle edge") {
    TreeGraph t(4, {{0, 1}, {1, 2}, {2, 3}});
    StarVerdict v = verdict_from_topology(t, 0, 1, 2, 3);
    CHECK(v.kind == QuadKind::kNonStar);
    CHECK(v.pairs(0, 1));
    CHECK(v.pairs(2, 3));
    CHECK(v.first_pair.first == 0);
  }
  SUBCASE("star center plus leaves is a star") {
    TreeGraph t(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(verdict_from_topology(t, 0, 1, 2, 3).is_star());
  }
  SUBCASE("spider legs") {
    // Legs 1-2, 3-4 and single leg 5 off center 0.
    TreeGraph t(6, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}});
    StarVerdict v = verdict_from_topology(t, 2, 1, 4, 3);
    CHECK(v == ts::verdict_by_paths(t, 2, 1, 4, 3));
    CHECK(v.pairs(2, 1));
    CHECK(verdict_from_topology(t, 1, 3, 5, 0).is_star());
  }
  SUBCASE("random trees agree with the path-disjointness implementation") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
      int n = 4 + int(rng() % 7);
      TreeGraph t = ts::random_tree(n, rng);
      for (int rep = 0; rep < 12; ++rep) {
        int q[4];
        for (int k = 0; k < 4;) {
          int candidate = int(rng() % n);
          bool dup = false;
          for (int j = 0; j < k; ++j) dup |= q[j] == candidate;
          if (!dup) q[k++] = candidate;
        }
        CHECK(verdict_from_topology(t, q[0], q[1], q[2], q[3]) ==
              ts::verdict_by_paths(t, q[0], q[1], q[2], q[3]));
      }
    }
  }
}

TEST_CASE("tv_distance basics") {
  JointDistribution a, b;
  a.n = b.n = 2;
  a.p = {1.0, 0.0, 0.0, 0.0};
  b.p = {0.0, 0.0, 0.0, 1.0};
  CHECK(tv_distance(a, a) == 0.0);
  CHECK(tv_distance(a, b) == 1.0);
}

TEST_CASE("tree_joint_from_moments reconstructs a tree model exactly") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + int(rng() % 6);
    TreeGraph t = ts::random_tree(n, rng);
    IsingModel m = ts::random_model(t, rng);
    JointDistribution d = exact_joint(m);
    MomentEstimate mom = exact_moments(d);
    std::vector<double> means(n);
    for (int v = 0; v < n; ++v) means[v] = mom.mean(v);
    std::vector<double> edge_moments;
    for (const auto& [u, v] : t.edges())
      edge_moments.push_back(mom.cov(u, v) + mom.mean(u) * mom.mean(v));
    JointDistribution back = tree_joint_from_moments(t, means, edge_moments);
    CHECK(tv_distance(d, back) < 1e-12);
  }
}

TEST_CASE("classify_quad: frozen arithmetic examples") {
  // Chain 0-1-2-3 with every edge correlation 0.5, encoded directly.
  MomentEstimate mom;
  mom.mean = Eigen::VectorXd::Zero(4);
  mom.corr.resize(4, 4);
  double rho[4][4] = {{1, 0.5, 0.25, 0.125},
                      {0.5, 1, 0.5, 0.25},
                      {0.25, 0.5, 1, 0.5},
                      {0.125, 0.25, 0.5, 1}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) mom.corr(i, j) = rho[i][j];
  mom.cov = mom.corr;

  const double t3 = (1.0 + 0.25) / 2.0;  // rho_max = 0.5
  SUBCASE("path order gives a non-star with the end pairs") {
    StarVerdict v = classify_quad(mom, 0, 1, 2, 3, t3);
    CHECK(v.kind == QuadKind::kNonStar);
    CHECK(v.pairs(0, 1));
    CHECK(v.pairs(2, 3));
  }
  SUBCASE("permutations relabel the same verdict") {
    StarVerdict v = classify_quad(mom, 2, 0, 3, 1, t3);
    CHECK(v.kind == QuadKind::kNonStar);
    CHECK(v.pairs(0, 1));
    CHECK(v.pairs(2, 3));
    CHECK(v.first_pair.first == 2);  // pair containing the first queried node
    CHECK(v.first_pair.second == 3);
  }
  SUBCASE("uniform star correlations give a star") {
    MomentEstimate star;
    star.mean = Eigen::VectorXd::Zero(4);
    star.corr.resize(4, 4);
    // center 0 with leaves at rho 0.5: leaf-leaf = 0.25
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) star.corr(i, j) = i == j ? 1.0 : 0.25;
    star.corr(0, 1) = star.corr(1, 0) = 0.5;
    star.corr(0, 2) = star.corr(2, 0) = 0.5;
    star.corr(0, 3) = star.corr(3, 0) = 0.5;
    star.cov = star.corr;
    CHECK(classify_quad(star, 0, 1, 2, 3, t3).is_star());
    CHECK(classify_quad(star, 3, 1, 0, 2, t3).is_star());
  }
  SUBCASE("zero correlation raises the degenerate error") {
    MomentEstimate bad = mom;
    bad.corr(0, 3) = bad.corr(3, 0) = 0.0;
    CHECK_THROWS_AS(classify_quad(bad, 0, 1, 2, 3, t3), degenerate_quad_error);
  }
  SUBCASE("contradictory ratios raise the ambiguous error") {
    MomentEstimate bad = mom;
    // Make all three products disagree pairwise beyond the band.
    bad.corr(0, 1) = bad.corr(1, 0) = 0.9;
    bad.corr(2, 3) = bad.corr(3, 2) = 0.9;
    bad.corr(0, 2) = bad.corr(2, 0) = 0.5;
    bad.corr(1, 3) = bad.corr(3, 1) = 0.5;
    bad.corr(0, 3) = bad.corr(3, 0) = 0.1;
    bad.corr(1, 2) = bad.corr(2, 1) = 0.1;
    CHECK_THROWS_AS(classify_quad(bad, 0, 1, 2, 3, t3), ambiguous_quad_error);
  }
}

TEST_CASE("classify_quad on exact noisy moments equals topology") {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    int n = 4 + int(rng() % 5);  // 4..8
    TreeGraph t = ts::random_tree(n, rng);
    IsingModel m = ts::random_model(t, rng);
    NoiseSpec q = ts::random_noise(n, rng);
    MomentEstimate mom = noisy_model_moments(m, q);
    MomentEstimate clean = model_moments(m);
    double rho_max = 0.0;
    for (const auto& [u, v] : t.edges())
      rho_max = std::max(rho_max, std::abs(clean.corr(u, v)));
    const double t3 = (1.0 + rho_max * rho_max) / 2.0;

    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          for (int d = c + 1; d < n; ++d) {
            StarVerdict got = classify_quad(mom, a, b, c, d, t3);
            StarVerdict want = verdict_from_topology(t, a, b, c, d);
            CHECK(got == want);
            ++checked;

            // Cross products of a non-star stay at or below rho_max^2.
            if (want.kind == QuadKind::kNonStar && want.pairs(a, b)) {
              double cross = mom.corr(a, c) * mom.corr(b, d) /
                             (mom.corr(a, b) * mom.corr(c, d));
              CHECK(cross <= rho_max * rho_max + 1e-9);
            }
          }
  }
  CHECK(checked > 1000);
}

TEST_CASE("classify_quad is invariant to per-node sign flips") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    TreeGraph t = ts::random_tree(6, rng);
    ts::ModelDrawCfg cfg;
    cfg.negate_some_weights = true;
    IsingModel m = ts::random_model(t, rng, cfg);
    NoiseSpec q = ts::random_noise(6, rng);
    MomentEstimate mom = noisy_model_moments(m, q);
    MomentEstimate clean = model_moments(m);
    double rho_max = 0.0;
    for (const auto& [u, v] : t.edges())
      rho_max = std::max(rho_max, std::abs(clean.corr(u, v)));
    const double t3 = (1.0 + rho_max * rho_max) / 2.0;

    MomentEstimate flipped = mom;
    std::vector<int> sign(6);
    for (int v = 0; v < 6; ++v) sign[v] = rng() % 2 ? 1 : -1;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        flipped.corr(i, j) = sign[i] * sign[j] * mom.corr(i, j);

    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b)
        for (int c = b + 1; c < 6; ++c)
          for (int d = c + 1; d < 6; ++d)
            CHECK(classify_quad(mom, a, b, c, d, t3) ==
                  classify_quad(flipped, a, b, c, d, t3));
  }
}

TEST_CASE("build_proximal thresholds and radius guarantee") {
  SUBCASE("perfect correlation is always inside; zero never") {
    MomentEstimate mom;
    mom.mean = Eigen::VectorXd::Zero(3);
    mom.cov = Eigen::MatrixXd::Identity(3, 3);
    mom.cov(0, 1) = mom.cov(1, 0) = 1.0;
    mom.corr = mom.cov;
    AssumptionParams params(0.1, 0.2, 0.9, 0.2);
    ProximalSets prox = build_proximal(mom, params);
    CHECK(prox.in_p1[0][1]);
    CHECK(prox.in_p2[0][1]);
    CHECK(prox.in_p1[1][0]);
    CHECK_FALSE(prox.in_p1[0][2]);
    CHECK_FALSE(prox.in_p2[0][2]);
    CHECK_FALSE(prox.in_p1[0][0]);
  }
  SUBCASE("chain: both sets contain at least the radius-4 ball") {
    IsingModel m = chain_model(6, 0.7);
    MomentEstimate mom = model_moments(m);
    AssumptionParams params(1e-12, 0.2, 0.9, 0.15);
    ProximalSets prox = build_proximal(mom, params);
    for (int i = 0; i < 6; ++i) {
      auto dist = m.tree().distances_from(i);
      for (int j = 0; j < 6; ++j) {
        if (i == j) continue;
        if (dist[j] <= 4) {
          CHECK(prox.in_p1[i][j]);
          CHECK(prox.in_p2[i][j]);
        }
      }
      // p1 is always inside p2
      for (int j : prox.p1[i]) CHECK(prox.in_p2[i][j]);
    }
  }
  SUBCASE("membership is symmetric") {
    std::mt19937_64 rng(31);
    IsingModel m = ts::random_model(ts::random_tree(7, rng), rng);
    MomentEstimate mom = noisy_model_moments(m, ts::random_noise(7, rng));
    AssumptionParams params(0.3, 0.3, 0.9, 0.2);
    ProximalSets prox = build_proximal(mom, params);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        CHECK(prox.in_p1[i][j] == prox.in_p1[j][i]);
        CHECK(prox.in_p2[i][j] == prox.in_p2[j][i]);
      }
  }
}
