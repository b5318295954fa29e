#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "support/generators.hpp"
#include "support/refit.hpp"
#include "treeising/equivalence.hpp"
#include "treeising/errors.hpp"
#include "treeising/noise_algebra.hpp"
#include "treeising/oracle.hpp"

using namespace treeising;
namespace ts = treeising::testsupport;

TEST_CASE("build_class on the canonical small shapes") {
  SUBCASE("4-star: one cluster, size 4") {
    TreeGraph t(4, {{0, 1}, {0, 2}, {0, 3}});
    EquivalenceClass ec = build_class(t);
    REQUIRE(ec.clusters.size() == 1);
    CHECK(ec.clusters[0] == std::vector<int>{0, 1, 2, 3});
    CHECK(ec.size == 4);
    CHECK(ec.skeleton.empty());
  }
  SUBCASE("4-path: two clusters of two") {
    TreeGraph t(4, {{0, 1}, {1, 2}, {2, 3}});
    EquivalenceClass ec = build_class(t);
    REQUIRE(ec.clusters.size() == 2);
    CHECK(ec.clusters[0] == std::vector<int>{0, 1});
    CHECK(ec.clusters[1] == std::vector<int>{2, 3});
    CHECK(ec.size == 4);
    REQUIRE(ec.skeleton.size() == 1);
  }
  SUBCASE("3-path: one cluster of three") {
    TreeGraph t(3, {{0, 1}, {1, 2}});
    EquivalenceClass ec = build_class(t);
    REQUIRE(ec.clusters.size() == 1);
    CHECK(ec.clusters[0] == std::vector<int>{0, 1, 2});
    CHECK(ec.size == 3);
  }
  SUBCASE("2-node tree: single cluster of two by convention") {
    TreeGraph t(2, {{0, 1}});
    EquivalenceClass ec = build_class(t);
    REQUIRE(ec.clusters.size() == 1);
    CHECK(ec.size == 2);
  }
  SUBCASE("6-chain: end clusters plus interior singletons") {
    TreeGraph t(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
    EquivalenceClass ec = build_class(t);
    REQUIRE(ec.clusters.size() == 4);
    CHECK(ec.clusters[0] == std::vector<int>{0, 1});
    CHECK(ec.clusters[1] == std::vector<int>{2});
    CHECK(ec.clusters[2] == std::vector<int>{3});
    CHECK(ec.clusters[3] == std::vector<int>{4, 5});
    CHECK(ec.size == 4);
    CHECK(ec.skeleton.size() == 3);
  }
}

TEST_CASE("membership: the defining moves and non-moves") {
  TreeGraph chain(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(is_member(chain, chain));

  // Leaf swap 0 <-> 1 stays in class.
  TreeGraph swapped(4, {{1, 0}, {0, 2}, {2, 3}});
  CHECK(is_member(swapped, chain));
  CHECK(canonical_form(swapped) == canonical_form(chain));

  // Swapping the two internal nodes leaves the class.
  TreeGraph internal_swap(4, {{0, 2}, {2, 1}, {1, 3}});
  CHECK_FALSE(is_member(internal_swap, chain));

  // A different shape entirely.
  TreeGraph star(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK_FALSE(is_member(star, chain));
  CHECK(canonical_form(star) != canonical_form(chain));

  TreeGraph path5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  TreeGraph star5(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  CHECK(canonical_form(path5) != canonical_form(star5));
}

TEST_CASE("enumerate_members: counts and examples") {
  SUBCASE("4-star has 4 members") {
    TreeGraph t(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(enumerate_members(t).size() == 4);
  }
  SUBCASE("4-path has 4 members") {
    TreeGraph t(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(enumerate_members(t).size() == 4);
  }
  SUBCASE("6-chain has 4 distinct members") {
    TreeGraph t(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
    auto members = enumerate_members(t);
    REQUIRE(members.size() == 4);
    std::set<std::vector<std::pair<int, int>>> unique;
    for (const auto& m : members) unique.insert(m.sorted_edges());
    CHECK(unique.size() == 4);
  }
  SUBCASE("cap is enforced") {
    TreeGraph t(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    CHECK_THROWS_AS(enumerate_members(t, 5), structure_error);
  }
}

TEST_CASE("every member round-trips through the class machinery") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + int(rng() % 9);  // up to 10
    TreeGraph t = ts::random_tree(n, rng);
    EquivalenceClass ec = build_class(t);
    auto members = enumerate_members(t);
    if (n == 2) {
      CHECK(members.size() == 1);  // both choices give the single edge
    } else {
      CHECK(members.size() == ec.size);
    }
    std::set<std::vector<std::pair<int, int>>> unique;
    for (const auto& m : members) {
      CHECK(is_member(m, t));
      CHECK(canonical_form(m) == canonical_form(t));
      unique.insert(m.sorted_edges());
    }
    CHECK(unique.size() == members.size());
  }
}

TEST_CASE("swaps_to_member recreates each member by leaf exchanges") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 3 + int(rng() % 7);
    TreeGraph t = ts::random_tree(n, rng);
    for (const auto& member : enumerate_members(t)) {
      auto swaps = swaps_to_member(t, member);
      std::vector<int> perm(n);
      for (int v = 0; v < n; ++v) perm[v] = v;
      for (const auto& [leaf, parent] : swaps) {
        CHECK(t.is_leaf(leaf));
        CHECK(t.has_edge(leaf, parent));
        std::swap(perm[leaf], perm[parent]);
      }
      CHECK(t.relabeled(perm).sorted_edges() == member.sorted_edges());
    }
  }
}

TEST_CASE("identifiability cross-check on field-free-leaf models") {
  // Every enumerated member admits a compensating noise vector whose
  // rebuilt noisy joint matches the original. Exact only when the
  // swapped leaves carry no local field, so leaves are drawn field-free.
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 4 + int(rng() % 4);  // 4..7
    TreeGraph t = ts::random_tree(n, rng);
    IsingModel drawn = ts::random_model(t, rng);
    std::vector<double> biases = drawn.biases();
    for (int leaf : t.leaves()) biases[leaf] = 0.0;
    IsingModel m(t, drawn.weights(), biases);
    NoiseSpec q = ts::random_noise(n, rng);
    JointDistribution truth = noisy_joint(exact_joint(m), q);

    for (const auto& member : enumerate_members(t)) {
      auto swaps = swaps_to_member(t, member);
      NoiseSpec q_hat = swap_equivalent_noise(m, q, swaps);
      JointDistribution rebuilt = ts::refit_noisy_joint(m, q, member, q_hat);
      CHECK(tv_distance(truth, rebuilt) < 1e-9);
    }
  }
}
