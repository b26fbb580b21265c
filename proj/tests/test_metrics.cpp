#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "morphoagg/metrics.hpp"
#include "support.hpp"

using namespace morphoagg;
using test_support::ids;

namespace {

LayeredRanking ranking(const InstanceFile &inst, std::size_t i) { return inst.rankings.at(i).ranking; }

}  // namespace

TEST_CASE("set proximities on the weighted pair") {
  auto inst = test_support::load("weighted_sets.json");
  const auto &a = inst.sets[0].elements, &b = inst.sets[1].elements;
  CHECK(set_proximity_elements(a, b) == doctest::Approx(1.0 - 3.0 / 7.0).epsilon(1e-12));
  CHECK(set_proximity_weighted(a, b, *inst.weights, 0) == doctest::Approx(1.0 - 1.8 / 3.5).epsilon(1e-12));
  CHECK(set_proximity_elements(a, a) == 0.0);
  CHECK_THROWS_AS(set_proximity_elements({}, {}), Error);
}

TEST_CASE("kendall tau and error vectors") {
  auto inst = test_support::load("layered_rankings.json");
  auto s1 = ranking(inst, 0), s2 = ranking(inst, 1);
  CHECK(kendall_tau(s1, s2) == 29);
  CHECK(kendall_tau(s2, s1) == 29);
  CHECK(kendall_tau(s1, s1) == 0);
  CHECK(kendall_tau_normalized(s1, s2) == doctest::Approx(29.0 / 72.0));

  auto ev = vector_proximity(s1, s2);
  CHECK(ev.m == 4);
  CHECK(ev.x_dense() == std::vector<double>{1, 1, 0, 5, 1, 0});
  CHECK(ev.y_dense() == std::vector<double>{0, 1, 4, 5, 2, 5, 6, 0, 1, 2, 0, 0});
  double pairs = 0;
  for (double v : ev.y_dense()) pairs += v;
  CHECK(pairs <= 36);
}

TEST_CASE("normalized error vectors") {
  auto inst = test_support::load("layered_rankings.json");
  auto ev = vector_proximity(ranking(inst, 0), ranking(inst, 1), VectorOptions{true});
  CHECK(ev.normalized);
  double sum = 0;
  for (double v : ev.x_dense()) sum += v;
  CHECK(sum == doctest::Approx(8.0 / 9.0));
}

TEST_CASE("error vector components") {
  std::map<int, double> v{{-2, 1}, {-1, 2}, {1, 3}, {3, 1}};
  CHECK(aggregate_component(v, 1, 3) == doctest::Approx(4));
  auto mod = modular_components(v);
  CHECK(mod[1] == doctest::Approx(5));
  CHECK(mod[2] == doctest::Approx(1));
  CHECK(truncated(v, 1, 1).size() == 2);
  CHECK(error_vector_dominates(v, v));
  std::map<int, double> shifted{{1, 1}, {2, 1}};
  std::map<int, double> base{{1, 2}};
  CHECK(error_vector_dominates(shifted, base));
  CHECK_FALSE(error_vector_dominates(base, shifted));
  std::map<int, double> up{{2, 1}, {-1, 1}}, down{{1, 1}, {-2, 1}};
  CHECK_FALSE(error_vector_dominates(up, down));
  CHECK_FALSE(error_vector_dominates(down, up));
}

TEST_CASE("tree proximity on the reference pairs") {
  auto e1 = test_support::load("tree_chains.json");
  auto p1 = tree_proximity(e1.trees[0].tree, e1.trees[1].tree);
  CHECK(p1.at("rho_A") == 0.0);
  CHECK(p1.at("rho_E") == doctest::Approx(1.0));

  auto e2 = test_support::load("tree_moved.json");
  auto p2 = tree_proximity(e2.trees[0].tree, e2.trees[1].tree);
  CHECK(p2.at("rho_A") == 0.0);
  CHECK(p2.at("rho_E") == doctest::Approx(6.0 / 28.0));

  auto e3 = test_support::load("tree_relabeled.json");
  auto p3 = tree_proximity(e3.trees[0].tree, e3.trees[1].tree);
  CHECK(p3.at("rho_A") == doctest::Approx(0.5));
  CHECK(p3.at("rho_E") == doctest::Approx(3.0 / 10.0));
}

TEST_CASE("dominance matrix cases") {
  auto t = RootedTree::from_edges("1", {{"1", "2"}, {"1", "3"}, {"2", "4"}});
  auto d = dominance_matrix(t, {"1", "2", "3", "4"});
  CHECK(d.at(0, 1) == Dominance::ancestor);
  CHECK(d.at(1, 2) == Dominance::independent);
  CHECK(d.at(0, 3) == Dominance::ancestor);
  auto r = dominance_matrix(t, {"4", "2"});
  CHECK(r.at(0, 1) == Dominance::descendant);
}

TEST_CASE("morphological structure proximity") {
  auto inst = test_support::load("structure_trees.json");
  auto p = morph_proximity(inst.structures[0].structure, inst.structures[1].structure);
  CHECK(p.at("rho_A") == doctest::Approx(2.0 / 9.0));
  CHECK(p.at("rho_E") == doctest::Approx(2.0 / 21.0));
  CHECK(p.at("rho_r") == doctest::Approx(7.0 / 24.0));
  CHECK(p.values().size() == 3);
  CHECK_THROWS_AS(p.at("rho_x"), Error);
}

TEST_CASE("part ranking follows declared priorities") {
  auto ms = test_support::structure({{"X", {{"X1", 2}, {"X2", 1}, {"X3", 3}}}});
  auto r = part_ranking(ms, "X");
  CHECK(r.priority("X2") == 1);
  CHECK(r.priority("X3") == 3);
  CHECK_THROWS_AS(part_ranking(ms, "Q"), Error);
}
