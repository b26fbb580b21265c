#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "morphoagg/core.hpp"
#include "support.hpp"

using namespace morphoagg;
using test_support::ids;

namespace {

bool has_code(const std::vector<Diagnostic> &d, const std::string &code) {
  for (const auto &x : d)
    if (x.code == code) return true;
  return false;
}

}  // namespace

TEST_CASE("layered ranking from layers") {
  auto r = LayeredRanking::from_layers({{"2", "4"}, {"9"}, {"1", "3", "7"}, {"5", "6", "8"}});
  CHECK(r.size() == 9);
  CHECK(r.priority("2") == 1);
  CHECK(r.priority("9") == 2);
  CHECK(r.priority("8") == 4);
  CHECK(r.depth() == 4);
  CHECK_THROWS_AS(r.priority("10"), Error);
  CHECK_THROWS_AS(LayeredRanking::from_layers({{"a"}, {"a"}}), Error);
}

TEST_CASE("layered ranking compaction and restriction") {
  LayeredRanking r({{"a", 1}, {"b", 3}, {"c", 3}});
  auto layers = r.layers();
  REQUIRE(layers.size() == 3);
  CHECK(layers[1].empty());
  auto c = r.compacted();
  CHECK(c.priority("b") == 2);
  CHECK(c.depth() == 2);
  auto s = r.restricted(ids({"a", "c"}));
  CHECK(s.size() == 2);
  CHECK(s.priority("c") == 3);
}

TEST_CASE("rooted tree queries") {
  auto t = RootedTree::from_edges("1", {{"1", "2"}, {"1", "3"}, {"2", "4"}, {"2", "5"}});
  CHECK(t.nodes() == ids({"1", "2", "3", "4", "5"}));
  CHECK(t.leaves() == ids({"3", "4", "5"}));
  CHECK(t.is_ancestor("1", "4"));
  CHECK(t.is_ancestor("2", "5"));
  CHECK_FALSE(t.is_ancestor("3", "4"));
  CHECK_FALSE(t.is_ancestor("4", "2"));
  CHECK(t.children("2") == std::vector<Id>{"4", "5"});
  CHECK(t.validate().empty());
  CHECK(t.edges().size() == 4);
}

TEST_CASE("rooted tree validation") {
  RootedTree cyc("r", {{"a", "b"}, {"b", "a"}});
  CHECK(has_code(cyc.validate(), "TreeCycle"));
  RootedTree rooted_child("r", {{"r", "a"}});
  CHECK(has_code(rooted_child.validate(), "RootHasParent"));
}

TEST_CASE("compatibility table lookup") {
  CompatibilityTable t(3);
  t.set("X1", "Y1", 2);
  CHECK(t.lookup("Y1", "X1") == 2);
  CHECK(t.has("X1", "Y1"));
  CHECK_FALSE(t.find("X1", "Y2").has_value());
  CHECK(t.lookup("X1", "Y2") == 0);
  t.set_default(1);
  CHECK(t.lookup("X1", "Y2") == 1);
}

TEST_CASE("selection editing") {
  Selection s;
  s.add("X", "X1");
  s.add("Y", "Y2");
  CHECK(s.size() == 2);
  CHECK(s.contains("X1"));
  CHECK(s.assigned("Y"));
  s.remove("Y2");
  CHECK_FALSE(s.assigned("Y"));
  CHECK(elements_of(s) == ids({"X1"}));
}

TEST_CASE("instance validation") {
  auto ms = test_support::structure({{"X", {{"X1", 1}, {"X2", 2}}}, {"Y", {{"Y1", 1}}}});
  CHECK(validate_instance(ms).empty());

  auto bad = ms;
  bad.morphology.alternatives["Y"].push_back({"X1", 1, 0.0, {}});
  CHECK(has_code(validate_instance(bad), "DuplicateDaId"));

  bad = ms;
  bad.morphology.alternatives["X"][0].priority = 4;
  CHECK(has_code(validate_instance(bad), "PriorityOutOfScale"));

  bad = ms;
  bad.compatibility.set("X1", "X2", 1);
  CHECK(has_code(validate_instance(bad), "SamePartCompatibility"));
}

TEST_CASE("selection validation") {
  auto ms = test_support::structure({{"X", {{"X1", 1}, {"X2", 2}}}, {"Y", {{"Y1", 1}}}});
  auto s = selection_from(ms, {"X1"});
  CHECK(validate_selection(ms, s, false).empty());
  CHECK(has_code(validate_selection(ms, s, true), "MissingPart"));
  s.add("X", "X2");
  CHECK(has_code(validate_selection(ms, s, false), "MultipleChoice"));
  ms.multi_choice = true;
  CHECK(validate_selection(ms, s, false).empty());
  CHECK_THROWS_AS(selection_from(ms, {"Z9"}), Error);
}

TEST_CASE("natural id ordering") {
  CHECK(id_less("2", "10"));
  CHECK(id_less("X2", "X10"));
  CHECK_FALSE(id_less("X10", "X2"));
  CHECK(id_less("A", "B"));
  CHECK(sorted_ids(ids({"10", "9", "1"})) == std::vector<Id>{"1", "9", "10"});
}

TEST_CASE("weighted set validation") {
  WeightedSet w;
  w.elements = ids({"a", "b"});
  w.weights["a"] = {0.5};
  w.weights["b"] = {0.0};
  CHECK(w.validate().empty());
  CHECK(has_code(w.validate(true), "WeightOutOfRange"));
  w.weights["b"] = {-1.0};
  CHECK(has_code(w.validate(), "NegativeWeight"));
  w.weights["b"] = {0.1, 0.2};
  CHECK(has_code(w.validate(), "CriteriaMismatch"));
}

TEST_CASE("infeasible error family") {
  CHECK(Error("Infeasible", "").infeasible());
  CHECK(Error("Uncoverable", "").infeasible());
  CHECK(Error("NoFeasibleComposition", "").infeasible());
  CHECK_FALSE(Error("UnknownDa", "").infeasible());
}
