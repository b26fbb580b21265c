#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "morphoagg/builders.hpp"
#include "support.hpp"

using namespace morphoagg;
using test_support::ids;

TEST_CASE("notebook substructure and superstructure") {
  auto family = test_support::load("notebook.json").family();
  CHECK(elements_of(substructure(family)) == ids({"V3", "E1", "D1", "L1", "Q2"}));
  auto super = superstructure(family);
  CHECK(super["B"] == std::vector<Id>{"B1", "B2"});
  CHECK(super["U"] == std::vector<Id>{"U1", "U2", "U3"});
  CHECK(super["P"] == std::vector<Id>{"P2", "P3", "P4"});
  CHECK(super["V"] == std::vector<Id>{"V3"});
}

TEST_CASE("telemetry alpha kernel") {
  auto family = test_support::load("telemetry.json").family();
  auto k = kernel_alpha(family, 0.6);
  CHECK(elements_of(k) == ids({"I3", "Q1", "G4", "H3", "C1", "W2"}));
  CHECK_FALSE(k.assigned("X"));
  CHECK(elements_of(kernel_alpha(family, 1.0)) == ids({"G4", "C1"}));
  CHECK(elements_of(kernel_alpha(family, 0.5)).count("X2"));
  CHECK_THROWS_AS(kernel_alpha(family, 0.0), Error);
  CHECK_THROWS_AS(kernel_alpha(family, 1.5), Error);
}

TEST_CASE("art plan kernel") {
  auto family = test_support::load("artplan.json").family();
  CHECK(elements_of(substructure(family)).empty());
  CHECK(elements_of(kernel_alpha(family, 0.6)) == ids({"I3", "J3", "U2"}));
}

TEST_CASE("investment kernel ties fall to priority") {
  auto family = test_support::load("investment.json").family();
  CHECK(elements_of(kernel_alpha(family, 0.6)) == ids({"A2"}));
  CHECK(elements_of(kernel_alpha(family, 0.5)) == ids({"A2", "B5", "L4"}));
}

TEST_CASE("web system plurality kernel") {
  auto family = test_support::load("websystem.json").family();
  CHECK(elements_of(kernel_alpha(family, 0.375)) == ids({"J2", "E2", "W1", "D3", "O5"}));
  auto freq = element_frequency(family);
  CHECK(freq["J2"] == 5);
  CHECK(freq["O2"] == 3);
  CHECK(freq["O5"] == 3);
}

TEST_CASE("best kernel picks top priority") {
  auto family = test_support::load("telemetry.json").family();
  auto k = kernel_best(family.structure, {"X", "Q", "W"});
  CHECK(elements_of(k) == ids({"X2", "Q1", "W2"}));
  CHECK_THROWS_AS(kernel_best(family.structure, {}), Error);
  CHECK_THROWS_AS(kernel_best(family.structure, {"NOPE"}), Error);
}

TEST_CASE("multi choice substructure keeps every shared DA") {
  auto family = test_support::load("zigbee_compression.json").family();
  CHECK(elements_of(substructure(family)) == ids({"X1", "B2", "I1", "Q1", "D2", "Z1"}));
  auto super = superstructure(family);
  CHECK(super["E"] == std::vector<Id>{"E2", "E3"});
  CHECK(super["P"] == std::vector<Id>{"P1"});
}

TEST_CASE("compatibility aggregation by minimum") {
  auto inst = test_support::load("two_structures.json");
  auto agg = aggregate_compatibility({inst.structures[0].structure.compatibility, inst.structures[1].structure.compatibility});
  CHECK(agg.find("A11", "A21") == 0);
  CHECK(agg.find("A12", "A21") == 3);
  CHECK(agg.find("A12", "A23") == 2);
  CHECK(agg.find("A13", "A23") == 2);
  CHECK(agg.find("A13", "A22") == 1);
  CHECK(agg.find("A14", "A22") == 2);
  CHECK_FALSE(agg.find("A14", "A21").has_value());
  auto mx = aggregate_compatibility({inst.structures[0].structure.compatibility, inst.structures[1].structure.compatibility},
                                    AggregateOp::max);
  CHECK(mx.find("A12", "A23") == 3);
  CHECK_THROWS_AS(aggregate_compatibility({CompatibilityTable(3), CompatibilityTable(4)}), Error);
}

TEST_CASE("restricting a structure to a superstructure") {
  auto family = test_support::load("telemetry.json").family();
  auto r = restrict_structure(family.structure, superstructure(family));
  CHECK(r.morphology.ids("X") == std::vector<Id>{"X2", "X3"});
  CHECK(r.morphology.ids("G") == std::vector<Id>{"G4"});
  CHECK(validate_instance(r).empty());
}

TEST_CASE("empty family is rejected") {
  SolutionFamily f;
  f.structure = test_support::structure({{"X", {{"X1", 1}}}});
  CHECK_THROWS_AS(substructure(f), Error);
  CHECK_THROWS_AS(kernel_alpha(f, 0.5), Error);
}
