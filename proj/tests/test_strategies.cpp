#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "morphoagg/strategies.hpp"
#include "support.hpp"

using namespace morphoagg;
using test_support::ids;

namespace {

struct Loaded {
  InstanceFile inst;
  SolutionFamily family;
  ValueTransform transform;
  int k = 3;
};

Loaded load(const std::string &name) {
  Loaded l;
  l.inst = test_support::load(name);
  l.family = l.inst.family();
  l.transform = ValueTransform::parse(l.inst.options.transform.value_or(""));
  l.k = l.family.structure.priority_scale;
  return l;
}

KernelMode given(const InstanceFile &inst) {
  auto m = KernelMode::parse("given");
  m.elements = inst.options.kernel_elements;
  return m;
}

}  // namespace

TEST_CASE("kernel modes parse and print") {
  CHECK(KernelMode::parse("").kind == KernelMode::Kind::substructure);
  CHECK(KernelMode::parse("best").kind == KernelMode::Kind::best);
  CHECK(KernelMode::parse("given").str() == "given");
  auto a = KernelMode::parse("alpha:0.6");
  CHECK(a.kind == KernelMode::Kind::alpha);
  CHECK(a.alpha == doctest::Approx(0.6));
  CHECK(a.str() == "alpha:0.6");
  CHECK_THROWS_AS(KernelMode::parse("alpha:x"), Error);
  CHECK_THROWS_AS(KernelMode::parse("median"), Error);
}

TEST_CASE("extension on telemetry") {
  auto l = load("telemetry.json");
  auto rep = strategy_extension(l.family, KernelMode::parse("alpha:0.6"), resolve_groups(l.inst.groups, l.k, l.transform), 9);
  CHECK(rep.chosen == std::vector<std::string>{"X2", "Y2", "Z2"});
  CHECK(rep.value == 9);
  CHECK(rep.cost == 7);
  CHECK(elements_of(rep.result) == ids({"X2", "Y2", "Z2", "I3", "Q1", "G4", "H3", "C1", "W2"}));
  CHECK(validate_selection(l.family.structure, rep.result, true).empty());
}

TEST_CASE("extension on security") {
  auto l = load("security.json");
  auto rep = strategy_extension(l.family, KernelMode{}, resolve_groups(l.inst.groups, l.k, l.transform), 7);
  CHECK(elements_of(rep.kernel) == ids({"J2", "D1", "G1", "U1", "V1"}));
  CHECK(rep.chosen == std::vector<std::string>{"X1", "Y1", "Z1"});
}

TEST_CASE("extension conflicts and pruning") {
  auto l = load("security.json");
  std::vector<ChoiceGroup> clash{{"J", {{"J1", 1, 1, {}, {}, 0}}, true}};
  CHECK_THROWS_AS(strategy_extension(l.family, KernelMode{}, clash, 7), Error);

  auto pruned = l.family;
  pruned.structure.compatibility.set("X1", "J2", 0);
  auto rep = strategy_extension(pruned, KernelMode{}, resolve_groups(l.inst.groups, l.k, l.transform), 8);
  CHECK(rep.chosen.front() == "X3");
  REQUIRE_FALSE(rep.warnings.empty());
  CHECK(rep.warnings.front().find("X1") != std::string::npos);
}

TEST_CASE("extension on multi choice ZigBee") {
  auto l = load("zigbee_extension.json");
  auto rep = strategy_extension(l.family, KernelMode{}, resolve_groups(l.inst.groups, l.k, l.transform), 8);
  CHECK(rep.cost <= 8);
  CHECK(validate_selection(l.family.structure, rep.result, false).empty());
  CHECK(rep.chosen == std::vector<std::string>{"J1", "L1", "W1"});
}

TEST_CASE("compression on ZigBee") {
  auto l = load("zigbee_compression.json");
  auto dels = resolve_items(l.inst.items, l.k, l.transform);
  auto rep = strategy_compression(l.family, dels, 8);
  CHECK(rep.cost >= 8);
  CHECK(rep.chosen == std::vector<std::string>{"B1", "Q1", "U1&U2"});
  CHECK(rep.warnings == std::vector<std::string>{"deletion Q1 removes a kernel element"});

  auto reference_pick = apply_deletions(superstructure(l.family), dels, {"B1", "Q1", "P1", "U1&U2"});
  CHECK(elements_of(reference_pick) ==
        ids({"X1", "J1", "B2", "I1", "G1", "H1", "V1", "V2", "D2", "E2", "E3", "Z1", "L1", "W1"}));
  CHECK_THROWS_AS(apply_deletions(superstructure(l.family), dels, {"nope"}), Error);

  std::vector<KnapsackItem> foreign{{"P2", 1, 1, {}, {}, 1}};
  CHECK_THROWS_AS(strategy_compression(l.family, foreign, 1), Error);
}

TEST_CASE("combined strategy on the notebook") {
  auto l = load("notebook.json");
  auto rep = strategy_combined(l.family, given(l.inst), l.inst.ops, 9, l.transform);
  CHECK(rep.value == 10);
  CHECK(rep.cost == 8);
  CHECK(elements_of(rep.result) == ids({"B3", "U2", "R3", "V3", "O3", "F2", "D1", "A1", "G1", "L1"}));
  CHECK(rep.chosen.front() == "A:add A1");
}

TEST_CASE("combined strategy with additions and replacements") {
  auto l = load("notebook_case1.json");
  auto rep = strategy_combined(l.family, given(l.inst), l.inst.ops, 11, l.transform);
  CHECK(rep.value == 10);
  CHECK(rep.cost == 11);
  CHECK(rep.chosen == std::vector<std::string>{"U:add U3", "F:add F2", "P:add P3", "B:none", "V:none",
                                               "A:replace A1>A3"});
  CHECK(validate_selection(l.family.structure, rep.result, true).empty());
}

TEST_CASE("combined strategy validates operations") {
  auto l = load("notebook.json");
  auto k = given(l.inst);
  ModificationOp bad_add{ModificationOp::Kind::add, "g", "B1", "", 1, 1};
  CHECK_THROWS_AS(strategy_combined(l.family, k, {bad_add}, 9), Error);
  ModificationOp bad_del{ModificationOp::Kind::remove, "g", "A1", "", 1, 1};
  CHECK_THROWS_AS(strategy_combined(l.family, k, {bad_del}, 9), Error);
  ModificationOp cross{ModificationOp::Kind::replace, "g", "U1", "B2", 1, 1};
  CHECK_THROWS_AS(strategy_combined(l.family, k, {cross}, 9), Error);
}

TEST_CASE("applying operations") {
  auto l = load("notebook.json");
  auto kernel = build_kernel(l.family, given(l.inst));
  ModificationOp rep{ModificationOp::Kind::replace, "B", "B3", "B2", 4, 1};
  ModificationOp del{ModificationOp::Kind::remove, "E", "E1", "", 1, 1};
  ModificationOp add{ModificationOp::Kind::add, "A", "A1", "", 1, 1};
  auto out = apply_ops(l.family.structure, kernel, {rep, del, add});
  CHECK(out.contains("B3"));
  CHECK_FALSE(out.contains("B2"));
  CHECK_FALSE(out.contains("E1"));
  CHECK(out.contains("A1"));
  ModificationOp del_b{ModificationOp::Kind::remove, "B", "B2", "", 1, 1};
  CHECK_THROWS_AS(apply_ops(l.family.structure, kernel, {rep, del_b}), Error);
  CHECK(rep.label() == "replace B2>B3");
  CHECK(del.label() == "delete E1");
  CHECK(ModificationOp{}.label() == "none");
}

TEST_CASE("design strategy") {
  auto inst = test_support::load("hmmd_three_parts.json");
  auto rep = strategy_design(*inst.structure);
  CHECK(elements_of(rep.result) == ids({"X4", "Y2", "Z2"}));
  CHECK(rep.frontier.size() == 1);
}

TEST_CASE("per part ranking aggregation on the web system") {
  auto inst = test_support::load("websystem.json");
  std::vector<MorphStructure> ss;
  for (const auto &s : inst.structures) ss.push_back(s.structure);
  auto agg = aggregate_rankings_per_part(ss);
  for (const auto &part : inst.structure->morphology.parts)
    for (const auto &a : inst.structure->morphology.alternatives.at(part))
      CHECK_MESSAGE(agg.morphology.find(a.id)->priority == a.priority, a.id);
  CHECK(agg.tree == inst.structure->tree);
  CHECK_THROWS_AS(aggregate_rankings_per_part({}), Error);
}

TEST_CASE("web system median target is not among the solutions") {
  auto family = test_support::load("websystem.json").family();
  auto target = ids({"J2", "E2", "W1", "D3", "O2"});
  for (const auto &s : family.solutions) CHECK(elements_of(s.selection) != target);
  auto k = kernel_alpha(family, 0.375);
  auto ke = elements_of(k);
  CHECK(ke.count("O5"));
  ke.erase("O5");
  target.erase("O2");
  CHECK(ke == target);
}
