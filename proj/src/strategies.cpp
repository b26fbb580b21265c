#include "morphoagg/strategies.hpp"

#include <algorithm>
#include <sstream>

#include "morphoagg/consensus.hpp"

namespace morphoagg {

namespace {

void require_valid_family(const SolutionFamily &family) {
  auto diags = family.validate();
  if (!diags.empty()) throw Error(diags.front().code, diags.front().message);
}

std::optional<Id> part_or_throw(const MorphStructure &ms, const Id &da) {
  auto p = ms.morphology.part_of(da);
  if (!p) throw Error("UnknownDa", "design alternative " + da + " is not in the morphology");
  return p;
}

}  // namespace

KernelMode KernelMode::parse(const std::string &name) {
  KernelMode m;
  if (name.empty() || name == "substructure") return m;
  if (name == "best") {
    m.kind = Kind::best;
    return m;
  }
  if (name == "given") {
    m.kind = Kind::given;
    return m;
  }
  if (name.rfind("alpha", 0) == 0) {
    m.kind = Kind::alpha;
    auto colon = name.find(':');
    if (colon != std::string::npos) {
      try {
        m.alpha = std::stod(name.substr(colon + 1));
      } catch (const std::exception &) {
        throw Error("BadKernelMode", "cannot read alpha in '" + name + "'");
      }
    }
    return m;
  }
  throw Error("BadKernelMode", "unknown kernel mode '" + name + "'");
}

std::string KernelMode::str() const {
  switch (kind) {
    case Kind::substructure: return "substructure";
    case Kind::best: return "best";
    case Kind::given: return "given";
    case Kind::alpha: {
      std::ostringstream os;
      os << "alpha:" << alpha;
      return os.str();
    }
  }
  return "substructure";
}

PartialSelection build_kernel(const SolutionFamily &family, const KernelMode &mode) {
  switch (mode.kind) {
    case KernelMode::Kind::alpha: return kernel_alpha(family, mode.alpha);
    case KernelMode::Kind::best: return kernel_best(family.structure, mode.parts);
    case KernelMode::Kind::given: {
      PartialSelection k;
      for (const auto &da : mode.elements) k.add(*part_or_throw(family.structure, da), da);
      return k;
    }
    case KernelMode::Kind::substructure: break;
  }
  return substructure(family);
}

std::string ModificationOp::label() const {
  switch (kind) {
    case Kind::add: return "add " + da;
    case Kind::remove: return "delete " + da;
    case Kind::replace: return "replace " + old_da + ">" + da;
    case Kind::none: return "none";
  }
  return "none";
}

// ---------------------------------------------------------------------------

StrategyReport strategy_extension(const SolutionFamily &family, const KernelMode &kernel_mode,
                                  const std::vector<ChoiceGroup> &additions, double b,
                                  MckMethod method, const SolverOptions &opts) {
  require_valid_family(family);
  const auto &ms = family.structure;
  StrategyReport rep;
  rep.strategy = "extension";
  rep.kernel_mode = kernel_mode.str();
  rep.kernel = build_kernel(family, kernel_mode);
  rep.budget = b;

  auto kernel_elems = elements_of(rep.kernel);
  std::vector<ChoiceGroup> groups;
  for (const auto &g : additions) {
    ChoiceGroup kept{g.id, {}, g.mandatory};
    for (const auto &it : g.items) {
      bool ok = true;
      for (const auto &da : it.covered()) {
        auto part = part_or_throw(ms, da);
        if (rep.kernel.assigned(*part) && !ms.multi_choice)
          throw Error("KernelConflict", "addition " + da + " targets part " + *part + " already held by the kernel");
        // Only explicitly declared zero estimates exclude an addition.
        for (const auto &k : kernel_elems) {
          auto v = ms.compatibility.find(da, k);
          if (v && *v == 0) ok = false;
        }
      }
      if (ok) kept.items.push_back(it);
      else rep.warnings.push_back("pruned " + it.id + ": incompatible with the kernel");
    }
    if (kept.items.empty()) {
      rep.warnings.push_back("group " + g.id + " has no compatible addition");
      continue;
    }
    groups.push_back(std::move(kept));
  }

  rep.result = rep.kernel;
  if (!groups.empty()) {
    auto r = multiple_choice_knapsack(groups, b, method, opts);
    rep.method = r.method;
    rep.value = r.value;
    rep.cost = r.weight;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (const auto &it : groups[g].items)
        if (it.id == r.picks[g].item) {
          rep.chosen.push_back(it.id);
          for (const auto &da : it.covered()) rep.result.add(*part_or_throw(ms, da), da);
        }
    }
  } else {
    rep.method = method == MckMethod::greedy ? "greedy" : "exact_dp";
  }
  return rep;
}

Selection apply_deletions(const Superstructure &super, const std::vector<KnapsackItem> &deletions,
                          const std::vector<Id> &chosen) {
  Selection out = to_selection(super);
  for (const auto &id : chosen) {
    auto it = std::find_if(deletions.begin(), deletions.end(), [&](const auto &d) { return d.id == id; });
    if (it == deletions.end()) throw Error("UnknownItem", "deletion " + id + " is not in the pool");
    for (const auto &da : it->covered()) out.remove(da);
  }
  return out;
}

StrategyReport strategy_compression(const SolutionFamily &family,
                                    const std::vector<KnapsackItem> &deletions, double b,
                                    const SolverOptions &opts) {
  require_valid_family(family);
  StrategyReport rep;
  rep.strategy = "compression";
  rep.kernel_mode = "substructure";
  rep.kernel = substructure(family);
  rep.superstructure = superstructure(family);
  rep.budget = b;

  auto super_sel = to_selection(rep.superstructure);
  for (const auto &d : deletions)
    for (const auto &da : d.covered()) {
      if (!super_sel.contains(da))
        throw Error("InvalidDeletion", "deletion " + da + " is not in the superstructure");
      if (rep.kernel.contains(da))
        rep.warnings.push_back("deletion " + da + " removes a kernel element");
    }

  auto r = knapsack_min_cover(deletions, b, opts);
  rep.method = r.method;
  rep.chosen = r.ids;
  rep.value = r.value;
  rep.cost = r.weight;
  rep.result = apply_deletions(rep.superstructure, deletions, r.ids);
  return rep;
}

Selection apply_ops(const MorphStructure &ms, const PartialSelection &kernel,
                    const std::vector<ModificationOp> &ops) {
  for (const auto &op : ops)
    if (op.kind == ModificationOp::Kind::remove)
      for (const auto &other : ops)
        if (other.kind == ModificationOp::Kind::replace && other.old_da == op.da)
          throw Error("OpConflict", "DA " + op.da + " is both replaced and deleted");

  Selection out = kernel;
  for (const auto &op : ops)
    if (op.kind == ModificationOp::Kind::add) out.add(*part_or_throw(ms, op.da), op.da);
  for (const auto &op : ops)
    if (op.kind == ModificationOp::Kind::replace) {
      out.remove(op.old_da);
      out.add(*part_or_throw(ms, op.da), op.da);
    }
  for (const auto &op : ops)
    if (op.kind == ModificationOp::Kind::remove) out.remove(op.da);
  return out;
}

StrategyReport strategy_combined(const SolutionFamily &family, const KernelMode &kernel_mode,
                                 const std::vector<ModificationOp> &ops, double b,
                                 const ValueTransform &transform, MckMethod method,
                                 const SolverOptions &opts) {
  require_valid_family(family);
  const auto &ms = family.structure;
  StrategyReport rep;
  rep.strategy = "combined";
  rep.kernel_mode = kernel_mode.str();
  rep.kernel = build_kernel(family, kernel_mode);
  rep.budget = b;

  for (const auto &op : ops) {
    using K = ModificationOp::Kind;
    if (op.kind == K::add) {
      auto part = part_or_throw(ms, op.da);
      if (rep.kernel.assigned(*part) && !ms.multi_choice)
        throw Error("InvalidOp", "add " + op.da + ": part " + *part + " is already assigned");
    } else if (op.kind == K::remove) {
      if (!rep.kernel.contains(op.da)) throw Error("InvalidOp", "delete " + op.da + ": not in the kernel");
    } else if (op.kind == K::replace) {
      if (!rep.kernel.contains(op.old_da))
        throw Error("InvalidOp", "replace " + op.old_da + ": not in the kernel");
      if (part_or_throw(ms, op.old_da) != part_or_throw(ms, op.da))
        throw Error("InvalidOp", "replace " + op.old_da + ">" + op.da + " crosses parts");
    }
  }

  std::vector<ChoiceGroup> groups;
  std::vector<std::vector<const ModificationOp *>> members;
  for (const auto &op : ops) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto &g) { return g.id == op.group; });
    std::size_t gi = static_cast<std::size_t>(it - groups.begin());
    if (it == groups.end()) {
      groups.push_back({op.group, {}, true});
      members.emplace_back();
    }
    KnapsackItem item;
    item.id = op.group + ":" + op.label();
    item.weight = op.cost;
    item.value = priority_to_value(op.priority, ms.priority_scale, transform);
    item.priority = op.priority;
    groups[gi].items.push_back(item);
    members[gi].push_back(&op);
  }

  auto r = multiple_choice_knapsack(groups, b, method, opts);
  rep.method = r.method;
  rep.value = r.value;
  rep.cost = r.weight;
  std::vector<ModificationOp> picked;
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (std::size_t k = 0; k < groups[g].items.size(); ++k)
      if (groups[g].items[k].id == r.picks[g].item) {
        rep.chosen.push_back(groups[g].items[k].id);
        picked.push_back(*members[g][k]);
      }
  rep.result = apply_ops(ms, rep.kernel, picked);
  auto diags = validate_selection(ms, rep.result, false);
  if (!diags.empty()) throw Error(diags.front().code, diags.front().message);
  return rep;
}

StrategyReport strategy_design(const MorphStructure &ms) {
  auto diags = validate_instance(ms);
  if (!diags.empty()) throw Error(diags.front().code, diags.front().message);
  StrategyReport rep;
  rep.strategy = "design";
  rep.method = "hmmd";
  rep.frontier = hmmd_compose(ms);
  rep.result = rep.frontier.front().solution;
  return rep;
}

MorphStructure aggregate_rankings_per_part(const std::vector<MorphStructure> &structures) {
  if (structures.empty()) throw Error("EmptyInput", "no structures given");
  if (structures.size() == 1) return structures.front();

  MorphStructure out;
  std::vector<CompatibilityTable> tables;
  std::map<Id, std::map<Id, std::vector<int>>> ranks;  // part -> da -> priorities
  std::map<Id, Id> parent;
  for (const auto &ms : structures) {
    tables.push_back(ms.compatibility);
    out.priority_scale = std::max(out.priority_scale, ms.priority_scale);
    out.multi_choice = out.multi_choice || ms.multi_choice;
    for (const auto &part : ms.morphology.parts) {
      if (std::find(out.morphology.parts.begin(), out.morphology.parts.end(), part) == out.morphology.parts.end())
        out.morphology.parts.push_back(part);
      auto &alts = out.morphology.alternatives[part];
      for (const auto &a : ms.morphology.alternatives.at(part)) {
        ranks[part][a.id].push_back(a.priority);
        if (std::none_of(alts.begin(), alts.end(), [&](const auto &x) { return x.id == a.id; }))
          alts.push_back(a);
      }
    }
    for (const auto &[child, p] : ms.tree.parents()) parent.emplace(child, p);
    for (const auto &[leaf, part] : ms.leaf_parts) out.leaf_parts.emplace(leaf, part);
  }
  for (auto &[part, alts] : out.morphology.alternatives)
    for (auto &a : alts) {
      const auto &v = ranks[part][a.id];
      std::vector<LayeredRanking> per;
      for (int p : v) per.push_back(LayeredRanking({{a.id, p}}));
      a.priority = consensus_ranking_rounding(per).priority(a.id);
    }
  out.compatibility = aggregate_compatibility(tables, AggregateOp::min);
  out.tree = RootedTree(structures.front().tree.root(), parent);
  return out;
}

}  // namespace morphoagg
