#include "morphoagg/builders.hpp"

#include <algorithm>

namespace morphoagg {

std::vector<Diagnostic> SolutionFamily::validate() const {
  std::vector<Diagnostic> out;
  if (solutions.empty()) out.push_back({"EmptyFamily", "no initial solutions"});
  for (const auto &s : solutions) {
    for (auto d : validate_selection(structure, s.selection, false)) {
      d.message = s.name + ": " + d.message;
      out.push_back(std::move(d));
    }
  }
  return out;
}

std::map<Id, int> element_frequency(const SolutionFamily &family) {
  std::map<Id, int> freq;
  for (const auto &s : family.solutions)
    for (const auto &e : elements_of(s.selection)) ++freq[e];
  return freq;
}

PartialSelection substructure(const SolutionFamily &family) {
  if (family.solutions.empty()) throw Error("EmptyFamily", "no initial solutions");
  auto freq = element_frequency(family);
  int n = static_cast<int>(family.solutions.size());
  PartialSelection out;
  for (const auto &part : family.structure.morphology.parts)
    for (const auto &da : family.structure.morphology.ids(part))
      if (freq.count(da) && freq[da] == n) out.add(part, da);
  return out;
}

Superstructure superstructure(const SolutionFamily &family) {
  if (family.solutions.empty()) throw Error("EmptyFamily", "no initial solutions");
  auto freq = element_frequency(family);
  Superstructure out;
  for (const auto &part : family.structure.morphology.parts)
    for (const auto &da : family.structure.morphology.ids(part))
      if (freq.count(da)) out[part].push_back(da);
  return out;
}

PartialSelection kernel_alpha(const SolutionFamily &family, double alpha) {
  if (family.solutions.empty()) throw Error("EmptyFamily", "no initial solutions");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error("InvalidAlpha", "alpha must lie in (0,1]");
  auto freq = element_frequency(family);
  double n = static_cast<double>(family.solutions.size());
  const auto &m = family.structure.morphology;
  PartialSelection out;
  for (const auto &part : m.parts) {
    const DesignAlternative *best = nullptr;
    int best_freq = 0;
    for (const auto &a : m.alternatives.at(part)) {
      int f = freq.count(a.id) ? freq[a.id] : 0;
      if (f == 0 || f / n < alpha - 1e-12) continue;
      bool better = !best || f > best_freq ||
                    (f == best_freq && (a.priority < best->priority ||
                                        (a.priority == best->priority && id_less(a.id, best->id))));
      if (better) {
        best = &a;
        best_freq = f;
      }
    }
    if (best) out.add(part, best->id);
  }
  return out;
}

PartialSelection kernel_best(const MorphStructure &structure, const std::vector<Id> &parts) {
  if (parts.empty()) throw Error("EmptyPartList", "no parts requested");
  PartialSelection out;
  for (const auto &part : parts) {
    auto it = structure.morphology.alternatives.find(part);
    if (it == structure.morphology.alternatives.end() || it->second.empty())
      throw Error("UnknownPart", "part " + part + " is not in the morphology");
    const DesignAlternative *best = &it->second.front();
    for (const auto &a : it->second)
      if (a.priority < best->priority || (a.priority == best->priority && id_less(a.id, best->id)))
        best = &a;
    out.add(part, best->id);
  }
  return out;
}

CompatibilityTable aggregate_compatibility(const std::vector<CompatibilityTable> &tables,
                                           AggregateOp op) {
  if (tables.empty()) return CompatibilityTable();
  int l = tables.front().scale_max();
  for (const auto &t : tables)
    if (t.scale_max() != l) throw Error("ScaleMismatch", "compatibility tables use different scales");
  CompatibilityTable out(l);
  for (const auto &t : tables)
    for (const auto &[pair, v] : t.entries()) {
      auto cur = out.find(pair.first, pair.second);
      if (!cur) out.set(pair.first, pair.second, v);
      else out.set(pair.first, pair.second, op == AggregateOp::min ? std::min(*cur, v) : std::max(*cur, v));
    }
  return out;
}

MorphStructure restrict_structure(const MorphStructure &ms, const Superstructure &keep) {
  MorphStructure out = ms;
  out.morphology.parts.clear();
  out.morphology.alternatives.clear();
  IdSet kept_das;
  for (const auto &part : ms.morphology.parts) {
    auto it = keep.find(part);
    if (it == keep.end() || it->second.empty()) continue;
    out.morphology.parts.push_back(part);
    for (const auto &a : ms.morphology.alternatives.at(part))
      if (std::find(it->second.begin(), it->second.end(), a.id) != it->second.end()) {
        out.morphology.alternatives[part].push_back(a);
        kept_das.insert(a.id);
      }
  }

  CompatibilityTable ct(ms.compatibility.scale_max(), ms.compatibility.default_value());
  for (const auto &[pair, v] : ms.compatibility.entries())
    if (kept_das.count(pair.first) && kept_das.count(pair.second)) ct.set(pair.first, pair.second, v);
  out.compatibility = ct;

  // Drop leaves whose part vanished, then any inner node left childless.
  IdSet kept_parts(out.morphology.parts.begin(), out.morphology.parts.end());
  auto parent = ms.tree.parents();
  out.leaf_parts.clear();
  for (const auto &[leaf, part] : ms.leaf_parts) {
    if (kept_parts.count(part)) out.leaf_parts[leaf] = part;
    else parent.erase(leaf);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    RootedTree t(ms.tree.root(), parent);
    for (const auto &leaf : t.leaves())
      if (leaf != t.root() && !out.leaf_parts.count(leaf)) {
        parent.erase(leaf);
        changed = true;
      }
  }
  out.tree = RootedTree(ms.tree.root(), parent);
  return out;
}

Selection to_selection(const Superstructure &s) {
  Selection out;
  for (const auto &[part, das] : s)
    for (const auto &da : das) out.add(part, da);
  return out;
}

}  // namespace morphoagg
