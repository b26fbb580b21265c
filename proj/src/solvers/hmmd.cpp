#include <algorithm>
#include <limits>

#include "morphoagg/solvers.hpp"

namespace morphoagg {

bool quality_dominates(const QualityVector &a, const QualityVector &b) {
  if (a.n.size() != b.n.size()) throw Error("DimensionMismatch", "quality vectors differ in scale size");
  if (a.w < b.w) return false;
  bool strict = a.w > b.w;
  int ca = 0, cb = 0;
  for (std::size_t r = 0; r < a.n.size(); ++r) {
    ca += a.n[r];
    cb += b.n[r];
    if (ca < cb) return false;
    if (ca > cb) strict = true;
  }
  return strict;
}

QualityVector quality_of(const MorphStructure &ms, const CompositeSolution &s) {
  QualityVector q;
  q.n.assign(static_cast<std::size_t>(ms.priority_scale), 0);
  std::vector<std::pair<Id, Id>> chosen;  // (part, da)
  for (const auto &[part, das] : s.parts)
    for (const auto &da : das) chosen.emplace_back(part, da);
  q.w = ms.compatibility.scale_max();
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const auto *a = ms.morphology.find(chosen[i].second);
    if (!a) throw Error("UnknownDa", "design alternative " + chosen[i].second + " is not in the morphology");
    if (a->priority < 1 || a->priority > ms.priority_scale)
      throw Error("OutOfScale", "priority of " + a->id + " outside the declared scale");
    ++q.n[static_cast<std::size_t>(a->priority - 1)];
    for (std::size_t j = i + 1; j < chosen.size(); ++j)
      if (chosen[i].first != chosen[j].first)
        q.w = std::min(q.w, ms.compatibility.lookup(chosen[i].second, chosen[j].second));
  }
  return q;
}

HmmdEntry make_hmmd_entry(const MorphStructure &ms, const std::vector<Id> &das) {
  HmmdEntry e;
  e.solution = selection_from(ms, das);
  e.quality = quality_of(ms, e.solution);
  return e;
}

std::vector<HmmdEntry> hmmd_compose(const MorphStructure &ms, std::size_t max_compositions) {
  const auto &parts = ms.morphology.parts;
  std::vector<const std::vector<DesignAlternative> *> domains;
  std::size_t total = 1;
  for (const auto &p : parts) {
    auto it = ms.morphology.alternatives.find(p);
    if (it == ms.morphology.alternatives.end() || it->second.empty())
      throw Error("EmptyPart", "part " + p + " has no alternatives");
    domains.push_back(&it->second);
    if (total > max_compositions / it->second.size() + 1)
      throw Error("TooLarge", "composition space exceeds the enumeration bound");
    total *= it->second.size();
  }
  if (parts.empty() || total > max_compositions)
    throw Error(parts.empty() ? "EmptyStructure" : "TooLarge",
                parts.empty() ? "structure has no parts" : "composition space exceeds the enumeration bound");

  std::size_t m = parts.size();
  int l = ms.compatibility.scale_max();
  std::vector<std::size_t> idx(m, 0);
  std::vector<HmmdEntry> feasible;
  while (true) {
    int w = l;
    for (std::size_t i = 0; i < m && w > 0; ++i)
      for (std::size_t j = i + 1; j < m && w > 0; ++j)
        w = std::min(w, ms.compatibility.lookup((*domains[i])[idx[i]].id, (*domains[j])[idx[j]].id));
    if (w > 0) {
      HmmdEntry e;
      e.quality.w = w;
      e.quality.n.assign(static_cast<std::size_t>(ms.priority_scale), 0);
      for (std::size_t i = 0; i < m; ++i) {
        const auto &a = (*domains[i])[idx[i]];
        e.solution.add(parts[i], a.id);
        if (a.priority < 1 || a.priority > ms.priority_scale)
          throw Error("OutOfScale", "priority of " + a.id + " outside the declared scale");
        ++e.quality.n[static_cast<std::size_t>(a.priority - 1)];
      }
      feasible.push_back(std::move(e));
    }
    std::size_t k = m;
    while (k-- > 0) {
      if (++idx[k] < domains[k]->size()) break;
      idx[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  if (feasible.empty())
    throw Error("NoFeasibleComposition", "every composition contains an incompatible pair");

  // Many compositions share a quality vector; compare the distinct ones.
  std::vector<QualityVector> distinct;
  for (const auto &e : feasible)
    if (std::find(distinct.begin(), distinct.end(), e.quality) == distinct.end())
      distinct.push_back(e.quality);
  std::vector<QualityVector> best;
  for (const auto &q : distinct)
    if (std::none_of(distinct.begin(), distinct.end(),
                     [&](const QualityVector &o) { return quality_dominates(o, q); }))
      best.push_back(q);

  std::vector<HmmdEntry> frontier;
  for (auto &e : feasible)
    if (std::find(best.begin(), best.end(), e.quality) != best.end()) frontier.push_back(std::move(e));
  return frontier;
}

}  // namespace morphoagg
