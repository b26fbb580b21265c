#include "morphoagg/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace morphoagg {

namespace {

constexpr double kEps = 1e-12;

void require_same_universes(const std::vector<LayeredRanking> &rankings) {
  if (rankings.empty()) throw Error("EmptyInput", "no rankings given");
  auto u = rankings.front().universe();
  for (const auto &r : rankings)
    if (r.universe() != u) throw Error("UniverseMismatch", "rankings are defined over different element sets");
}

}  // namespace

std::vector<IdSet> CandidateDomain::enumerate() const {
  if (!universe) return candidates;
  if (!allow_power_set)
    throw Error("PowerSetNotEnabled", "power-set domains must be enabled explicitly");
  auto elems = sorted_ids(*universe);
  if (elems.size() >= 63 || (std::size_t{1} << elems.size()) > cap)
    throw Error("DomainTooLarge", "power set of " + std::to_string(elems.size()) + " elements exceeds the cap");
  std::vector<IdSet> out;
  std::size_t count = std::size_t{1} << elems.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    IdSet s;
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (mask & (std::size_t{1} << i)) s.insert(elems[i]);
    out.push_back(std::move(s));
  }
  return out;
}

MedianCandidate set_median(const std::vector<IdSet> &targets, const SetMetric &metric) {
  if (targets.empty()) throw Error("EmptyInput", "no target sets given");
  MedianCandidate best;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    double total = 0;
    for (const auto &t : targets) total += metric(targets[i], t);
    if (i == 0 || total < best.score[0] - kEps) best = {i, targets[i], {total}};
  }
  return best;
}

std::vector<MedianCandidate> generalized_median(const CandidateDomain &domain,
                                                const std::vector<IdSet> &targets,
                                                const SetMetric &metric) {
  if (targets.empty()) throw Error("EmptyInput", "no target sets given");
  auto cands = domain.enumerate();
  std::vector<MedianCandidate> all;
  double best = INFINITY;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    double total = 0;
    for (const auto &t : targets) total += metric(cands[i], t);
    best = std::min(best, total);
    all.push_back({i, cands[i], {total}});
  }
  std::vector<MedianCandidate> out;
  for (auto &c : all)
    if (c.score[0] <= best + 1e-9) out.push_back(std::move(c));
  return out;
}

std::vector<MedianCandidate> generalized_median(const CandidateDomain &domain,
                                                const std::vector<IdSet> &targets,
                                                const VectorSetMetric &metric) {
  if (targets.empty()) throw Error("EmptyInput", "no target sets given");
  auto cands = domain.enumerate();
  std::vector<MedianCandidate> all;
  std::vector<std::vector<double>> points;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    auto s = metric(cands[i], targets);
    points.push_back(s);
    all.push_back({i, cands[i], std::move(s)});
  }
  if (all.empty()) return {};
  std::vector<Sense> senses(points.front().size(), Sense::min);
  std::vector<MedianCandidate> out;
  for (auto i : pareto_filter(points, senses)) out.push_back(all[i]);
  return out;
}

VectorSetMetric per_target_weighted(const WeightedSet &w) {
  return [w](const IdSet &cand, const std::vector<IdSet> &targets) {
    if (targets.size() > w.criteria())
      throw Error("CriteriaMismatch", "one weight criterion per target is required");
    std::vector<double> out;
    for (std::size_t i = 0; i < targets.size(); ++i)
      out.push_back(set_proximity_weighted(cand, targets[i], w, i));
    return out;
  };
}

ExtendedMedian extended_median(const IdSet &base, const std::vector<KnapsackItem> &pool, double b,
                               KnapsackMethod method, const SolverOptions &opts) {
  for (const auto &it : pool)
    for (const auto &e : it.covered())
      if (base.count(e)) throw Error("PoolOverlap", "pool item " + e + " is already in the base set");
  auto r = knapsack_max(pool, b, method, opts);
  ExtendedMedian out{base, {}, r.value, r.weight, r.method};
  for (const auto &id : r.ids)
    for (const auto &it : pool)
      if (it.id == id)
        for (const auto &e : it.covered()) {
          out.set.insert(e);
          out.added.push_back(e);
        }
  return out;
}

ExtendedMedian extended_median(const IdSet &base, const std::vector<ChoiceGroup> &pool, double b,
                               MckMethod method, const SolverOptions &opts) {
  for (const auto &g : pool)
    for (const auto &it : g.items)
      for (const auto &e : it.covered())
        if (base.count(e)) throw Error("PoolOverlap", "pool item " + e + " is already in the base set");
  auto r = multiple_choice_knapsack(pool, b, method, opts);
  ExtendedMedian out{base, {}, r.value, r.weight, r.method};
  for (std::size_t g = 0; g < pool.size(); ++g)
    for (const auto &it : pool[g].items)
      if (it.id == r.picks[g].item)
        for (const auto &e : it.covered()) {
          out.set.insert(e);
          out.added.push_back(e);
        }
  return out;
}

LayeredRanking consensus_ranking_assignment(const std::vector<LayeredRanking> &rankings, int m,
                                            bool compact) {
  require_same_universes(rankings);
  if (m < 1) throw Error("InvalidLayerCount", "layer count must be positive");
  std::map<Id, int> out;
  for (const auto &e : rankings.front().universe()) {
    int best_k = 1;
    long best_cost = -1;
    for (int k = 1; k <= m; ++k) {
      long cost = 0;
      for (const auto &r : rankings) {
        int p = r.priority(e);
        if (p > m) throw Error("OutOfScale", "priority of " + e + " exceeds the layer count");
        cost += std::abs(p - k);
      }
      if (best_cost < 0 || cost < best_cost) {
        best_cost = cost;
        best_k = k;
      }
    }
    out[e] = best_k;
  }
  LayeredRanking r(std::move(out));
  return compact ? r.compacted() : r;
}

LayeredRanking consensus_ranking_rounding(const std::vector<LayeredRanking> &rankings, bool compact) {
  require_same_universes(rankings);
  auto n = static_cast<long>(rankings.size());
  std::map<Id, int> out;
  for (const auto &e : rankings.front().universe()) {
    long sum = 0;
    for (const auto &r : rankings) sum += r.priority(e);
    // round half up of sum / n in integers
    out[e] = static_cast<int>((2 * sum + n) / (2 * n));
  }
  LayeredRanking r(std::move(out));
  return compact ? r.compacted() : r;
}

std::vector<TreeMedian> median_tree(const std::vector<RootedTree> &candidates,
                                    const std::vector<RootedTree> &targets,
                                    const std::optional<std::vector<double>> &weights) {
  if (candidates.empty()) throw Error("EmptyInput", "no candidate trees given");
  std::vector<TreeMedian> all;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    TreeMedian tm{i, {0.0, 0.0}};
    for (const auto &t : targets) {
      auto p = tree_proximity(candidates[i], t).values();
      tm.totals[0] += p[0];
      tm.totals[1] += p[1];
    }
    all.push_back(tm);
  }
  std::vector<TreeMedian> out;
  if (weights) {
    if (weights->size() != 2) throw Error("DimensionMismatch", "tree scalarization needs two weights");
    auto scal = [&](const TreeMedian &t) { return (*weights)[0] * t.totals[0] + (*weights)[1] * t.totals[1]; };
    double best = INFINITY;
    for (const auto &t : all) best = std::min(best, scal(t));
    for (const auto &t : all)
      if (scal(t) <= best + 1e-9) out.push_back(t);
    return out;
  }
  std::vector<std::vector<double>> pts;
  for (const auto &t : all) pts.push_back(t.totals);
  for (auto i : pareto_filter(pts, {Sense::min, Sense::min})) out.push_back(all[i]);
  return out;
}

RootedTree tree_kernel(const std::vector<RootedTree> &targets) {
  if (targets.empty()) throw Error("EmptyInput", "no target trees given");
  if (targets.size() == 1) return targets.front();
  std::map<Id, Id> parent;
  for (std::size_t i = 0; i + 1 < targets.size(); ++i) {
    const auto &a = targets[i].parents();
    const auto &b = targets[i + 1].parents();
    for (const auto &[child, p] : a) {
      auto it = b.find(child);
      if (it != b.end() && it->second == p) parent.emplace(child, p);
    }
  }
  const Id &root = targets.front().root();
  // Keep only nodes hanging from the root.
  RootedTree loose(root, parent);
  std::map<Id, Id> kept;
  for (const auto &[child, p] : parent)
    if (loose.is_ancestor(root, child)) kept.emplace(child, p);
  return RootedTree(root, kept);
}

}  // namespace morphoagg
