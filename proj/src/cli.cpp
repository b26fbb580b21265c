#include "morphoagg/cli.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "morphoagg/consensus.hpp"
#include "morphoagg/instance.hpp"
#include "morphoagg/metrics.hpp"
#include "morphoagg/strategies.hpp"

namespace morphoagg {

using json = nlohmann::ordered_json;

namespace {

struct Flags {
  std::string budget;
  std::string alpha;
  std::string method;
  std::string transform;
  std::string kernel;
  std::string output = "json";
  std::string seed;
  int layers = 0;
  int strategy = 0;
  std::string file;
  std::string kind;  // consensus kind or solve problem
};

double parse_real(const std::string &s, const std::string &what) {
  char *end = nullptr;
  errno = 0;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno != 0 || !std::isfinite(v))
    throw Error("BadArgument", "cannot read " + what + " '" + s + "'");
  return v;
}

SolverOptions solver_options() {
  SolverOptions o;
  if (const char *q = std::getenv("MORPHOAGG_QUANTUM")) {
    o.quantum = parse_real(q, "MORPHOAGG_QUANTUM");
    if (!(o.quantum > 0)) throw Error("BadArgument", "MORPHOAGG_QUANTUM must be positive");
  }
  return o;
}

double budget_of(const Flags &f, const InstanceFile &inst) {
  if (!f.budget.empty()) return parse_real(f.budget, "budget");
  if (inst.options.budget) return *inst.options.budget;
  throw Error("MissingBudget", "no budget given (use --budget or options.budget)");
}

std::string method_of(const Flags &f, const InstanceFile &inst, const std::string &fallback) {
  if (!f.method.empty()) return f.method;
  if (inst.options.method) return *inst.options.method;
  return fallback;
}

ValueTransform transform_of(const Flags &f, const InstanceFile &inst) {
  if (!f.transform.empty()) return ValueTransform::parse(f.transform);
  if (inst.options.transform) return ValueTransform::parse(*inst.options.transform);
  return {};
}

int scale_of(const InstanceFile &inst) {
  if (inst.structure) return inst.structure->priority_scale;
  int k = 1;
  for (const auto &pi : inst.items) k = std::max(k, pi.item.priority);
  for (const auto &g : inst.groups)
    for (const auto &pi : g.items) k = std::max(k, pi.item.priority);
  return k;
}

KnapsackMethod knapsack_method(const std::string &m) {
  if (m == "exact_dp" || m == "exact") return KnapsackMethod::exact_dp;
  if (m == "branch_bound") return KnapsackMethod::branch_bound;
  if (m == "greedy") return KnapsackMethod::greedy;
  throw Error("BadArgument", "unknown knapsack method '" + m + "'");
}

CliqueMethod clique_method(const std::string &m) {
  if (m == "exact" || m == "exact_dp") return CliqueMethod::exact;
  if (m == "greedy") return CliqueMethod::greedy;
  throw Error("BadArgument", "unknown clique method '" + m + "'");
}

MckMethod mck_method(const std::string &m) {
  if (m == "exact_dp" || m == "exact") return MckMethod::exact_dp;
  if (m == "greedy") return MckMethod::greedy;
  throw Error("BadArgument", "unknown multiple-choice method '" + m + "'");
}

KernelMode kernel_mode_of(const Flags &f, const InstanceFile &inst) {
  KernelMode mode;
  if (!f.kernel.empty()) mode = KernelMode::parse(f.kernel);
  else if (!f.alpha.empty()) mode.kind = KernelMode::Kind::alpha;
  else if (inst.options.kernel) mode = KernelMode::parse(*inst.options.kernel);
  else if (inst.options.alpha) mode.kind = KernelMode::Kind::alpha;
  if (mode.kind == KernelMode::Kind::alpha) {
    if (!f.alpha.empty()) mode.alpha = parse_real(f.alpha, "alpha");
    else if (f.kernel.find(':') == std::string::npos && inst.options.alpha) mode.alpha = *inst.options.alpha;
  }
  if (mode.kind == KernelMode::Kind::best) {
    mode.parts = inst.options.kernel_parts;
    if (mode.parts.empty()) mode.parts = inst.family().structure.morphology.parts;
  }
  if (mode.kind == KernelMode::Kind::given) {
    if (inst.options.kernel_elements.empty())
      throw Error("MissingKernel", "kernel mode given needs options.kernel_elements");
    mode.elements = inst.options.kernel_elements;
  }
  return mode;
}

const MorphStructure &structure_of(const InstanceFile &inst) {
  if (!inst.structure) throw Error("MissingStructure", "instance has no structure");
  return *inst.structure;
}

json num(double v) { return format_decimal(v); }

void merge(json &into, const json &from) {
  for (const auto &[k, v] : from.items()) into[k] = v;
}

json ids_json(const std::vector<Id> &ids) {
  json a = json::array();
  for (const auto &i : ids) a.push_back(i);
  return a;
}

// DAs in part declaration order.
std::vector<Id> ordered_elements(const MorphStructure &ms, const Selection &s) {
  std::vector<Id> out;
  for (const auto &part : ms.morphology.parts) {
    auto it = s.parts.find(part);
    if (it != s.parts.end()) out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

json selection_json(const MorphStructure &ms, const Selection &s) {
  json j = json::object();
  for (const auto &part : ms.morphology.parts) {
    auto it = s.parts.find(part);
    if (it != s.parts.end()) j[part] = ids_json(it->second);
  }
  return j;
}

json superstructure_json(const MorphStructure &ms, const Superstructure &s) {
  json j = json::object();
  for (const auto &part : ms.morphology.parts) {
    auto it = s.find(part);
    if (it != s.end()) j[part] = ids_json(it->second);
  }
  return j;
}

std::string quality_text(const QualityVector &q) {
  std::string s = "(" + std::to_string(q.w) + ";";
  for (std::size_t i = 0; i < q.n.size(); ++i) s += (i ? "," : "") + std::to_string(q.n[i]);
  return s + ")";
}

json frontier_json(const MorphStructure &ms, const std::vector<HmmdEntry> &frontier) {
  json a = json::array();
  for (const auto &e : frontier) {
    json j;
    j["solution"] = ids_json(ordered_elements(ms, e.solution));
    j["w"] = e.quality.w;
    j["n"] = e.quality.n;
    j["N"] = quality_text(e.quality);
    a.push_back(j);
  }
  return a;
}

json knapsack_json(const KnapsackResult &r, double b) {
  json j;
  j["method"] = r.method;
  j["budget"] = num(b);
  j["items"] = ids_json(r.ids);
  j["value"] = num(r.value);
  j["weight"] = num(r.weight);
  j["count"] = r.ids.size();
  return j;
}

// --- subcommands ------------------------------------------------------------

json cmd_metrics(const InstanceFile &inst) {
  json rep;
  if (!inst.sets.empty()) {
    json a = json::array();
    for (std::size_t i = 0; i < inst.sets.size(); ++i)
      for (std::size_t j = i + 1; j < inst.sets.size(); ++j) {
        json p;
        p["a"] = inst.sets[i].name;
        p["b"] = inst.sets[j].name;
        p["rho_e"] = num(set_proximity_elements(inst.sets[i].elements, inst.sets[j].elements));
        if (inst.weights) {
          json w = json::array();
          for (double v : set_proximity_weighted_vector(inst.sets[i].elements, inst.sets[j].elements, *inst.weights))
            w.push_back(num(v));
          p["rho_w"] = w;
        }
        a.push_back(p);
      }
    rep["sets"] = a;
  }
  if (!inst.rankings.empty()) {
    json a = json::array();
    for (std::size_t i = 0; i < inst.rankings.size(); ++i)
      for (std::size_t j = i + 1; j < inst.rankings.size(); ++j) {
        const auto &r1 = inst.rankings[i].ranking;
        const auto &r2 = inst.rankings[j].ranking;
        json p;
        p["a"] = inst.rankings[i].name;
        p["b"] = inst.rankings[j].name;
        p["kendall_tau"] = kendall_tau(r1, r2);
        if (r1.size() >= 2) p["kendall_tau_normalized"] = num(kendall_tau_normalized(r1, r2));
        auto ev = vector_proximity(r1, r2);
        json x = json::object(), y = json::object();
        for (const auto &[k, v] : ev.x) x[std::to_string(k)] = num(v);
        for (const auto &[k, v] : ev.y) y[std::to_string(k)] = num(v);
        p["m"] = ev.m;
        p["x"] = x;
        p["y"] = y;
        a.push_back(p);
      }
    rep["rankings"] = a;
  }
  if (!inst.trees.empty()) {
    json a = json::array();
    for (std::size_t i = 0; i < inst.trees.size(); ++i)
      for (std::size_t j = i + 1; j < inst.trees.size(); ++j) {
        json p;
        p["a"] = inst.trees[i].name;
        p["b"] = inst.trees[j].name;
        for (const auto &[label, v] : tree_proximity(inst.trees[i].tree, inst.trees[j].tree).components) p[label] = num(v);
        a.push_back(p);
      }
    rep["trees"] = a;
  }
  if (!inst.structures.empty()) {
    json a = json::array();
    for (std::size_t i = 0; i < inst.structures.size(); ++i)
      for (std::size_t j = i + 1; j < inst.structures.size(); ++j) {
        json p;
        p["a"] = inst.structures[i].name;
        p["b"] = inst.structures[j].name;
        for (const auto &[label, v] : morph_proximity(inst.structures[i].structure, inst.structures[j].structure).components)
          p[label] = num(v);
        a.push_back(p);
      }
    rep["structures"] = a;
  }
  if (rep.is_null()) throw Error("NothingToMeasure", "instance has no sets, rankings, trees or structures");
  return rep;
}

json cmd_kernel(const InstanceFile &inst, const Flags &f) {
  auto family = inst.family();
  KernelMode mode;
  if (!f.method.empty()) {
    mode = KernelMode::parse(f.method == "alpha" ? "alpha" : f.method);
    if (mode.kind == KernelMode::Kind::alpha) {
      mode.alpha = !f.alpha.empty() ? parse_real(f.alpha, "alpha") : inst.options.alpha.value_or(1.0);
    }
    if (mode.kind == KernelMode::Kind::best) {
      mode.parts = inst.options.kernel_parts;
      if (mode.parts.empty()) mode.parts = family.structure.morphology.parts;
    }
  } else {
    mode = kernel_mode_of(f, inst);
  }
  auto k = build_kernel(family, mode);
  json rep;
  rep["mode"] = mode.str();
  rep["solutions"] = family.solutions.size();
  rep["kernel"] = selection_json(family.structure, k);
  rep["elements"] = ids_json(ordered_elements(family.structure, k));
  json freq = json::object();
  auto fr = element_frequency(family);
  for (const auto &part : family.structure.morphology.parts)
    for (const auto &a : family.structure.morphology.alternatives.at(part))
      if (fr.count(a.id)) freq[a.id] = fr[a.id];
  rep["frequency"] = freq;
  return rep;
}

json cmd_superset(const InstanceFile &inst) {
  auto family = inst.family();
  auto s = superstructure(family);
  json rep;
  rep["superstructure"] = superstructure_json(family.structure, s);
  rep["elements"] = ids_json(ordered_elements(family.structure, to_selection(s)));
  rep["substructure"] = ids_json(ordered_elements(family.structure, substructure(family)));
  return rep;
}

std::vector<IdSet> target_sets(const InstanceFile &inst) {
  if (inst.sets.empty()) throw Error("EmptyInput", "instance has no sets");
  std::vector<IdSet> out;
  for (const auto &s : inst.sets) out.push_back(s.elements);
  return out;
}

json ranking_json(const LayeredRanking &r) {
  json rep;
  json pri = json::object();
  std::vector<Id> ids;
  for (const auto &[id, p] : r.priorities()) ids.push_back(id);
  std::sort(ids.begin(), ids.end(), id_less);
  for (const auto &id : ids) pri[id] = r.priority(id);
  rep["priorities"] = pri;
  json layers = json::array();
  for (auto layer : r.layers()) {
    std::sort(layer.begin(), layer.end(), id_less);
    layers.push_back(ids_json(layer));
  }
  rep["layers"] = layers;
  return rep;
}

json cmd_consensus(const InstanceFile &inst, const Flags &f) {
  json rep;
  rep["kind"] = f.kind;
  if (f.kind == "ranking") {
    if (inst.rankings.empty()) throw Error("EmptyInput", "instance has no rankings");
    std::vector<LayeredRanking> rs;
    int depth = 1;
    for (const auto &r : inst.rankings) {
      rs.push_back(r.ranking);
      depth = std::max(depth, r.ranking.depth());
    }
    auto method = method_of(f, inst, "assignment");
    rep["method"] = method;
    LayeredRanking out;
    if (method == "assignment") {
      int m = f.layers > 0 ? f.layers : inst.options.layers.value_or(depth);
      rep["layers_allowed"] = m;
      out = consensus_ranking_assignment(rs, m);
    } else if (method == "rounding") {
      out = consensus_ranking_rounding(rs);
    } else {
      throw Error("BadArgument", "unknown ranking consensus method '" + method + "'");
    }
    merge(rep, ranking_json(out));
    long cost = 0;
    for (const auto &r : rs)
      for (const auto &[id, p] : r.priorities()) cost += std::abs(p - out.priority(id));
    rep["total_deviation"] = cost;
    return rep;
  }
  if (f.kind == "set") {
    auto targets = target_sets(inst);
    auto method = method_of(f, inst, "median");
    rep["method"] = method;
    if (method == "median") {
      auto m = set_median(targets);
      rep["median"] = inst.sets[m.index].name;
      rep["elements"] = ids_json(sorted_ids(m.set));
      rep["total"] = num(m.score[0]);
      return rep;
    }
    CandidateDomain dom;
    std::vector<std::string> names;
    if (!inst.candidates.empty()) {
      for (const auto &c : inst.candidates) {
        dom.candidates.push_back(c.elements);
        names.push_back(c.name);
      }
    } else if (inst.options.power_set) {
      IdSet u;
      for (const auto &t : targets) u.insert(t.begin(), t.end());
      dom.universe = u;
      dom.allow_power_set = true;
    } else {
      for (const auto &s : inst.sets) {
        dom.candidates.push_back(s.elements);
        names.push_back(s.name);
      }
    }
    std::vector<MedianCandidate> res;
    if (method == "generalized") {
      res = generalized_median(dom, targets);
    } else if (method == "vector") {
      if (!inst.weights) throw Error("MissingWeights", "vector median needs per-criterion weights");
      auto metric = per_target_weighted(*inst.weights);
      res = generalized_median(dom, targets, metric);
      if (!names.empty()) {
        json all = json::array();
        for (std::size_t i = 0; i < dom.candidates.size(); ++i) {
          json c;
          c["name"] = names[i];
          json sc = json::array();
          for (double v : metric(dom.candidates[i], targets)) sc.push_back(num(v));
          c["score"] = sc;
          all.push_back(c);
        }
        rep["candidates"] = all;
      }
    } else {
      throw Error("BadArgument", "unknown set consensus method '" + method + "'");
    }
    json a = json::array();
    for (const auto &c : res) {
      json j;
      if (!names.empty()) j["name"] = names[c.index];
      j["elements"] = ids_json(sorted_ids(c.set));
      json sc = json::array();
      for (double v : c.score) sc.push_back(num(v));
      j["score"] = sc;
      a.push_back(j);
    }
    rep["medians"] = a;
    return rep;
  }
  if (f.kind == "tree") {
    if (inst.trees.empty()) throw Error("EmptyInput", "instance has no trees");
    std::vector<RootedTree> targets, cands;
    std::vector<std::string> names;
    for (const auto &t : inst.trees) targets.push_back(t.tree);
    const auto &pool = inst.tree_candidates.empty() ? inst.trees : inst.tree_candidates;
    for (const auto &t : pool) {
      cands.push_back(t.tree);
      names.push_back(t.name);
    }
    std::optional<std::vector<double>> w;
    auto method = method_of(f, inst, inst.options.tree_weights.empty() ? "pareto" : "scalar");
    if (method == "scalar") {
      if (inst.options.tree_weights.empty()) throw Error("MissingWeights", "scalar tree median needs options.tree_weights");
      w = inst.options.tree_weights;
    } else if (method != "pareto") {
      throw Error("BadArgument", "unknown tree consensus method '" + method + "'");
    }
    rep["method"] = method;
    json a = json::array();
    for (const auto &m : median_tree(cands, targets, w)) {
      json j;
      j["name"] = names[m.index];
      j["rho_A"] = num(m.totals[0]);
      j["rho_E"] = num(m.totals[1]);
      a.push_back(j);
    }
    rep["medians"] = a;
    auto k = tree_kernel(targets);
    json kj;
    kj["root"] = k.root();
    json edges = json::array();
    for (const auto &[p, c] : k.edges()) edges.push_back(json::array({p, c}));
    kj["edges"] = edges;
    rep["kernel"] = kj;
    return rep;
  }
  if (f.kind == "extended") {
    // Base is the set median unless the kernel mode asks for the common part.
    IdSet base;
    std::string base_mode = !f.kernel.empty() ? f.kernel : inst.options.kernel.value_or("median");
    if (base_mode != "median" && base_mode != "substructure")
      throw Error("BadKernelMode", "extended median base must be median or substructure");
    auto sets = target_sets(inst);
    if (!sets.empty()) {
      if (base_mode == "median") {
        base = set_median(sets).set;
      } else {
        base = sets.front();
        for (const auto &s : sets)
          for (auto it = base.begin(); it != base.end();) it = s.count(*it) ? std::next(it) : base.erase(it);
      }
    }
    double b = budget_of(f, inst);
    auto t = transform_of(f, inst);
    int k = scale_of(inst);
    auto method = method_of(f, inst, inst.groups.empty() ? "knapsack" : "mck");
    ExtendedMedian em;
    if (method == "knapsack") {
      em = extended_median(base, resolve_items(inst.items, k, t), b, KnapsackMethod::exact_dp, solver_options());
    } else if (method == "mck") {
      em = extended_median(base, resolve_groups(inst.groups, k, t), b, MckMethod::exact_dp, solver_options());
    } else {
      throw Error("BadArgument", "unknown extended median method '" + method + "'");
    }
    rep["method"] = method;
    rep["base_mode"] = base_mode;
    rep["budget"] = num(b);
    rep["base"] = ids_json(sorted_ids(base));
    rep["added"] = ids_json(em.added);
    rep["elements"] = ids_json(sorted_ids(em.set));
    rep["value"] = num(em.value);
    rep["weight"] = num(em.weight);
    return rep;
  }
  if (f.kind == "structure") {
    if (inst.structures.empty()) throw Error("EmptyInput", "instance has no structures");
    std::vector<MorphStructure> ss;
    for (const auto &s : inst.structures) ss.push_back(s.structure);
    auto agg = aggregate_rankings_per_part(ss);
    json parts = json::object();
    for (const auto &part : agg.morphology.parts) {
      json p = json::object();
      for (const auto &a : agg.morphology.alternatives.at(part)) p[a.id] = a.priority;
      parts[part] = p;
    }
    rep["priorities"] = parts;
    json comp = json::array();
    for (const auto &[pair, v] : agg.compatibility.entries()) comp.push_back(json::array({pair.first, pair.second, v}));
    rep["compatibility"] = comp;
    return rep;
  }
  throw Error("BadArgument", "unknown consensus kind '" + f.kind + "'");
}

json cmd_solve(const InstanceFile &inst, const Flags &f) {
  json rep;
  rep["problem"] = f.kind;
  auto opts = solver_options();
  auto t = transform_of(f, inst);
  int k = scale_of(inst);
  if (f.kind == "knapsack") {
    double b = budget_of(f, inst);
    auto r = knapsack_max(resolve_items(inst.items, k, t), b, knapsack_method(method_of(f, inst, "exact_dp")), opts);
    merge(rep, knapsack_json(r, b));
    return rep;
  }
  if (f.kind == "mincover") {
    double b = budget_of(f, inst);
    auto r = knapsack_min_cover(resolve_items(inst.items, k, t), b, opts);
    merge(rep, knapsack_json(r, b));
    return rep;
  }
  if (f.kind == "clique" || f.kind == "maxclique") {
    if (!inst.compatibility_matrix) throw Error("MissingMatrix", "instance has no pools.compatibility_matrix");
    const auto &m = *inst.compatibility_matrix;
    if (f.kind == "maxclique") {
      json ids = json::array();
      for (auto i : max_clique(m.rows)) ids.push_back(m.ids[i]);
      rep["items"] = ids;
      rep["count"] = ids.size();
      return rep;
    }
    auto items = resolve_items(inst.items, k, t);
    std::vector<KnapsackItem> ordered;
    for (const auto &id : m.ids) {
      auto it = std::find_if(items.begin(), items.end(), [&](const auto &x) { return x.id == id; });
      if (it == items.end()) throw Error("UnknownItem", "matrix id " + id + " has no pool item");
      ordered.push_back(*it);
    }
    double b = budget_of(f, inst);
    auto r = profit_clique(ordered, m.rows, b, clique_method(method_of(f, inst, "exact")));
    merge(rep, knapsack_json(r, b));
    return rep;
  }
  if (f.kind == "mck") {
    double b = budget_of(f, inst);
    auto r = multiple_choice_knapsack(resolve_groups(inst.groups, k, t), b,
                                      mck_method(method_of(f, inst, "exact_dp")), opts);
    rep["method"] = r.method;
    rep["budget"] = num(b);
    json picks = json::array();
    for (const auto &p : r.picks) {
      json j;
      j["group"] = p.group;
      j["item"] = p.item.empty() ? json(nullptr) : json(p.item);
      picks.push_back(j);
    }
    rep["picks"] = picks;
    rep["items"] = ids_json(r.ids());
    rep["value"] = num(r.value);
    rep["weight"] = num(r.weight);
    return rep;
  }
  if (f.kind == "hmmd") {
    const auto &ms = structure_of(inst);
    rep["frontier"] = frontier_json(ms, hmmd_compose(ms));
    return rep;
  }
  throw Error("BadArgument", "unknown problem '" + f.kind + "'");
}

json cmd_aggregate(const InstanceFile &inst, const Flags &f) {
  auto opts = solver_options();
  StrategyReport r;
  const MorphStructure &ms = structure_of(inst);
  switch (f.strategy) {
    case 1:
      r = strategy_extension(inst.family(), kernel_mode_of(f, inst),
                             resolve_groups(inst.groups, ms.priority_scale, transform_of(f, inst)),
                             budget_of(f, inst), mck_method(method_of(f, inst, "exact_dp")), opts);
      break;
    case 2:
      r = strategy_compression(inst.family(), resolve_items(inst.items, ms.priority_scale, transform_of(f, inst)),
                               budget_of(f, inst), opts);
      break;
    case 3:
      r = strategy_combined(inst.family(), kernel_mode_of(f, inst), inst.ops, budget_of(f, inst),
                            transform_of(f, inst), mck_method(method_of(f, inst, "exact_dp")), opts);
      break;
    case 4:
      r = strategy_design(ms);
      break;
    default:
      throw Error("BadArgument", "strategy must be 1, 2, 3 or 4");
  }
  json rep;
  rep["strategy"] = r.strategy;
  rep["method"] = r.method;
  if (f.strategy != 4) {
    rep["kernel_mode"] = r.kernel_mode;
    rep["kernel"] = ids_json(ordered_elements(ms, r.kernel));
    rep["budget"] = num(r.budget);
  }
  if (f.strategy == 2) rep["superstructure"] = superstructure_json(ms, r.superstructure);
  if (f.strategy != 4) rep["chosen"] = ids_json(r.chosen);
  rep["result"] = ids_json(ordered_elements(ms, r.result));
  if (f.strategy != 4) {
    rep["value"] = num(r.value);
    rep["cost"] = num(r.cost);
  } else {
    rep["frontier"] = frontier_json(ms, r.frontier);
  }
  rep["warnings"] = ids_json(r.warnings);
  return rep;
}

// --- table rendering ---------------------------------------------------------

std::string scalar_text(const json &j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

void flatten(const json &j, const std::string &prefix, std::vector<std::pair<std::string, std::string>> &rows) {
  if (j.is_object()) {
    if (j.empty()) rows.emplace_back(prefix, "{}");
    for (const auto &[k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    return;
  }
  if (j.is_array()) {
    bool flat = std::all_of(j.begin(), j.end(), [](const json &x) { return x.is_primitive(); });
    if (flat) {
      std::string s;
      for (std::size_t i = 0; i < j.size(); ++i) s += (i ? " " : "") + scalar_text(j[i]);
      rows.emplace_back(prefix, s.empty() ? "-" : s);
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    return;
  }
  rows.emplace_back(prefix, scalar_text(j));
}

std::string render_table(const json &rep) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(rep, "", rows);
  std::size_t width = 0;
  for (const auto &r : rows) width = std::max(width, r.first.size());
  std::ostringstream os;
  for (const auto &[k, v] : rows) os << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << "\n";
  return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Flags f;
  CLI::App app{"Aggregation of modular design solutions", "morphoagg"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--budget", f.budget, "Resource budget b");
  app.add_option("--alpha", f.alpha, "Kernel frequency threshold");
  app.add_option("--method", f.method, "Solver or consensus method");
  app.add_option("--transform", f.transform, "Priority to value transform: default | offset:K");
  app.add_option("--kernel", f.kernel, "Kernel mode: substructure | alpha:A | best | given");
  app.add_option("--layers", f.layers, "Layer count for ranking consensus");
  app.add_option("--output", f.output, "Report format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--seed", f.seed, "Not supported");

  auto *metrics = app.add_subcommand("metrics", "Proximities between the instance's structures");
  auto *kernel = app.add_subcommand("kernel", "System kernel of the initial solutions");
  auto *superset = app.add_subcommand("superset", "Superstructure of the initial solutions");
  auto *consensus = app.add_subcommand("consensus", "Median and consensus procedures");
  consensus->add_option("kind", f.kind, "ranking | set | tree | extended | structure")
      ->required()
      ->check(CLI::IsMember({"ranking", "set", "tree", "extended", "structure"}));
  auto *solve = app.add_subcommand("solve", "Run one combinatorial solver");
  solve->add_option("problem", f.kind, "knapsack | mincover | clique | maxclique | mck | hmmd")
      ->required()
      ->check(CLI::IsMember({"knapsack", "mincover", "clique", "maxclique", "mck", "hmmd"}));
  auto *aggregate = app.add_subcommand("aggregate", "Run an aggregation strategy");
  aggregate->add_option("--strategy", f.strategy, "1 extension, 2 compression, 3 combined, 4 new design")
      ->required()
      ->check(CLI::Range(1, 4));
  for (auto *sub : {metrics, kernel, superset, consensus, solve, aggregate})
    sub->add_option("file", f.file, "Instance file (JSON)")->required();

  std::vector<std::string> argv_store = args;
  std::vector<char *> argv;
  for (auto &a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  if (app.count("--seed")) {
    err << "error: --seed is not supported; every algorithm here is deterministic\n";
    return 1;
  }

  try {
    auto inst = parse_instance(f.file);
    json rep;
    std::string command;
    json body;
    if (metrics->parsed()) {
      command = "metrics";
      body = cmd_metrics(inst);
    } else if (kernel->parsed()) {
      command = "kernel";
      body = cmd_kernel(inst, f);
    } else if (superset->parsed()) {
      command = "superset";
      body = cmd_superset(inst);
    } else if (consensus->parsed()) {
      command = "consensus";
      body = cmd_consensus(inst, f);
    } else if (solve->parsed()) {
      command = "solve";
      body = cmd_solve(inst, f);
    } else {
      command = "aggregate";
      body = cmd_aggregate(inst, f);
    }
    rep["command"] = command;
    rep["instance"] = inst.name;
    merge(rep, body);
    if (f.output == "table") out << render_table(rep);
    else out << rep.dump(2) << "\n";
    return 0;
  } catch (const InstanceError &e) {
    err << "error: " << e.kind() << " (" << e.code() << "): " << e.what() << "\n";
    return 1;
  } catch (const Error &e) {
    err << "error: " << e.code() << ": " << e.what() << "\n";
    return e.infeasible() ? 2 : 1;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace morphoagg
