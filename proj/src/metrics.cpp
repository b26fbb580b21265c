#include "morphoagg/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace morphoagg {

namespace {

int sign(int v) { return (v > 0) - (v < 0); }

void require_same_universe(const LayeredRanking &a, const LayeredRanking &b) {
  if (a.universe() != b.universe())
    throw Error("UniverseMismatch", "rankings are defined over different element sets");
}

std::vector<double> dense(const std::map<int, double> &v, int span) {
  std::vector<double> out;
  for (int r = -span; r <= span; ++r) {
    if (r == 0) continue;
    auto it = v.find(r);
    out.push_back(it == v.end() ? 0.0 : it->second);
  }
  return out;
}

double sum_values(const std::map<int, double> &v) {
  double s = 0;
  for (const auto &kv : v) s += kv.second;
  return s;
}

}  // namespace

double ProximityVector::at(const std::string &label) const {
  for (const auto &[l, v] : components)
    if (l == label) return v;
  throw Error("UnknownComponent", "no proximity component " + label);
}

std::vector<double> ProximityVector::values() const {
  std::vector<double> out;
  for (const auto &c : components) out.push_back(c.second);
  return out;
}

std::vector<double> ErrorVectors::x_dense() const { return dense(x, m - 1); }
std::vector<double> ErrorVectors::y_dense() const { return dense(y, 2 * (m - 1)); }
double ErrorVectors::x_module() const { return sum_values(x); }
double ErrorVectors::y_module() const { return sum_values(y); }

// ---------------------------------------------------------------------------

double set_proximity_elements(const IdSet &a, const IdSet &b) {
  std::size_t common = 0;
  for (const auto &e : a) common += b.count(e);
  std::size_t uni = a.size() + b.size() - common;
  if (uni == 0) throw Error("EmptyUnion", "both sets are empty");
  return 1.0 - static_cast<double>(common) / static_cast<double>(uni);
}

double set_proximity_weighted(const IdSet &a, const IdSet &b, const WeightedSet &w,
                              std::size_t criterion) {
  double inter = 0, uni = 0;
  for (const auto &e : a) {
    double x = w.weight(e, criterion);
    uni += x;
    if (b.count(e)) inter += x;
  }
  for (const auto &e : b)
    if (!a.count(e)) uni += w.weight(e, criterion);
  if (uni <= 0) throw Error("ZeroWeightUnion", "union carries no weight");
  return 1.0 - inter / uni;
}

std::vector<double> set_proximity_weighted_vector(const IdSet &a, const IdSet &b,
                                                  const WeightedSet &w) {
  std::vector<double> out;
  for (std::size_t k = 0; k < w.criteria(); ++k)
    out.push_back(set_proximity_weighted(a, b, w, k));
  return out;
}

// ---------------------------------------------------------------------------

long kendall_tau(const LayeredRanking &s1, const LayeredRanking &s2) {
  require_same_universe(s1, s2);
  std::vector<int> p1, p2;
  for (const auto &[e, k] : s1.priorities()) {
    p1.push_back(k);
    p2.push_back(s2.priority(e));
  }
  long total = 0;
  for (std::size_t i = 0; i < p1.size(); ++i)
    for (std::size_t j = i + 1; j < p1.size(); ++j)
      total += std::abs(sign(p1[j] - p1[i]) - sign(p2[j] - p2[i]));
  return total;
}

double kendall_tau_normalized(const LayeredRanking &s1, const LayeredRanking &s2) {
  require_same_universe(s1, s2);
  auto n = static_cast<double>(s1.size());
  if (s1.size() < 2) throw Error("TooSmall", "normalized distance needs at least two elements");
  return static_cast<double>(kendall_tau(s1, s2)) / (n * (n - 1));
}

ErrorVectors vector_proximity(const LayeredRanking &s1, const LayeredRanking &s2,
                              const VectorOptions &opts) {
  require_same_universe(s1, s2);
  ErrorVectors ev;
  ev.m = std::max(s1.depth(), s2.depth());
  auto order = sorted_ids(s1.universe());
  ev.n = order.size();
  std::vector<int> d;
  for (const auto &e : order) d.push_back(s1.priority(e) - s2.priority(e));
  for (int v : d)
    if (v != 0) ev.x[v] += 1;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      int v = d[i] - d[j];
      if (v != 0) ev.y[v] += 1;
    }
  if (opts.normalize && ev.n > 0) {
    double n = static_cast<double>(ev.n);
    for (auto &kv : ev.x) kv.second /= n;
    if (ev.n > 1)
      for (auto &kv : ev.y) kv.second *= 2.0 / (n * (n - 1));
    ev.normalized = true;
  }
  return ev;
}

double aggregate_component(const std::map<int, double> &v, int k1, int k2) {
  double s = 0;
  for (const auto &[r, c] : v)
    if (r >= k1 && r <= k2) s += c;
  return s;
}

std::map<int, double> modular_components(const std::map<int, double> &v) {
  std::map<int, double> out;
  for (const auto &[r, c] : v) out[std::abs(r)] += c;
  return out;
}

std::map<int, double> truncated(const std::map<int, double> &v, int k1, int k2) {
  std::map<int, double> out;
  for (const auto &[r, c] : v)
    if (r >= -k1 && r <= k2) out[r] = c;
  return out;
}

bool error_vector_dominates(const std::map<int, double> &x1, const std::map<int, double> &x2) {
  constexpr double eps = 1e-12;
  int top = 0;
  for (const auto &kv : x1) top = std::max(top, std::abs(kv.first));
  for (const auto &kv : x2) top = std::max(top, std::abs(kv.first));
  for (int u = 1; u <= top; ++u) {
    double up = aggregate_component(x1, u, top) - aggregate_component(x2, u, top);
    double down = aggregate_component(x1, -top, -u) - aggregate_component(x2, -top, -u);
    if (up < -eps || down < -eps) return false;
  }
  return true;
}

bool error_vector_dominates(const ErrorVectors &x1, const ErrorVectors &x2) {
  if (x1.m != x2.m || x1.normalized != x2.normalized)
    throw Error("DomainMismatch", "error vectors live on different component domains");
  return error_vector_dominates(x1.x, x2.x);
}

// ---------------------------------------------------------------------------

DominanceMatrix dominance_matrix(const RootedTree &t, const std::vector<Id> &nodes) {
  DominanceMatrix dm;
  dm.nodes = nodes;
  for (const auto &n : nodes)
    if (!t.contains(n)) throw Error("UnknownNode", "node " + n + " is not in the tree");
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      Dominance d = Dominance::independent;
      if (t.is_ancestor(nodes[i], nodes[j])) d = Dominance::ancestor;
      else if (t.is_ancestor(nodes[j], nodes[i])) d = Dominance::descendant;
      dm.cells[{i, j}] = d;
    }
  return dm;
}

ProximityVector tree_proximity(const RootedTree &t1, const RootedTree &t2) {
  IdSet n1 = t1.nodes(), n2 = t2.nodes();
  double rho_a = set_proximity_elements(n1, n2);
  IdSet common;
  for (const auto &n : n1)
    if (n2.count(n)) common.insert(n);
  auto order = sorted_ids(common);
  double rho_e = 0.0;
  if (order.size() >= 2) {
    auto d1 = dominance_matrix(t1, order), d2 = dominance_matrix(t2, order);
    std::size_t changed = 0;
    for (const auto &[key, v] : d1.cells)
      if (d2.cells.at(key) != v) ++changed;
    rho_e = static_cast<double>(changed) / static_cast<double>(d1.cells.size());
  }
  return {{{"rho_A", rho_a}, {"rho_E", rho_e}}};
}

LayeredRanking part_ranking(const MorphStructure &ms, const Id &part) {
  auto it = ms.morphology.alternatives.find(part);
  if (it == ms.morphology.alternatives.end())
    throw Error("UnknownPart", "part " + part + " is not in the morphology");
  std::map<Id, int> p;
  for (const auto &a : it->second) p[a.id] = a.priority;
  return LayeredRanking(std::move(p));
}

ProximityVector morph_proximity(const MorphStructure &l1, const MorphStructure &l2) {
  IdSet parts1, parts2;
  for (const auto &kv : l1.leaf_parts) parts1.insert(kv.second);
  for (const auto &kv : l2.leaf_parts) parts2.insert(kv.second);
  std::vector<Id> common;
  for (const auto &p : sorted_ids(parts1))
    if (parts2.count(p)) common.push_back(p);
  if (common.empty()) throw Error("NoCommonLeaves", "structures share no leaf part");

  auto tp = tree_proximity(l1.tree, l2.tree);
  double total = 0;
  for (const auto &part : common) {
    auto r1 = part_ranking(l1, part), r2 = part_ranking(l2, part);
    IdSet shared;
    for (const auto &e : r1.universe())
      if (r2.contains(e)) shared.insert(e);
    if (shared.size() < 2) continue;
    total += kendall_tau_normalized(r1.restricted(shared), r2.restricted(shared));
  }
  tp.components.emplace_back("rho_r", total / static_cast<double>(common.size()));
  return tp;
}

}  // namespace morphoagg
