#include <algorithm>
#include <limits>
#include <numeric>

#include "morphoagg/solvers.hpp"

namespace morphoagg {

namespace {

constexpr double kEps = 1e-9;

void check_square(const CompatMatrix &m, std::size_t n) {
  if (m.size() != n) throw Error("DimensionMismatch", "compatibility matrix size differs from item count");
  for (const auto &row : m)
    if (row.size() != n) throw Error("DimensionMismatch", "compatibility matrix is not square");
}

bool linked(const CompatMatrix &m, std::size_t i, std::size_t j) {
  return i == j || (m[i][j] != 0 && m[j][i] != 0);
}

std::vector<Id> sorted_ids_of(const std::vector<KnapsackItem> &items, const std::vector<std::size_t> &sel) {
  std::vector<Id> out;
  for (auto i : sel) out.push_back(items[i].id);
  std::sort(out.begin(), out.end(), id_less);
  return out;
}

}  // namespace

CompatMatrix symmetrize(const CompatMatrix &m) {
  CompatMatrix out = m;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      out[i][j] = (i == j) ? 0 : ((m[i][j] != 0 && m[j][i] != 0) ? 1 : 0);
  return out;
}

KnapsackResult profit_clique(const std::vector<KnapsackItem> &items, const CompatMatrix &compat,
                             double b, CliqueMethod method) {
  std::size_t n = items.size();
  check_square(compat, n);
  if (b < 0) throw Error("NegativeBudget", "budget must be non-negative");

  std::vector<std::size_t> chosen;
  if (method == CliqueMethod::greedy) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto density = [&](std::size_t i) {
      return items[i].weight <= 0 ? std::numeric_limits<double>::infinity()
                                  : items[i].value / items[i].weight;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
      if (density(a) != density(c)) return density(a) > density(c);
      return id_less(items[a].id, items[c].id);
    });
    double load = 0;
    for (auto i : order) {
      if (items[i].value <= 0 || load + items[i].weight > b + kEps) continue;
      bool ok = std::all_of(chosen.begin(), chosen.end(), [&](std::size_t j) { return linked(compat, i, j); });
      if (!ok) continue;
      chosen.push_back(i);
      load += items[i].weight;
    }
  } else {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t c) { return id_less(items[a].id, items[c].id); });
    std::vector<std::size_t> cur, best;
    double best_v = 0, best_w = 0;
    auto improves = [&](double v, double w) {
      if (v > best_v + kEps) return true;
      if (v < best_v - kEps) return false;
      if (w < best_w - kEps) return true;
      if (w > best_w + kEps) return false;
      auto a = sorted_ids_of(items, cur), c = sorted_ids_of(items, best);
      return std::lexicographical_compare(a.begin(), a.end(), c.begin(), c.end(), id_less);
    };
    auto dfs = [&](auto &&self, const std::vector<std::size_t> &cand, double v, double w) -> void {
      if (improves(v, w)) {
        best = cur;
        best_v = v;
        best_w = w;
      }
      double bound = v;
      for (auto i : cand) bound += std::max(0.0, items[i].value);
      if (bound < best_v - kEps) return;
      for (std::size_t k = 0; k < cand.size(); ++k) {
        std::size_t i = cand[k];
        if (w + items[i].weight > b + kEps) continue;
        std::vector<std::size_t> next;
        for (std::size_t t = k + 1; t < cand.size(); ++t)
          if (linked(compat, i, cand[t])) next.push_back(cand[t]);
        cur.push_back(i);
        self(self, next, v + items[i].value, w + items[i].weight);
        cur.pop_back();
      }
    };
    dfs(dfs, order, 0.0, 0.0);
    chosen = best;
  }

  std::sort(chosen.begin(), chosen.end());
  KnapsackResult r;
  r.method = method == CliqueMethod::greedy ? "greedy" : "exact";
  for (auto i : chosen) {
    r.ids.push_back(items[i].id);
    r.value += items[i].value;
    r.weight += items[i].weight;
  }
  return r;
}

std::vector<std::size_t> max_clique(const CompatMatrix &compat) {
  std::size_t n = compat.size();
  check_square(compat, n);
  std::vector<std::size_t> cur, best;
  auto dfs = [&](auto &&self, const std::vector<std::size_t> &cand) -> void {
    if (cur.size() > best.size()) best = cur;
    if (cur.size() + cand.size() <= best.size()) return;
    for (std::size_t k = 0; k < cand.size(); ++k) {
      if (cur.size() + (cand.size() - k) <= best.size()) return;
      std::vector<std::size_t> next;
      for (std::size_t t = k + 1; t < cand.size(); ++t)
        if (linked(compat, cand[k], cand[t])) next.push_back(cand[t]);
      cur.push_back(cand[k]);
      self(self, next);
      cur.pop_back();
    }
  };
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  dfs(dfs, all);
  return best;
}

}  // namespace morphoagg
