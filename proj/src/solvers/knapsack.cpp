#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "morphoagg/solvers.hpp"

namespace morphoagg {

namespace {

constexpr double kEps = 1e-9;
constexpr std::size_t kMaxCells = 60'000'000;

long long quantize_up(double w, double q) {
  return static_cast<long long>(std::ceil(w / q - 1e-9));
}

long long quantize_down(double w, double q) {
  return static_cast<long long>(std::floor(w / q + 1e-9));
}

struct Option {
  double value;
  long long wq;
  int index;  // -1: take nothing
};

struct Cell {
  double value = -std::numeric_limits<double>::infinity();
  long long wq = 0;
  bool feasible() const { return std::isfinite(value); }
};

// Prefer larger value, then smaller (or larger, when asked) quantized weight.
bool better(const Cell &a, const Cell &b, bool heavier) {
  if (!b.feasible()) return a.feasible();
  if (!a.feasible()) return false;
  if (a.value > b.value + kEps) return true;
  if (a.value < b.value - kEps) return false;
  return heavier ? a.wq > b.wq : a.wq < b.wq;
}

// One option per group, capacity in quantized units. Returns the chosen
// option position per group; ties go to the earliest option in each group,
// earliest group first.
std::optional<std::vector<std::size_t>> choice_dp(const std::vector<std::vector<Option>> &groups,
                                                  long long cap, bool heavier = false) {
  if (cap < 0) return std::nullopt;
  std::size_t g_count = groups.size();
  auto width = static_cast<std::size_t>(cap) + 1;
  if ((g_count + 1) * width > kMaxCells)
    throw Error("TooLarge", "DP table too large; raise MORPHOAGG_QUANTUM or use a heuristic");
  std::vector<std::vector<Cell>> f(g_count + 1, std::vector<Cell>(width));
  for (auto &c : f[g_count]) c = Cell{0.0, 0};
  for (std::size_t g = g_count; g-- > 0;) {
    for (std::size_t c = 0; c < width; ++c) {
      Cell best;
      for (const auto &o : groups[g]) {
        if (o.wq > static_cast<long long>(c)) continue;
        const Cell &rest = f[g + 1][c - static_cast<std::size_t>(o.wq)];
        if (!rest.feasible()) continue;
        Cell cand{o.value + rest.value, o.wq + rest.wq};
        if (better(cand, best, heavier)) best = cand;
      }
      f[g][c] = best;
    }
  }
  if (!f[0][width - 1].feasible()) return std::nullopt;

  std::vector<std::size_t> pick;
  auto c = static_cast<long long>(width - 1);
  Cell target = f[0][width - 1];
  for (std::size_t g = 0; g < g_count; ++g) {
    bool found = false;
    for (std::size_t k = 0; k < groups[g].size(); ++k) {
      const auto &o = groups[g][k];
      if (o.wq > c) continue;
      const Cell &rest = f[g + 1][static_cast<std::size_t>(c - o.wq)];
      if (!rest.feasible()) continue;
      if (std::abs(o.value + rest.value - target.value) <= kEps * 10 &&
          o.wq + rest.wq == target.wq) {
        pick.push_back(k);
        c -= o.wq;
        target = rest;
        found = true;
        break;
      }
    }
    if (!found) throw Error("Internal", "DP reconstruction failed");
  }
  return pick;
}

std::vector<std::size_t> id_order(const std::vector<KnapsackItem> &items) {
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return id_less(items[a].id, items[b].id); });
  return order;
}

double density(const KnapsackItem &it) {
  if (it.weight <= 0) return std::numeric_limits<double>::infinity();
  return it.value / it.weight;
}

std::vector<std::size_t> density_order(const std::vector<KnapsackItem> &items) {
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    double da = density(items[a]), db = density(items[b]);
    if (da != db) return da > db;
    return id_less(items[a].id, items[b].id);
  });
  return order;
}

KnapsackResult make_result(const std::vector<KnapsackItem> &items, std::vector<bool> chosen,
                           const char *method) {
  KnapsackResult r;
  r.method = method;
  for (std::size_t i = 0; i < items.size(); ++i)
    if (chosen[i]) {
      r.ids.push_back(items[i].id);
      r.value += items[i].value;
      r.weight += items[i].weight;
    }
  return r;
}

bool fits_extra(const std::vector<KnapsackItem> &items, const std::vector<bool> &chosen,
                std::size_t add, const std::vector<double> &budgets) {
  for (std::size_t k = 0; k < budgets.size(); ++k) {
    double s = 0;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (chosen[i] || i == add)
        s += k < items[i].extra_weights.size() ? items[i].extra_weights[k] : 0.0;
    if (s > budgets[k] + kEps) return false;
  }
  return true;
}

// Full result order: value desc, weight asc, sorted id list ascending.
bool result_better(const std::vector<KnapsackItem> &items, double v, double w,
                   const std::vector<bool> &sel, double bv, double bw,
                   const std::vector<bool> &bsel) {
  if (v > bv + kEps) return true;
  if (v < bv - kEps) return false;
  if (w < bw - kEps) return true;
  if (w > bw + kEps) return false;
  auto ids = [&](const std::vector<bool> &s) {
    std::vector<Id> out;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (s[i]) out.push_back(items[i].id);
    std::sort(out.begin(), out.end(), id_less);
    return out;
  };
  auto a = ids(sel), b = ids(bsel);
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), id_less);
}

KnapsackResult knapsack_branch_bound(const std::vector<KnapsackItem> &items, double b,
                                     const std::vector<double> &budgets) {
  auto order = density_order(items);
  std::size_t n = items.size();
  std::vector<bool> cur(n, false), best(n, false);
  double best_v = 0, best_w = 0;

  auto bound = [&](std::size_t pos, double v, double room) {
    for (std::size_t k = pos; k < n && room > 0; ++k) {
      const auto &it = items[order[k]];
      if (it.value <= 0) continue;
      if (it.weight <= room) {
        v += it.value;
        room -= it.weight;
      } else {
        v += it.value * room / it.weight;
        room = 0;
      }
    }
    return v;
  };

  auto dfs = [&](auto &&self, std::size_t pos, double v, double w) -> void {
    if (result_better(items, v, w, cur, best_v, best_w, best)) {
      best = cur;
      best_v = v;
      best_w = w;
    }
    if (pos == n) return;
    if (bound(pos, v, b - w) < best_v - kEps) return;
    std::size_t i = order[pos];
    if (w + items[i].weight <= b + kEps && fits_extra(items, cur, i, budgets)) {
      cur[i] = true;
      self(self, pos + 1, v + items[i].value, w + items[i].weight);
      cur[i] = false;
    }
    self(self, pos + 1, v, w);
  };
  dfs(dfs, 0, 0.0, 0.0);
  return make_result(items, best, "branch_bound");
}

}  // namespace

std::vector<Id> MckResult::ids() const {
  std::vector<Id> out;
  for (const auto &p : picks)
    if (!p.item.empty()) out.push_back(p.item);
  return out;
}

KnapsackResult knapsack_max(const std::vector<KnapsackItem> &items, double b,
                            KnapsackMethod method, const SolverOptions &opts,
                            const std::vector<double> &extra_budgets) {
  if (b < 0) throw Error("NegativeBudget", "budget must be non-negative");
  for (const auto &it : items)
    if (it.weight < 0) throw Error("NegativeWeight", "item " + it.id + " has negative weight");

  if (method == KnapsackMethod::greedy) {
    std::vector<bool> chosen(items.size(), false);
    double load = 0;
    for (auto i : density_order(items)) {
      if (items[i].value <= 0) continue;
      if (load + items[i].weight <= b + kEps && fits_extra(items, chosen, i, extra_budgets)) {
        chosen[i] = true;
        load += items[i].weight;
      }
    }
    return make_result(items, chosen, "greedy");
  }
  if (method == KnapsackMethod::branch_bound || !extra_budgets.empty())
    return knapsack_branch_bound(items, b, extra_budgets);

  double q = opts.quantum;
  auto order = id_order(items);
  std::vector<std::vector<Option>> groups;
  for (auto i : order)
    groups.push_back({Option{items[i].value, quantize_up(items[i].weight, q), static_cast<int>(i)},
                      Option{0.0, 0, -1}});
  auto pick = choice_dp(groups, quantize_down(b, q));
  std::vector<bool> chosen(items.size(), false);
  for (std::size_t g = 0; g < groups.size(); ++g)
    if ((*pick)[g] == 0) chosen[order[g]] = true;
  return make_result(items, chosen, "exact_dp");
}

KnapsackResult knapsack_min_cover(const std::vector<KnapsackItem> &items, double b,
                                  const SolverOptions &opts) {
  double total = 0;
  for (const auto &it : items) {
    if (it.weight < 0) throw Error("NegativeWeight", "item " + it.id + " has negative weight");
    total += it.weight;
  }
  if (total < b - kEps) throw Error("Uncoverable", "total weight cannot reach the required amount");
  std::vector<bool> chosen(items.size(), false);
  if (b <= 0) return make_result(items, chosen, "exact_dp");

  // Cover = complement of a max-value set that leaves at least b behind.
  double q = opts.quantum;
  auto order = id_order(items);
  long long total_q = 0;
  std::vector<long long> wq;
  for (const auto &it : items) wq.push_back(quantize_down(it.weight, q));
  for (auto w : wq) total_q += w;
  long long cap = total_q - quantize_up(b, q);
  std::vector<std::vector<Option>> groups;
  for (auto i : order)
    groups.push_back({Option{0.0, 0, -1}, Option{items[i].value, wq[i], static_cast<int>(i)}});
  auto pick = choice_dp(groups, cap, /*heavier=*/true);
  if (!pick) throw Error("Uncoverable", "no selection reaches the required amount on the weight grid");
  for (std::size_t g = 0; g < groups.size(); ++g)
    if ((*pick)[g] == 0) chosen[order[g]] = true;
  return make_result(items, chosen, "exact_dp");
}

MckResult multiple_choice_knapsack(const std::vector<ChoiceGroup> &groups, double b,
                                   MckMethod method, const SolverOptions &opts) {
  if (b < 0) throw Error("NegativeBudget", "budget must be non-negative");
  for (const auto &g : groups) {
    if (g.items.empty()) throw Error("EmptyGroup", "choice group " + g.id + " has no items");
    for (const auto &it : g.items)
      if (it.weight < 0) throw Error("NegativeWeight", "item " + it.id + " has negative weight");
  }
  MckResult r;
  r.method = method == MckMethod::greedy ? "greedy" : "exact_dp";

  if (method == MckMethod::greedy) {
    std::vector<double> reserve(groups.size() + 1, 0.0);
    for (std::size_t g = groups.size(); g-- > 0;) {
      double lightest = std::numeric_limits<double>::infinity();
      for (const auto &it : groups[g].items) lightest = std::min(lightest, it.weight);
      reserve[g] = reserve[g + 1] + (groups[g].mandatory ? lightest : 0.0);
    }
    if (reserve[0] > b + kEps) throw Error("Infeasible", "mandatory groups exceed the budget");
    double room = b;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      std::vector<const KnapsackItem *> ranked;
      for (const auto &it : groups[g].items) ranked.push_back(&it);
      std::stable_sort(ranked.begin(), ranked.end(), [](const auto *x, const auto *y) {
        if (std::abs(x->value - y->value) > kEps) return x->value > y->value;
        if (std::abs(x->weight - y->weight) > kEps) return x->weight < y->weight;
        return id_less(x->id, y->id);
      });
      const KnapsackItem *take = nullptr;
      for (const auto *it : ranked)
        if (it->weight <= room - reserve[g + 1] + kEps) {
          take = it;
          break;
        }
      if (!take && groups[g].mandatory)
        throw Error("Infeasible", "no affordable item in group " + groups[g].id);
      r.picks.push_back({groups[g].id, take ? take->id : Id{}});
      if (take) {
        room -= take->weight;
        r.value += take->value;
        r.weight += take->weight;
      }
    }
    return r;
  }

  double q = opts.quantum;
  std::vector<std::vector<Option>> opts_per_group;
  for (const auto &g : groups) {
    std::vector<Option> o;
    for (std::size_t k = 0; k < g.items.size(); ++k)
      o.push_back({g.items[k].value, quantize_up(g.items[k].weight, q), static_cast<int>(k)});
    if (!g.mandatory) o.push_back({0.0, 0, -1});
    opts_per_group.push_back(std::move(o));
  }
  auto pick = choice_dp(opts_per_group, quantize_down(b, q));
  if (!pick) throw Error("Infeasible", "mandatory groups exceed the budget");
  for (std::size_t g = 0; g < groups.size(); ++g) {
    int idx = opts_per_group[g][(*pick)[g]].index;
    if (idx < 0) {
      r.picks.push_back({groups[g].id, Id{}});
      continue;
    }
    const auto &it = groups[g].items[static_cast<std::size_t>(idx)];
    r.picks.push_back({groups[g].id, it.id});
    r.value += it.value;
    r.weight += it.weight;
  }
  return r;
}

}  // namespace morphoagg
