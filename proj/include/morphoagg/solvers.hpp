#pragma once

#include <functional>
#include <string>
#include <vector>

#include "morphoagg/core.hpp"

namespace morphoagg {

struct KnapsackItem {
  Id id;
  double value = 0.0;
  double weight = 0.0;
  std::vector<double> extra_weights;
  // Elements the item stands for (a composite deletion removes several DAs).
  // Empty means the item stands for itself.
  std::vector<Id> members;
  int priority = 0;  // 0: not declared

  std::vector<Id> covered() const { return members.empty() ? std::vector<Id>{id} : members; }
};

struct ChoiceGroup {
  Id id;
  std::vector<KnapsackItem> items;
  bool mandatory = true;
};

struct SolverOptions {
  double quantum = 0.01;  // weight grid for the DP methods
};

struct KnapsackResult {
  std::vector<Id> ids;  // in input order
  double value = 0.0;
  double weight = 0.0;
  std::string method;
};

struct MckPick {
  Id group;
  Id item;  // empty: nothing taken from an optional group
};

struct MckResult {
  std::vector<MckPick> picks;  // one per group, in group order
  double value = 0.0;
  double weight = 0.0;
  std::string method;

  std::vector<Id> ids() const;
};

enum class KnapsackMethod { exact_dp, branch_bound, greedy };
enum class CliqueMethod { exact, greedy };
enum class MckMethod { exact_dp, greedy };

using CompatMatrix = std::vector<std::vector<int>>;

KnapsackResult knapsack_max(const std::vector<KnapsackItem> &items, double b,
                            KnapsackMethod method = KnapsackMethod::exact_dp,
                            const SolverOptions &opts = {},
                            const std::vector<double> &extra_budgets = {});

KnapsackResult knapsack_min_cover(const std::vector<KnapsackItem> &items, double b,
                                  const SolverOptions &opts = {});

// AND of both directions; the diagonal is ignored.
CompatMatrix symmetrize(const CompatMatrix &m);

KnapsackResult profit_clique(const std::vector<KnapsackItem> &items, const CompatMatrix &compat,
                             double b, CliqueMethod method = CliqueMethod::exact);

// Indices of a maximum clique; lexicographically smallest among maxima.
std::vector<std::size_t> max_clique(const CompatMatrix &compat);

MckResult multiple_choice_knapsack(const std::vector<ChoiceGroup> &groups, double b,
                                   MckMethod method = MckMethod::exact_dp,
                                   const SolverOptions &opts = {});

struct ValueTransform {
  enum class Kind { standard, offset, custom };
  Kind kind = Kind::standard;
  double offset = 0.0;
  std::function<double(int r, int k)> fn;

  static ValueTransform parse(const std::string &spec);
  std::string str() const;
};

double priority_to_value(int r, int k, const ValueTransform &t = {});

enum class Sense { min, max };

bool dominates(const std::vector<double> &a, const std::vector<double> &b,
               const std::vector<Sense> &senses);
std::vector<std::size_t> pareto_filter(const std::vector<std::vector<double>> &points,
                                       const std::vector<Sense> &senses);

struct OutrankingParams {
  double concordance = 0.6;
  double veto = 2.0;
};

// scores[i][c]: ordinal score of alternative i on criterion c, larger is better.
LayeredRanking rank_outranking(const std::vector<Id> &alternatives,
                               const std::vector<std::vector<double>> &scores,
                               const std::vector<double> &weights,
                               const OutrankingParams &params = {});

struct QualityVector {
  int w = 0;
  std::vector<int> n;

  bool operator==(const QualityVector &) const = default;
};

struct HmmdEntry {
  CompositeSolution solution;
  QualityVector quality;
};

bool quality_dominates(const QualityVector &a, const QualityVector &b);
QualityVector quality_of(const MorphStructure &ms, const CompositeSolution &s);

HmmdEntry make_hmmd_entry(const MorphStructure &ms, const std::vector<Id> &das);

std::vector<HmmdEntry> hmmd_compose(const MorphStructure &ms,
                                    std::size_t max_compositions = 1'000'000);

}  // namespace morphoagg
