#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "morphoagg/core.hpp"
#include "morphoagg/metrics.hpp"
#include "morphoagg/solvers.hpp"

namespace morphoagg {

using SetMetric = std::function<double(const IdSet &, const IdSet &)>;
// Score of one candidate against all targets, one component per criterion.
using VectorSetMetric =
    std::function<std::vector<double>(const IdSet &candidate, const std::vector<IdSet> &targets)>;

struct CandidateDomain {
  std::vector<IdSet> candidates;
  std::optional<IdSet> universe;  // power set of this, when allowed
  bool allow_power_set = false;
  std::size_t cap = std::size_t{1} << 20;

  std::vector<IdSet> enumerate() const;
};

struct MedianCandidate {
  std::size_t index = 0;  // position in the enumerated domain
  IdSet set;
  std::vector<double> score;
};

MedianCandidate set_median(const std::vector<IdSet> &targets,
                           const SetMetric &metric = set_proximity_elements);

// Scalar metric: every minimizer of the total distance.
std::vector<MedianCandidate> generalized_median(const CandidateDomain &domain,
                                                const std::vector<IdSet> &targets,
                                                const SetMetric &metric = set_proximity_elements);

// Vector metric: Pareto-efficient candidates (all components minimized).
std::vector<MedianCandidate> generalized_median(const CandidateDomain &domain,
                                                const std::vector<IdSet> &targets,
                                                const VectorSetMetric &metric);

// Component i compares the candidate with target i under weight criterion i.
VectorSetMetric per_target_weighted(const WeightedSet &w);

struct ExtendedMedian {
  IdSet set;
  std::vector<Id> added;
  double value = 0.0;
  double weight = 0.0;
  std::string method;
};

ExtendedMedian extended_median(const IdSet &base, const std::vector<KnapsackItem> &pool, double b,
                               KnapsackMethod method = KnapsackMethod::exact_dp,
                               const SolverOptions &opts = {});
// Pool split into exclusive version groups (at most one item per group).
ExtendedMedian extended_median(const IdSet &base, const std::vector<ChoiceGroup> &pool, double b,
                               MckMethod method = MckMethod::exact_dp,
                               const SolverOptions &opts = {});

LayeredRanking consensus_ranking_assignment(const std::vector<LayeredRanking> &rankings, int m,
                                            bool compact = false);
LayeredRanking consensus_ranking_rounding(const std::vector<LayeredRanking> &rankings,
                                          bool compact = false);

struct TreeMedian {
  std::size_t index = 0;
  std::vector<double> totals;  // summed (rho_A, rho_E)
};

// With weights: minimizers of the weighted sum. Without: Pareto set of sums.
std::vector<TreeMedian> median_tree(const std::vector<RootedTree> &candidates,
                                    const std::vector<RootedTree> &targets,
                                    const std::optional<std::vector<double>> &weights = std::nullopt);

// Union of edges shared by consecutive targets, rooted at the first root.
RootedTree tree_kernel(const std::vector<RootedTree> &targets);

}  // namespace morphoagg
