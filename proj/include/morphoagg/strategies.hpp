#pragma once

#include <string>
#include <vector>

#include "morphoagg/builders.hpp"
#include "morphoagg/solvers.hpp"

namespace morphoagg {

struct KernelMode {
  enum class Kind { substructure, alpha, best, given };
  Kind kind = Kind::substructure;
  double alpha = 1.0;
  std::vector<Id> parts;     // for best
  std::vector<Id> elements;  // for given

  static KernelMode parse(const std::string &name);
  std::string str() const;
};

PartialSelection build_kernel(const SolutionFamily &family, const KernelMode &mode);

struct ModificationOp {
  enum class Kind { add, remove, replace, none };
  Kind kind = Kind::none;
  Id group;
  Id da;      // add / remove target, replace: new DA
  Id old_da;  // replace only
  double cost = 0.0;
  int priority = 1;

  std::string label() const;
};

struct StrategyReport {
  std::string strategy;
  std::string kernel_mode;
  PartialSelection kernel;
  Superstructure superstructure;
  std::string method;
  double budget = 0.0;
  std::vector<std::string> chosen;
  Selection result;
  double value = 0.0;
  double cost = 0.0;
  std::vector<HmmdEntry> frontier;
  std::vector<std::string> warnings;
};

StrategyReport strategy_extension(const SolutionFamily &family, const KernelMode &kernel_mode,
                                  const std::vector<ChoiceGroup> &additions, double b,
                                  MckMethod method = MckMethod::exact_dp,
                                  const SolverOptions &opts = {});

StrategyReport strategy_compression(const SolutionFamily &family,
                                    const std::vector<KnapsackItem> &deletions, double b,
                                    const SolverOptions &opts = {});

// Superstructure with the covered DAs of the given deletion items removed.
Selection apply_deletions(const Superstructure &super, const std::vector<KnapsackItem> &deletions,
                          const std::vector<Id> &chosen);

StrategyReport strategy_combined(const SolutionFamily &family, const KernelMode &kernel_mode,
                                 const std::vector<ModificationOp> &ops, double b,
                                 const ValueTransform &transform = {},
                                 MckMethod method = MckMethod::exact_dp,
                                 const SolverOptions &opts = {});

// Applies ops to a kernel in the order add, replace, remove.
Selection apply_ops(const MorphStructure &ms, const PartialSelection &kernel,
                    const std::vector<ModificationOp> &ops);

StrategyReport strategy_design(const MorphStructure &ms);

MorphStructure aggregate_rankings_per_part(const std::vector<MorphStructure> &structures);

}  // namespace morphoagg
