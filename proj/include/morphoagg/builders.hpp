#pragma once

#include <map>
#include <vector>

#include "morphoagg/core.hpp"

namespace morphoagg {

struct NamedSolution {
  Id name;
  Selection selection;
};

struct SolutionFamily {
  MorphStructure structure;
  std::vector<NamedSolution> solutions;

  std::vector<Diagnostic> validate() const;
};

// part -> DAs in declared order
using Superstructure = std::map<Id, std::vector<Id>>;

enum class AggregateOp { min, max };

PartialSelection substructure(const SolutionFamily &family);
Superstructure superstructure(const SolutionFamily &family);
PartialSelection kernel_alpha(const SolutionFamily &family, double alpha);
PartialSelection kernel_best(const MorphStructure &structure, const std::vector<Id> &parts);

// Number of solutions containing each DA.
std::map<Id, int> element_frequency(const SolutionFamily &family);

CompatibilityTable aggregate_compatibility(const std::vector<CompatibilityTable> &tables,
                                           AggregateOp op = AggregateOp::min);

// Structure whose parts keep only the DAs listed in `keep`; parts with no
// kept DA are dropped together with their leaves.
MorphStructure restrict_structure(const MorphStructure &ms, const Superstructure &keep);

Selection to_selection(const Superstructure &s);

}  // namespace morphoagg
