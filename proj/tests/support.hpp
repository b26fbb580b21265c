#pragma once

#include <string>
#include <vector>

#include "morphoagg/builders.hpp"
#include "morphoagg/core.hpp"
#include "morphoagg/instance.hpp"

namespace test_support {

inline std::string fixture(const std::string &name) { return std::string(FIXTURE_DIR) + "/" + name; }

inline morphoagg::InstanceFile load(const std::string &name) { return morphoagg::parse_instance(fixture(name)); }

inline std::vector<morphoagg::Id> sorted(const morphoagg::IdSet &s) { return morphoagg::sorted_ids(s); }

inline morphoagg::IdSet ids(std::initializer_list<const char *> l) {
  morphoagg::IdSet s;
  for (const auto *e : l) s.insert(e);
  return s;
}

// Parts given as (part, [(da, priority)]) on a star tree.
inline morphoagg::MorphStructure structure(
    const std::vector<std::pair<std::string, std::vector<std::pair<std::string, int>>>> &spec, int scale = 3) {
  morphoagg::MorphStructure ms;
  ms.priority_scale = scale;
  for (const auto &[part, alts] : spec) {
    ms.morphology.parts.push_back(part);
    for (const auto &[id, r] : alts) ms.morphology.alternatives[part].push_back({id, r, 0.0, {}});
    ms.leaf_parts[part] = part;
  }
  ms.tree = morphoagg::MorphStructure::star_tree(ms.morphology.parts);
  return ms;
}

inline morphoagg::IdSet kernel_elements(const morphoagg::Selection &s) { return morphoagg::elements_of(s); }

}  // namespace test_support
