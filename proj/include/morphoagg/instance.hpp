#pragma once

#include <optional>
#include <string>
#include <vector>

#include "morphoagg/builders.hpp"
#include "morphoagg/core.hpp"
#include "morphoagg/solvers.hpp"
#include "morphoagg/strategies.hpp"

namespace morphoagg {

// Thrown by parse_instance. kind is "Io", "Syntax" or "Semantic".
class InstanceError : public Error {
public:
  InstanceError(std::string kind, std::string code, const std::string &message,
                std::string path = {}, int line = 0, int column = 0)
      : Error(std::move(code), message), kind_(std::move(kind)), path_(std::move(path)),
        line_(line), column_(column) {}

  const std::string &kind() const { return kind_; }
  const std::string &path() const { return path_; }
  int line() const { return line_; }
  int column() const { return column_; }

private:
  std::string kind_;
  std::string path_;
  int line_;
  int column_;
};

struct NamedSet {
  std::string name;
  IdSet elements;
};

struct NamedRanking {
  std::string name;
  LayeredRanking ranking;
};

struct NamedTree {
  std::string name;
  RootedTree tree;
};

struct NamedStructure {
  std::string name;
  MorphStructure structure;
};

// Pool item before values are resolved: either an explicit value or a
// priority converted through the active transform.
struct PoolItem {
  KnapsackItem item;
  std::optional<double> value;
};

struct PoolGroup {
  Id id;
  bool mandatory = true;
  std::vector<PoolItem> items;
};

struct PoolMatrix {
  std::vector<Id> ids;
  CompatMatrix rows;
};

struct InstanceOptions {
  std::optional<double> budget;
  std::optional<double> alpha;
  std::optional<std::string> transform;
  std::optional<std::string> method;
  std::optional<std::string> kernel;
  std::vector<Id> kernel_parts;
  std::vector<Id> kernel_elements;
  std::optional<int> layers;
  std::vector<double> tree_weights;
  bool power_set = false;
};

struct InstanceFile {
  int schema_version = 1;
  std::string name;
  std::optional<MorphStructure> structure;
  std::vector<NamedStructure> structures;
  std::vector<NamedSolution> solutions;
  std::vector<NamedSet> sets;
  std::vector<NamedSet> candidates;
  std::vector<NamedRanking> rankings;
  std::vector<NamedTree> trees;
  std::vector<NamedTree> tree_candidates;
  std::optional<WeightedSet> weights;
  std::vector<PoolItem> items;
  std::optional<PoolMatrix> compatibility_matrix;
  std::vector<PoolGroup> groups;
  std::vector<ModificationOp> ops;
  InstanceOptions options;

  SolutionFamily family() const;
};

InstanceFile parse_instance_text(const std::string &text);
InstanceFile parse_instance(const std::string &path);
std::string serialize_instance(const InstanceFile &inst);

// Shortest decimal text that reads back to the same double.
std::string format_decimal(double v);

std::vector<KnapsackItem> resolve_items(const std::vector<PoolItem> &items, int k,
                                        const ValueTransform &t);
std::vector<ChoiceGroup> resolve_groups(const std::vector<PoolGroup> &groups, int k,
                                        const ValueTransform &t);

}  // namespace morphoagg
