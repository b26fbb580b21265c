#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace morphoagg {

using Id = std::string;
using IdSet = std::set<Id>;

// Every library failure carries a stable code. Codes in the "infeasible"
// family map to CLI exit status 2.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string &message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string &code() const noexcept { return code_; }
  bool infeasible() const noexcept;

private:
  std::string code_;
};

struct Diagnostic {
  std::string code;
  std::string message;

  bool operator==(const Diagnostic &) const = default;
};

struct WeightedSet {
  IdSet elements;
  std::map<Id, std::vector<double>> weights;

  std::size_t criteria() const;
  double weight(const Id &e, std::size_t criterion) const;
  std::vector<Diagnostic> validate(bool normalized = false) const;
};

// Layer index per element. Layers are 1-based; an index may be skipped when a
// consensus keeps uncompacted numbering.
class LayeredRanking {
public:
  LayeredRanking() = default;
  explicit LayeredRanking(std::map<Id, int> priority);

  static LayeredRanking from_layers(const std::vector<std::vector<Id>> &layers);

  const std::map<Id, int> &priorities() const { return priority_; }
  int priority(const Id &e) const;
  bool contains(const Id &e) const { return priority_.count(e) != 0; }
  IdSet universe() const;
  std::size_t size() const { return priority_.size(); }
  int depth() const;

  // layers()[k-1] holds the elements of layer k; may contain empty layers.
  std::vector<std::vector<Id>> layers() const;
  LayeredRanking compacted() const;
  LayeredRanking restricted(const IdSet &keep) const;

  bool operator==(const LayeredRanking &) const = default;

private:
  std::map<Id, int> priority_;
};

class RootedTree {
public:
  RootedTree() = default;
  RootedTree(Id root, std::map<Id, Id> parent);

  static RootedTree from_edges(const Id &root,
                               const std::vector<std::pair<Id, Id>> &edges);

  const Id &root() const { return root_; }
  const std::map<Id, Id> &parents() const { return parent_; }
  IdSet nodes() const;
  bool contains(const Id &n) const;
  bool empty() const { return root_.empty(); }
  std::vector<Id> children(const Id &n) const;
  IdSet leaves() const;
  bool is_ancestor(const Id &a, const Id &b) const;
  std::vector<std::pair<Id, Id>> edges() const;

  std::vector<Diagnostic> validate() const;

  bool operator==(const RootedTree &) const = default;

private:
  Id root_;
  std::map<Id, Id> parent_;
};

struct DesignAlternative {
  Id id;
  int priority = 1;
  double cost = 0.0;
  std::vector<double> criteria;

  bool operator==(const DesignAlternative &) const = default;
};

struct Morphology {
  std::vector<Id> parts;
  std::map<Id, std::vector<DesignAlternative>> alternatives;

  const DesignAlternative *find(const Id &da) const;
  std::optional<Id> part_of(const Id &da) const;
  std::vector<Id> ids(const Id &part) const;

  bool operator==(const Morphology &) const = default;
};

class CompatibilityTable {
public:
  CompatibilityTable() = default;
  explicit CompatibilityTable(int scale_max,
                              std::optional<int> default_value = std::nullopt)
      : scale_max_(scale_max), default_(default_value) {}

  int scale_max() const { return scale_max_; }
  const std::optional<int> &default_value() const { return default_; }
  void set_default(std::optional<int> v) { default_ = v; }

  void set(const Id &a, const Id &b, int value);
  bool has(const Id &a, const Id &b) const;
  std::optional<int> find(const Id &a, const Id &b) const;
  // Absent pairs read as the declared default, else 0.
  int lookup(const Id &a, const Id &b) const;
  const std::map<std::pair<Id, Id>, int> &entries() const { return entries_; }

  bool operator==(const CompatibilityTable &) const = default;

private:
  static std::pair<Id, Id> key(const Id &a, const Id &b);

  int scale_max_ = 3;
  std::optional<int> default_;
  std::map<std::pair<Id, Id>, int> entries_;
};

struct MorphStructure {
  RootedTree tree;
  std::map<Id, Id> leaf_parts;  // tree leaf -> part id
  Morphology morphology;
  CompatibilityTable compatibility;
  int priority_scale = 3;
  bool multi_choice = false;

  // Root "S" with one leaf per part, named after the part.
  static RootedTree star_tree(const std::vector<Id> &parts, const Id &root = "S");

  bool operator==(const MorphStructure &) const = default;
};

// Part -> chosen DAs. A composite solution has one DA per part (several when
// the structure allows multi-choice); a partial selection leaves parts out.
struct Selection {
  std::map<Id, std::vector<Id>> parts;

  bool assigned(const Id &part) const;
  bool contains(const Id &da) const;
  void add(const Id &part, const Id &da);
  void remove(const Id &da);
  std::size_t size() const;

  bool operator==(const Selection &) const = default;
};

using CompositeSolution = Selection;
using PartialSelection = Selection;

std::vector<Diagnostic> validate_instance(const MorphStructure &ms);
std::vector<Diagnostic> validate_selection(const MorphStructure &ms,
                                           const Selection &s,
                                           bool complete);

IdSet elements_of(const Selection &s);

// Builds a selection from a flat DA list by looking up each DA's part.
Selection selection_from(const MorphStructure &ms, const std::vector<Id> &das);

// Ids compared numerically when both are integers, else lexicographically.
bool id_less(const Id &a, const Id &b);
std::vector<Id> sorted_ids(const IdSet &s);

}  // namespace morphoagg
