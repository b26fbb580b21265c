#include "morphoagg/core.hpp"

#include <algorithm>
#include <cctype>

namespace morphoagg {

bool Error::infeasible() const noexcept {
  return code_ == "Infeasible" || code_ == "Uncoverable" ||
         code_ == "NoFeasibleComposition";
}

std::size_t WeightedSet::criteria() const {
  return weights.empty() ? 0 : weights.begin()->second.size();
}

double WeightedSet::weight(const Id &e, std::size_t criterion) const {
  auto it = weights.find(e);
  if (it == weights.end() || criterion >= it->second.size()) return 0.0;
  return it->second[criterion];
}

std::vector<Diagnostic> WeightedSet::validate(bool normalized) const {
  std::vector<Diagnostic> out;
  std::size_t r = criteria();
  for (const auto &[e, v] : weights) {
    if (!elements.count(e))
      out.push_back({"UnknownElement", "weighted element " + e + " is not in the set"});
    if (v.size() != r || r == 0)
      out.push_back({"CriteriaMismatch", "weight vector of " + e + " has wrong length"});
    for (double x : v) {
      if (x < 0) out.push_back({"NegativeWeight", "negative weight on " + e});
      else if (normalized && (x <= 0 || x > 1))
        out.push_back({"WeightOutOfRange", "weight of " + e + " outside (0,1]"});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

LayeredRanking::LayeredRanking(std::map<Id, int> priority)
    : priority_(std::move(priority)) {
  for (const auto &[e, p] : priority_)
    if (p < 1) throw Error("InvalidLayer", "layer index of " + e + " must be >= 1");
}

LayeredRanking LayeredRanking::from_layers(const std::vector<std::vector<Id>> &layers) {
  std::map<Id, int> p;
  for (std::size_t k = 0; k < layers.size(); ++k)
    for (const auto &e : layers[k])
      if (!p.emplace(e, static_cast<int>(k) + 1).second)
        throw Error("OverlappingLayers", "element " + e + " appears in two layers");
  return LayeredRanking(std::move(p));
}

int LayeredRanking::priority(const Id &e) const {
  auto it = priority_.find(e);
  if (it == priority_.end()) throw Error("UnknownElement", "element " + e + " not ranked");
  return it->second;
}

IdSet LayeredRanking::universe() const {
  IdSet u;
  for (const auto &kv : priority_) u.insert(kv.first);
  return u;
}

int LayeredRanking::depth() const {
  int m = 0;
  for (const auto &kv : priority_) m = std::max(m, kv.second);
  return m;
}

std::vector<std::vector<Id>> LayeredRanking::layers() const {
  std::vector<std::vector<Id>> out(static_cast<std::size_t>(depth()));
  for (const auto &e : sorted_ids(universe())) out[priority_.at(e) - 1].push_back(e);
  return out;
}

LayeredRanking LayeredRanking::compacted() const {
  std::vector<std::vector<Id>> kept;
  for (auto &layer : layers())
    if (!layer.empty()) kept.push_back(std::move(layer));
  return from_layers(kept);
}

LayeredRanking LayeredRanking::restricted(const IdSet &keep) const {
  std::map<Id, int> p;
  for (const auto &[e, k] : priority_)
    if (keep.count(e)) p.emplace(e, k);
  return LayeredRanking(std::move(p));
}

// ---------------------------------------------------------------------------

RootedTree::RootedTree(Id root, std::map<Id, Id> parent)
    : root_(std::move(root)), parent_(std::move(parent)) {}

RootedTree RootedTree::from_edges(const Id &root,
                                  const std::vector<std::pair<Id, Id>> &edges) {
  std::map<Id, Id> parent;
  for (const auto &[p, c] : edges)
    if (!parent.emplace(c, p).second)
      throw Error("MultipleParents", "node " + c + " has two parents");
  return RootedTree(root, std::move(parent));
}

IdSet RootedTree::nodes() const {
  IdSet n;
  if (!root_.empty()) n.insert(root_);
  for (const auto &[c, p] : parent_) {
    n.insert(c);
    n.insert(p);
  }
  return n;
}

bool RootedTree::contains(const Id &n) const {
  return n == root_ || parent_.count(n) != 0;
}

std::vector<Id> RootedTree::children(const Id &n) const {
  IdSet c;
  for (const auto &[child, p] : parent_)
    if (p == n) c.insert(child);
  return sorted_ids(c);
}

IdSet RootedTree::leaves() const {
  IdSet all = nodes();
  for (const auto &kv : parent_) all.erase(kv.second);
  return all;
}

bool RootedTree::is_ancestor(const Id &a, const Id &b) const {
  auto it = parent_.find(b);
  std::size_t guard = parent_.size() + 1;
  while (it != parent_.end() && guard--) {
    if (it->second == a) return true;
    it = parent_.find(it->second);
  }
  return false;
}

std::vector<std::pair<Id, Id>> RootedTree::edges() const {
  std::vector<std::pair<Id, Id>> out;
  for (const auto &[c, p] : parent_) out.emplace_back(p, c);
  std::sort(out.begin(), out.end(), [](const auto &x, const auto &y) {
    if (x.first != y.first) return id_less(x.first, y.first);
    return id_less(x.second, y.second);
  });
  return out;
}

std::vector<Diagnostic> RootedTree::validate() const {
  std::vector<Diagnostic> out;
  if (root_.empty()) {
    out.push_back({"MissingRoot", "tree has no root"});
    return out;
  }
  if (parent_.count(root_)) out.push_back({"RootHasParent", "root " + root_ + " has a parent"});
  for (const auto &n : nodes()) {
    if (n == root_) continue;
    if (!parent_.count(n)) {
      out.push_back({"MultipleRoots", "node " + n + " has no parent"});
      continue;
    }
    Id cur = n;
    std::size_t steps = 0;
    while (cur != root_ && parent_.count(cur) && steps <= parent_.size()) {
      cur = parent_.at(cur);
      ++steps;
    }
    if (cur != root_) out.push_back({"TreeCycle", "node " + n + " does not reach the root"});
  }
  return out;
}

// ---------------------------------------------------------------------------

const DesignAlternative *Morphology::find(const Id &da) const {
  for (const auto &[part, alts] : alternatives)
    for (const auto &a : alts)
      if (a.id == da) return &a;
  return nullptr;
}

std::optional<Id> Morphology::part_of(const Id &da) const {
  for (const auto &[part, alts] : alternatives)
    for (const auto &a : alts)
      if (a.id == da) return part;
  return std::nullopt;
}

std::vector<Id> Morphology::ids(const Id &part) const {
  std::vector<Id> out;
  auto it = alternatives.find(part);
  if (it == alternatives.end()) return out;
  for (const auto &a : it->second) out.push_back(a.id);
  return out;
}

// ---------------------------------------------------------------------------

std::pair<Id, Id> CompatibilityTable::key(const Id &a, const Id &b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

void CompatibilityTable::set(const Id &a, const Id &b, int value) {
  entries_[key(a, b)] = value;
}

bool CompatibilityTable::has(const Id &a, const Id &b) const {
  return entries_.count(key(a, b)) != 0;
}

std::optional<int> CompatibilityTable::find(const Id &a, const Id &b) const {
  auto it = entries_.find(key(a, b));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

int CompatibilityTable::lookup(const Id &a, const Id &b) const {
  auto v = find(a, b);
  if (v) return *v;
  return default_.value_or(0);
}

// ---------------------------------------------------------------------------

RootedTree MorphStructure::star_tree(const std::vector<Id> &parts, const Id &root) {
  std::map<Id, Id> parent;
  for (const auto &p : parts) parent[p] = root;
  return RootedTree(root, std::move(parent));
}

// ---------------------------------------------------------------------------

bool Selection::assigned(const Id &part) const {
  auto it = parts.find(part);
  return it != parts.end() && !it->second.empty();
}

bool Selection::contains(const Id &da) const {
  for (const auto &[p, das] : parts)
    if (std::find(das.begin(), das.end(), da) != das.end()) return true;
  return false;
}

void Selection::add(const Id &part, const Id &da) {
  auto &v = parts[part];
  if (std::find(v.begin(), v.end(), da) == v.end()) {
    v.push_back(da);
    std::sort(v.begin(), v.end(), id_less);
  }
}

void Selection::remove(const Id &da) {
  for (auto it = parts.begin(); it != parts.end();) {
    auto &v = it->second;
    v.erase(std::remove(v.begin(), v.end(), da), v.end());
    it = v.empty() ? parts.erase(it) : std::next(it);
  }
}

std::size_t Selection::size() const {
  std::size_t n = 0;
  for (const auto &kv : parts) n += kv.second.size();
  return n;
}

IdSet elements_of(const Selection &s) {
  IdSet out;
  for (const auto &[p, das] : s.parts) out.insert(das.begin(), das.end());
  return out;
}

Selection selection_from(const MorphStructure &ms, const std::vector<Id> &das) {
  Selection s;
  for (const auto &da : das) {
    auto part = ms.morphology.part_of(da);
    if (!part) throw Error("UnknownDa", "design alternative " + da + " is not in the morphology");
    s.add(*part, da);
  }
  return s;
}

// ---------------------------------------------------------------------------

std::vector<Diagnostic> validate_instance(const MorphStructure &ms) {
  std::vector<Diagnostic> out;
  const auto &m = ms.morphology;

  std::map<Id, Id> owner;
  IdSet declared(m.parts.begin(), m.parts.end());
  if (declared.size() != m.parts.size())
    out.push_back({"DuplicatePart", "a part id is listed twice"});
  for (const auto &[part, alts] : m.alternatives)
    if (!declared.count(part))
      out.push_back({"UnknownPart", "alternatives given for undeclared part " + part});
  for (const auto &part : m.parts) {
    auto it = m.alternatives.find(part);
    if (it == m.alternatives.end() || it->second.empty()) {
      out.push_back({"EmptyPart", "part " + part + " has no alternatives"});
      continue;
    }
    for (const auto &a : it->second) {
      if (a.id.empty()) out.push_back({"EmptyId", "part " + part + " has an unnamed alternative"});
      if (!owner.emplace(a.id, part).second)
        out.push_back({"DuplicateDaId", "design alternative " + a.id + " is listed twice"});
      if (a.priority < 1 || a.priority > ms.priority_scale)
        out.push_back({"PriorityOutOfScale", "priority of " + a.id + " is outside 1.." +
                                                 std::to_string(ms.priority_scale)});
      if (a.cost < 0) out.push_back({"NegativeCost", "cost of " + a.id + " is negative"});
    }
  }

  const auto &ct = ms.compatibility;
  if (ct.scale_max() < 1) out.push_back({"ScaleViolation", "compatibility scale must be >= 1"});
  if (ct.default_value() && (*ct.default_value() < 0 || *ct.default_value() > ct.scale_max()))
    out.push_back({"ScaleViolation", "default compatibility outside 0..l"});
  for (const auto &[pair, v] : ct.entries()) {
    auto pa = owner.find(pair.first), pb = owner.find(pair.second);
    if (pa == owner.end() || pb == owner.end()) {
      out.push_back({"UnknownDa", "compatibility entry " + pair.first + "/" + pair.second +
                                      " names an unknown alternative"});
      continue;
    }
    if (pa->second == pb->second)
      out.push_back({"SamePartCompatibility", "compatibility entry pairs " + pair.first +
                                                  " and " + pair.second + " of part " +
                                                  pa->second});
    if (v < 0 || v > ct.scale_max())
      out.push_back({"ScaleViolation", "compatibility " + pair.first + "/" + pair.second +
                                           " outside 0.." + std::to_string(ct.scale_max())});
  }

  auto tree_diag = ms.tree.validate();
  out.insert(out.end(), tree_diag.begin(), tree_diag.end());
  if (tree_diag.empty()) {
    IdSet leaves = ms.tree.leaves();
    std::map<Id, int> mapped;
    for (const auto &[leaf, part] : ms.leaf_parts) {
      if (!leaves.count(leaf))
        out.push_back({"LeafPartMismatch", "node " + leaf + " is not a leaf of the tree"});
      if (!declared.count(part))
        out.push_back({"LeafPartMismatch", "leaf " + leaf + " maps to unknown part " + part});
      ++mapped[part];
    }
    for (const auto &leaf : leaves)
      if (!ms.leaf_parts.count(leaf))
        out.push_back({"LeafPartMismatch", "leaf " + leaf + " carries no part"});
    for (const auto &part : m.parts)
      if (mapped[part] != 1)
        out.push_back({"LeafPartMismatch", "part " + part + " must be mapped by exactly one leaf"});
  }
  return out;
}

std::vector<Diagnostic> validate_selection(const MorphStructure &ms, const Selection &s,
                                           bool complete) {
  std::vector<Diagnostic> out;
  const auto &m = ms.morphology;
  for (const auto &[part, das] : s.parts) {
    if (!m.alternatives.count(part)) {
      out.push_back({"UnknownPart", "selection names unknown part " + part});
      continue;
    }
    if (das.size() > 1 && !ms.multi_choice)
      out.push_back({"MultipleChoice", "part " + part + " has more than one alternative chosen"});
    auto ids = m.ids(part);
    for (const auto &da : das)
      if (std::find(ids.begin(), ids.end(), da) == ids.end())
        out.push_back({"ForeignDa", da + " does not belong to part " + part});
  }
  if (complete)
    for (const auto &part : m.parts)
      if (!s.assigned(part)) out.push_back({"MissingPart", "part " + part + " is unassigned"});
  return out;
}

// ---------------------------------------------------------------------------

bool id_less(const Id &a, const Id &b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t i2 = i, j2 = j;
      while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
      while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
      std::string na = a.substr(i, i2 - i), nb = b.substr(j, j2 - j);
      na.erase(0, std::min(na.find_first_not_of('0'), na.size()));
      nb.erase(0, std::min(nb.find_first_not_of('0'), nb.size()));
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = i2;
      j = j2;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

std::vector<Id> sorted_ids(const IdSet &s) {
  std::vector<Id> v(s.begin(), s.end());
  std::sort(v.begin(), v.end(), id_less);
  return v;
}

}  // namespace morphoagg
