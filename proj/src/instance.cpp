#include "morphoagg/instance.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace morphoagg {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void semantic(const std::string &code, const std::string &path, const std::string &msg) {
  throw InstanceError("Semantic", code, path + ": " + msg, path);
}

void check_keys(const json &j, const std::string &path, std::initializer_list<const char *> allowed) {
  if (!j.is_object()) semantic("TypeMismatch", path, "expected an object");
  for (const auto &[k, v] : j.items()) {
    bool ok = false;
    for (const char *a : allowed) ok = ok || k == a;
    if (!ok) semantic("UnknownField", path + "." + k, "unknown field");
  }
}

const json *field(const json &j, const char *key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

const json &required(const json &j, const char *key, const std::string &path) {
  auto *f = field(j, key);
  if (!f) semantic("MissingField", path + "." + key, "required field is missing");
  return *f;
}

double read_real(const json &j, const std::string &path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    auto s = j.get<std::string>();
    char *end = nullptr;
    errno = 0;
    double v = std::strtod(s.c_str(), &end);
    if (!s.empty() && end == s.c_str() + s.size() && errno == 0 && std::isfinite(v)) return v;
  }
  semantic("BadNumber", path, "expected a decimal number");
}

int read_int(const json &j, const std::string &path) {
  if (j.is_number_integer()) return j.get<int>();
  semantic("BadInteger", path, "expected an integer");
}

bool read_bool(const json &j, const std::string &path) {
  if (j.is_boolean()) return j.get<bool>();
  semantic("TypeMismatch", path, "expected true or false");
}

std::string read_string(const json &j, const std::string &path) {
  if (j.is_string()) return j.get<std::string>();
  semantic("TypeMismatch", path, "expected a string");
}

Id read_id(const json &j, const std::string &path) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s.empty()) semantic("EmptyId", path, "empty identifier");
    return s;
  }
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  semantic("TypeMismatch", path, "expected an identifier");
}

const json &array_at(const json &j, const std::string &path) {
  if (!j.is_array()) semantic("TypeMismatch", path, "expected an array");
  return j;
}

std::vector<Id> read_ids(const json &j, const std::string &path) {
  std::vector<Id> out;
  const auto &a = array_at(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(read_id(a[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::string idx(const std::string &path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void raise_diagnostics(const std::vector<Diagnostic> &diags, const std::string &path) {
  if (!diags.empty()) semantic(diags.front().code, path, diags.front().message);
}

RootedTree read_tree(const json &j, const std::string &path) {
  Id root = read_id(required(j, "root", path), path + ".root");
  std::vector<std::pair<Id, Id>> edges;
  if (auto *e = field(j, "edges")) {
    const auto &a = array_at(*e, path + ".edges");
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto p = idx(path + ".edges", i);
      if (!a[i].is_array() || a[i].size() != 2) semantic("TypeMismatch", p, "edge must be [parent, child]");
      edges.emplace_back(read_id(a[i][0], p + "[0]"), read_id(a[i][1], p + "[1]"));
    }
  }
  RootedTree t;
  try {
    t = RootedTree::from_edges(root, edges);
  } catch (const Error &e) {
    semantic(e.code(), path, e.what());
  }
  raise_diagnostics(t.validate(), path);
  return t;
}

MorphStructure read_structure(const json &j, const std::string &path) {
  check_keys(j, path, {"priority_scale", "compatibility_scale", "default_compatibility", "multi_choice",
                       "tree", "parts", "compatibility"});
  MorphStructure ms;
  if (auto *f = field(j, "priority_scale")) ms.priority_scale = read_int(*f, path + ".priority_scale");
  int l = 3;
  if (auto *f = field(j, "compatibility_scale")) l = read_int(*f, path + ".compatibility_scale");
  std::optional<int> def;
  if (auto *f = field(j, "default_compatibility")) def = read_int(*f, path + ".default_compatibility");
  ms.compatibility = CompatibilityTable(l, def);
  if (auto *f = field(j, "multi_choice")) ms.multi_choice = read_bool(*f, path + ".multi_choice");

  const auto &parts = array_at(required(j, "parts", path), path + ".parts");
  std::vector<std::pair<Id, Id>> leaves;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto pp = idx(path + ".parts", i);
    check_keys(parts[i], pp, {"id", "leaf", "alternatives"});
    Id part = read_id(required(parts[i], "id", pp), pp + ".id");
    Id leaf = part;
    if (auto *f = field(parts[i], "leaf")) leaf = read_id(*f, pp + ".leaf");
    leaves.emplace_back(leaf, part);
    ms.morphology.parts.push_back(part);
    auto &alts = ms.morphology.alternatives[part];
    const auto &aj = array_at(required(parts[i], "alternatives", pp), pp + ".alternatives");
    for (std::size_t a = 0; a < aj.size(); ++a) {
      auto ap = idx(pp + ".alternatives", a);
      check_keys(aj[a], ap, {"id", "priority", "cost", "criteria"});
      DesignAlternative da;
      da.id = read_id(required(aj[a], "id", ap), ap + ".id");
      if (auto *f = field(aj[a], "priority")) da.priority = read_int(*f, ap + ".priority");
      if (auto *f = field(aj[a], "cost")) da.cost = read_real(*f, ap + ".cost");
      if (auto *f = field(aj[a], "criteria")) {
        const auto &c = array_at(*f, ap + ".criteria");
        for (std::size_t k = 0; k < c.size(); ++k) da.criteria.push_back(read_real(c[k], idx(ap + ".criteria", k)));
      }
      alts.push_back(std::move(da));
    }
  }

  if (auto *f = field(j, "tree")) {
    check_keys(*f, path + ".tree", {"root", "edges"});
    ms.tree = read_tree(*f, path + ".tree");
  } else {
    ms.tree = MorphStructure::star_tree(ms.morphology.parts);
  }
  for (const auto &[leaf, part] : leaves) ms.leaf_parts[leaf] = part;

  if (auto *f = field(j, "compatibility")) {
    const auto &c = array_at(*f, path + ".compatibility");
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto p = idx(path + ".compatibility", i);
      if (!c[i].is_array() || c[i].size() != 3) semantic("TypeMismatch", p, "entry must be [da, da, value]");
      Id a = read_id(c[i][0], p + "[0]");
      Id b = read_id(c[i][1], p + "[1]");
      int v = read_int(c[i][2], p + "[2]");
      if (v < 0 || v > l) semantic("ScaleViolation", p + "[2]", "compatibility outside 0.." + std::to_string(l));
      ms.compatibility.set(a, b, v);
    }
  }
  raise_diagnostics(validate_instance(ms), path);
  return ms;
}

std::vector<NamedSet> read_sets(const json &j, const std::string &path) {
  std::vector<NamedSet> out;
  const auto &a = array_at(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto p = idx(path, i);
    check_keys(a[i], p, {"name", "elements"});
    NamedSet s;
    s.name = read_string(required(a[i], "name", p), p + ".name");
    auto ids = read_ids(required(a[i], "elements", p), p + ".elements");
    s.elements = IdSet(ids.begin(), ids.end());
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<NamedTree> read_trees(const json &j, const std::string &path) {
  std::vector<NamedTree> out;
  const auto &a = array_at(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto p = idx(path, i);
    check_keys(a[i], p, {"name", "root", "edges"});
    out.push_back({read_string(required(a[i], "name", p), p + ".name"), read_tree(a[i], p)});
  }
  return out;
}

PoolItem read_item(const json &j, const std::string &path) {
  check_keys(j, path, {"id", "value", "priority", "weight", "extra_weights", "members"});
  PoolItem pi;
  pi.item.id = read_id(required(j, "id", path), path + ".id");
  if (auto *f = field(j, "value")) pi.value = read_real(*f, path + ".value");
  if (auto *f = field(j, "priority")) {
    pi.item.priority = read_int(*f, path + ".priority");
    if (pi.item.priority < 1) semantic("PriorityOutOfScale", path + ".priority", "priority must be >= 1");
  }
  if (!pi.value && pi.item.priority == 0) semantic("MissingValue", path, "item needs a value or a priority");
  pi.item.weight = read_real(required(j, "weight", path), path + ".weight");
  if (pi.item.weight < 0) semantic("NegativeWeight", path + ".weight", "weight must be non-negative");
  if (auto *f = field(j, "extra_weights")) {
    const auto &a = array_at(*f, path + ".extra_weights");
    for (std::size_t i = 0; i < a.size(); ++i) pi.item.extra_weights.push_back(read_real(a[i], idx(path + ".extra_weights", i)));
  }
  if (auto *f = field(j, "members")) pi.item.members = read_ids(*f, path + ".members");
  return pi;
}

ModificationOp read_op(const json &j, const std::string &path) {
  check_keys(j, path, {"group", "kind", "da", "from", "cost", "priority"});
  ModificationOp op;
  op.group = read_id(required(j, "group", path), path + ".group");
  auto kind = read_string(required(j, "kind", path), path + ".kind");
  if (kind == "add") op.kind = ModificationOp::Kind::add;
  else if (kind == "delete") op.kind = ModificationOp::Kind::remove;
  else if (kind == "replace") op.kind = ModificationOp::Kind::replace;
  else if (kind == "none") op.kind = ModificationOp::Kind::none;
  else semantic("UnknownOpKind", path + ".kind", "expected add, delete, replace or none");
  if (op.kind != ModificationOp::Kind::none) op.da = read_id(required(j, "da", path), path + ".da");
  if (op.kind == ModificationOp::Kind::replace) op.old_da = read_id(required(j, "from", path), path + ".from");
  if (auto *f = field(j, "cost")) op.cost = read_real(*f, path + ".cost");
  if (op.cost < 0) semantic("NegativeCost", path + ".cost", "cost must be non-negative");
  if (auto *f = field(j, "priority")) op.priority = read_int(*f, path + ".priority");
  if (op.priority < 1) semantic("PriorityOutOfScale", path + ".priority", "priority must be >= 1");
  return op;
}

void read_pools(const json &j, InstanceFile &inst) {
  const std::string path = "pools";
  check_keys(j, path, {"items", "compatibility_matrix", "groups", "ops"});
  std::set<Id> seen;
  if (auto *f = field(j, "items")) {
    const auto &a = array_at(*f, path + ".items");
    for (std::size_t i = 0; i < a.size(); ++i) {
      inst.items.push_back(read_item(a[i], idx(path + ".items", i)));
      if (!seen.insert(inst.items.back().item.id).second)
        semantic("DuplicateItem", idx(path + ".items", i), "item id listed twice");
    }
  }
  if (auto *f = field(j, "compatibility_matrix")) {
    auto p = path + ".compatibility_matrix";
    check_keys(*f, p, {"ids", "rows"});
    PoolMatrix m;
    m.ids = read_ids(required(*f, "ids", p), p + ".ids");
    const auto &rows = array_at(required(*f, "rows", p), p + ".rows");
    if (rows.size() != m.ids.size()) semantic("DimensionMismatch", p + ".rows", "one row per id is required");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto rp = idx(p + ".rows", r);
      const auto &row = array_at(rows[r], rp);
      if (row.size() != m.ids.size()) semantic("DimensionMismatch", rp, "row length differs from id count");
      std::vector<int> vals;
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (row[c].is_null()) {
          vals.push_back(0);
          continue;
        }
        int v = read_int(row[c], idx(rp, c));
        if (v != 0 && v != 1) semantic("ScaleViolation", idx(rp, c), "matrix entries must be 0 or 1");
        vals.push_back(v);
      }
      m.rows.push_back(std::move(vals));
    }
    inst.compatibility_matrix = std::move(m);
  }
  if (auto *f = field(j, "groups")) {
    const auto &a = array_at(*f, path + ".groups");
    for (std::size_t g = 0; g < a.size(); ++g) {
      auto gp = idx(path + ".groups", g);
      check_keys(a[g], gp, {"id", "mandatory", "items"});
      PoolGroup pg;
      pg.id = read_id(required(a[g], "id", gp), gp + ".id");
      if (auto *m = field(a[g], "mandatory")) pg.mandatory = read_bool(*m, gp + ".mandatory");
      const auto &items = array_at(required(a[g], "items", gp), gp + ".items");
      for (std::size_t i = 0; i < items.size(); ++i) pg.items.push_back(read_item(items[i], idx(gp + ".items", i)));
      inst.groups.push_back(std::move(pg));
    }
  }
  if (auto *f = field(j, "ops")) {
    const auto &a = array_at(*f, path + ".ops");
    for (std::size_t i = 0; i < a.size(); ++i) inst.ops.push_back(read_op(a[i], idx(path + ".ops", i)));
  }
}

void read_options(const json &j, InstanceOptions &o) {
  const std::string path = "options";
  check_keys(j, path, {"budget", "alpha", "transform", "method", "kernel", "kernel_parts", "kernel_elements", "layers",
                       "tree_weights", "power_set"});
  if (auto *f = field(j, "budget")) o.budget = read_real(*f, path + ".budget");
  if (auto *f = field(j, "alpha")) o.alpha = read_real(*f, path + ".alpha");
  if (auto *f = field(j, "transform")) o.transform = read_string(*f, path + ".transform");
  if (auto *f = field(j, "method")) o.method = read_string(*f, path + ".method");
  if (auto *f = field(j, "kernel")) o.kernel = read_string(*f, path + ".kernel");
  if (auto *f = field(j, "kernel_parts")) o.kernel_parts = read_ids(*f, path + ".kernel_parts");
  if (auto *f = field(j, "kernel_elements")) o.kernel_elements = read_ids(*f, path + ".kernel_elements");
  if (auto *f = field(j, "layers")) o.layers = read_int(*f, path + ".layers");
  if (auto *f = field(j, "tree_weights")) {
    const auto &a = array_at(*f, path + ".tree_weights");
    for (std::size_t i = 0; i < a.size(); ++i) o.tree_weights.push_back(read_real(a[i], idx(path + ".tree_weights", i)));
  }
  if (auto *f = field(j, "power_set")) o.power_set = read_bool(*f, path + ".power_set");
  if (o.transform) {
    try {
      ValueTransform::parse(*o.transform);
    } catch (const Error &e) {
      semantic(e.code(), path + ".transform", e.what());
    }
  }
}

void line_col(const std::string &text, std::size_t byte, int &line, int &col) {
  line = 1;
  col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
}

// --- writing ---------------------------------------------------------------

json id_array(const std::vector<Id> &ids) {
  json a = json::array();
  for (const auto &i : ids) a.push_back(i);
  return a;
}

json write_tree(const RootedTree &t) {
  json j;
  j["root"] = t.root();
  json e = json::array();
  for (const auto &[p, c] : t.edges()) e.push_back(json::array({p, c}));
  j["edges"] = e;
  return j;
}

json write_structure(const MorphStructure &ms) {
  json j;
  j["priority_scale"] = ms.priority_scale;
  j["compatibility_scale"] = ms.compatibility.scale_max();
  if (ms.compatibility.default_value()) j["default_compatibility"] = *ms.compatibility.default_value();
  j["multi_choice"] = ms.multi_choice;
  j["tree"] = write_tree(ms.tree);
  std::map<Id, Id> leaf_of;
  for (const auto &[leaf, part] : ms.leaf_parts) leaf_of[part] = leaf;
  json parts = json::array();
  for (const auto &part : ms.morphology.parts) {
    json pj;
    pj["id"] = part;
    if (leaf_of.count(part) && leaf_of[part] != part) pj["leaf"] = leaf_of[part];
    json alts = json::array();
    for (const auto &a : ms.morphology.alternatives.at(part)) {
      json aj;
      aj["id"] = a.id;
      aj["priority"] = a.priority;
      if (a.cost != 0) aj["cost"] = format_decimal(a.cost);
      if (!a.criteria.empty()) {
        json c = json::array();
        for (double v : a.criteria) c.push_back(format_decimal(v));
        aj["criteria"] = c;
      }
      alts.push_back(aj);
    }
    pj["alternatives"] = alts;
    parts.push_back(pj);
  }
  j["parts"] = parts;
  json comp = json::array();
  for (const auto &[pair, v] : ms.compatibility.entries()) comp.push_back(json::array({pair.first, pair.second, v}));
  j["compatibility"] = comp;
  return j;
}

json write_sets(const std::vector<NamedSet> &sets) {
  json a = json::array();
  for (const auto &s : sets) {
    json j;
    j["name"] = s.name;
    j["elements"] = id_array(sorted_ids(s.elements));
    a.push_back(j);
  }
  return a;
}

json write_trees(const std::vector<NamedTree> &trees) {
  json a = json::array();
  for (const auto &t : trees) {
    json j;
    j["name"] = t.name;
    auto tj = write_tree(t.tree);
    j["root"] = tj["root"];
    j["edges"] = tj["edges"];
    a.push_back(j);
  }
  return a;
}

json write_item(const PoolItem &pi) {
  json j;
  j["id"] = pi.item.id;
  if (pi.value) j["value"] = format_decimal(*pi.value);
  if (pi.item.priority) j["priority"] = pi.item.priority;
  j["weight"] = format_decimal(pi.item.weight);
  if (!pi.item.extra_weights.empty()) {
    json e = json::array();
    for (double v : pi.item.extra_weights) e.push_back(format_decimal(v));
    j["extra_weights"] = e;
  }
  if (!pi.item.members.empty()) j["members"] = id_array(pi.item.members);
  return j;
}

std::string op_kind(ModificationOp::Kind k) {
  switch (k) {
    case ModificationOp::Kind::add: return "add";
    case ModificationOp::Kind::remove: return "delete";
    case ModificationOp::Kind::replace: return "replace";
    case ModificationOp::Kind::none: return "none";
  }
  return "none";
}

}  // namespace

std::string format_decimal(double v) {
  if (v == 0) return "0";
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  std::string s = buf;
  // Expand exponent notation for moderate magnitudes.
  if (s.find('e') != std::string::npos && std::fabs(v) >= 1e-6 && std::fabs(v) < 1e15) {
    for (int dec = 0; dec <= 20; ++dec) {
      std::snprintf(buf, sizeof buf, "%.*f", dec, v);
      if (std::strtod(buf, nullptr) == v) break;
    }
    s = buf;
  }
  return s;
}

SolutionFamily InstanceFile::family() const {
  if (!structure) throw Error("MissingStructure", "instance has no structure");
  return SolutionFamily{*structure, solutions};
}

InstanceFile parse_instance_text(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    int line = 0, col = 0;
    line_col(text, e.byte == 0 ? 0 : e.byte - 1, line, col);
    throw InstanceError("Syntax", "Syntax", "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what(),
                        {}, line, col);
  }
  check_keys(j, "$", {"schema_version", "name", "description", "structure", "structures", "solutions", "sets",
                      "candidates", "rankings", "trees", "tree_candidates", "weights", "pools", "options"});
  InstanceFile inst;
  inst.schema_version = read_int(required(j, "schema_version", "$"), "schema_version");
  if (inst.schema_version != 1) semantic("UnsupportedVersion", "schema_version", "only version 1 is supported");
  if (auto *f = field(j, "name")) inst.name = read_string(*f, "name");
  if (auto *f = field(j, "structure")) inst.structure = read_structure(*f, "structure");
  if (auto *f = field(j, "structures")) {
    const auto &a = array_at(*f, "structures");
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto p = idx("structures", i);
      if (!a[i].is_object()) semantic("TypeMismatch", p, "expected an object");
      auto body = a[i];
      std::string name = "L" + std::to_string(i + 1);
      if (auto *n = field(a[i], "name")) name = read_string(*n, p + ".name");
      body.erase("name");
      inst.structures.push_back({name, read_structure(body, p)});
    }
  }
  if (auto *f = field(j, "solutions")) {
    if (!inst.structure) semantic("MissingStructure", "solutions", "solutions need a structure");
    const auto &a = array_at(*f, "solutions");
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto p = idx("solutions", i);
      check_keys(a[i], p, {"name", "elements"});
      auto name = read_string(required(a[i], "name", p), p + ".name");
      auto das = read_ids(required(a[i], "elements", p), p + ".elements");
      Selection s;
      try {
        s = selection_from(*inst.structure, das);
      } catch (const Error &e) {
        semantic(e.code(), p + ".elements", e.what());
      }
      raise_diagnostics(validate_selection(*inst.structure, s, false), p);
      inst.solutions.push_back({name, std::move(s)});
    }
  }
  if (auto *f = field(j, "sets")) inst.sets = read_sets(*f, "sets");
  if (auto *f = field(j, "candidates")) inst.candidates = read_sets(*f, "candidates");
  if (auto *f = field(j, "rankings")) {
    const auto &a = array_at(*f, "rankings");
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto p = idx("rankings", i);
      check_keys(a[i], p, {"name", "layers"});
      std::vector<std::vector<Id>> layers;
      const auto &lj = array_at(required(a[i], "layers", p), p + ".layers");
      for (std::size_t k = 0; k < lj.size(); ++k) layers.push_back(read_ids(lj[k], idx(p + ".layers", k)));
      NamedRanking r;
      r.name = read_string(required(a[i], "name", p), p + ".name");
      try {
        r.ranking = LayeredRanking::from_layers(layers);
      } catch (const Error &e) {
        semantic(e.code(), p + ".layers", e.what());
      }
      inst.rankings.push_back(std::move(r));
    }
  }
  if (auto *f = field(j, "trees")) inst.trees = read_trees(*f, "trees");
  if (auto *f = field(j, "tree_candidates")) inst.tree_candidates = read_trees(*f, "tree_candidates");
  if (auto *f = field(j, "weights")) {
    check_keys(*f, "weights", {"elements"});
    const auto &e = required(*f, "elements", "weights");
    if (!e.is_object()) semantic("TypeMismatch", "weights.elements", "expected an object");
    WeightedSet w;
    for (const auto &[k, v] : e.items()) {
      auto p = "weights.elements." + k;
      const auto &a = array_at(v, p);
      std::vector<double> vals;
      for (std::size_t i = 0; i < a.size(); ++i) vals.push_back(read_real(a[i], idx(p, i)));
      w.elements.insert(k);
      w.weights[k] = std::move(vals);
    }
    raise_diagnostics(w.validate(), "weights");
    inst.weights = std::move(w);
  }
  if (auto *f = field(j, "pools")) read_pools(*f, inst);
  if (auto *f = field(j, "options")) read_options(*f, inst.options);
  return inst;
}

InstanceFile parse_instance(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError("Io", "Io", "cannot open " + path, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw InstanceError("Io", "Io", "cannot read " + path, path);
  return parse_instance_text(ss.str());
}

std::string serialize_instance(const InstanceFile &inst) {
  json j;
  j["schema_version"] = inst.schema_version;
  if (!inst.name.empty()) j["name"] = inst.name;
  if (inst.structure) j["structure"] = write_structure(*inst.structure);
  if (!inst.structures.empty()) {
    json a = json::array();
    for (const auto &s : inst.structures) {
      json sj;
      sj["name"] = s.name;
      auto body = write_structure(s.structure);
      for (const auto &[k, v] : body.items()) sj[k] = v;
      a.push_back(sj);
    }
    j["structures"] = a;
  }
  if (!inst.solutions.empty()) {
    json a = json::array();
    for (const auto &s : inst.solutions) {
      json sj;
      sj["name"] = s.name;
      std::vector<Id> das;
      for (const auto &part : inst.structure->morphology.parts) {
        auto it = s.selection.parts.find(part);
        if (it != s.selection.parts.end()) das.insert(das.end(), it->second.begin(), it->second.end());
      }
      sj["elements"] = id_array(das);
      a.push_back(sj);
    }
    j["solutions"] = a;
  }
  if (!inst.sets.empty()) j["sets"] = write_sets(inst.sets);
  if (!inst.candidates.empty()) j["candidates"] = write_sets(inst.candidates);
  if (!inst.rankings.empty()) {
    json a = json::array();
    for (const auto &r : inst.rankings) {
      json rj;
      rj["name"] = r.name;
      json layers = json::array();
      for (const auto &layer : r.ranking.layers()) {
        std::vector<Id> sorted = layer;
        std::sort(sorted.begin(), sorted.end(), id_less);
        layers.push_back(id_array(sorted));
      }
      rj["layers"] = layers;
      a.push_back(rj);
    }
    j["rankings"] = a;
  }
  if (!inst.trees.empty()) j["trees"] = write_trees(inst.trees);
  if (!inst.tree_candidates.empty()) j["tree_candidates"] = write_trees(inst.tree_candidates);
  if (inst.weights) {
    json e = json::object();
    for (const auto &id : sorted_ids(inst.weights->elements)) {
      json v = json::array();
      for (double x : inst.weights->weights.at(id)) v.push_back(format_decimal(x));
      e[id] = v;
    }
    j["weights"]["elements"] = e;
  }
  json pools = json::object();
  if (!inst.items.empty()) {
    json a = json::array();
    for (const auto &pi : inst.items) a.push_back(write_item(pi));
    pools["items"] = a;
  }
  if (inst.compatibility_matrix) {
    pools["compatibility_matrix"]["ids"] = id_array(inst.compatibility_matrix->ids);
    json rows = json::array();
    for (const auto &r : inst.compatibility_matrix->rows) rows.push_back(r);
    pools["compatibility_matrix"]["rows"] = rows;
  }
  if (!inst.groups.empty()) {
    json a = json::array();
    for (const auto &g : inst.groups) {
      json gj;
      gj["id"] = g.id;
      gj["mandatory"] = g.mandatory;
      json items = json::array();
      for (const auto &pi : g.items) items.push_back(write_item(pi));
      gj["items"] = items;
      a.push_back(gj);
    }
    pools["groups"] = a;
  }
  if (!inst.ops.empty()) {
    json a = json::array();
    for (const auto &op : inst.ops) {
      json oj;
      oj["group"] = op.group;
      oj["kind"] = op_kind(op.kind);
      if (op.kind == ModificationOp::Kind::replace) oj["from"] = op.old_da;
      if (op.kind != ModificationOp::Kind::none) oj["da"] = op.da;
      oj["cost"] = format_decimal(op.cost);
      oj["priority"] = op.priority;
      a.push_back(oj);
    }
    pools["ops"] = a;
  }
  if (!pools.empty()) j["pools"] = pools;
  const auto &o = inst.options;
  json oj = json::object();
  if (o.budget) oj["budget"] = format_decimal(*o.budget);
  if (o.alpha) oj["alpha"] = format_decimal(*o.alpha);
  if (o.transform) oj["transform"] = *o.transform;
  if (o.method) oj["method"] = *o.method;
  if (o.kernel) oj["kernel"] = *o.kernel;
  if (!o.kernel_parts.empty()) oj["kernel_parts"] = id_array(o.kernel_parts);
  if (!o.kernel_elements.empty()) oj["kernel_elements"] = id_array(o.kernel_elements);
  if (o.layers) oj["layers"] = *o.layers;
  if (!o.tree_weights.empty()) {
    json a = json::array();
    for (double v : o.tree_weights) a.push_back(format_decimal(v));
    oj["tree_weights"] = a;
  }
  if (o.power_set) oj["power_set"] = true;
  if (!oj.empty()) j["options"] = oj;
  return j.dump(2) + "\n";
}

std::vector<KnapsackItem> resolve_items(const std::vector<PoolItem> &items, int k,
                                        const ValueTransform &t) {
  std::vector<KnapsackItem> out;
  for (const auto &pi : items) {
    KnapsackItem it = pi.item;
    it.value = pi.value ? *pi.value : priority_to_value(pi.item.priority, k, t);
    out.push_back(std::move(it));
  }
  return out;
}

std::vector<ChoiceGroup> resolve_groups(const std::vector<PoolGroup> &groups, int k,
                                        const ValueTransform &t) {
  std::vector<ChoiceGroup> out;
  for (const auto &g : groups) out.push_back({g.id, resolve_items(g.items, k, t), g.mandatory});
  return out;
}

}  // namespace morphoagg
