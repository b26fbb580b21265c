#include <cmath>
#include <sstream>

#include "morphoagg/solvers.hpp"

namespace morphoagg {

ValueTransform ValueTransform::parse(const std::string &spec) {
  ValueTransform t;
  if (spec.empty() || spec == "default" || spec == "standard") return t;
  const std::string prefix = "offset:";
  if (spec.rfind(prefix, 0) == 0) {
    try {
      std::size_t used = 0;
      std::string rest = spec.substr(prefix.size());
      t.offset = std::stod(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(rest);
    } catch (const std::exception &) {
      throw Error("BadTransform", "cannot read offset in transform '" + spec + "'");
    }
    t.kind = Kind::offset;
    return t;
  }
  throw Error("BadTransform", "unknown transform '" + spec + "' (expected default or offset:K)");
}

std::string ValueTransform::str() const {
  switch (kind) {
    case Kind::standard: return "default";
    case Kind::custom: return "custom";
    case Kind::offset: {
      std::ostringstream os;
      os << "offset:" << offset;
      return os.str();
    }
  }
  return "default";
}

double priority_to_value(int r, int k, const ValueTransform &t) {
  if (k < 1 || r < 1 || r > k)
    throw Error("OutOfScale", "priority " + std::to_string(r) + " outside 1.." + std::to_string(k));
  switch (t.kind) {
    case ValueTransform::Kind::offset: return t.offset - r;
    case ValueTransform::Kind::custom:
      if (!t.fn) throw Error("BadTransform", "custom transform without a function");
      return t.fn(r, k);
    case ValueTransform::Kind::standard: break;
  }
  return static_cast<double>(k + 1 - r);
}

bool dominates(const std::vector<double> &a, const std::vector<double> &b,
               const std::vector<Sense> &senses) {
  bool strict = false;
  for (std::size_t d = 0; d < a.size(); ++d) {
    double x = senses[d] == Sense::min ? -a[d] : a[d];
    double y = senses[d] == Sense::min ? -b[d] : b[d];
    if (x < y) return false;
    if (x > y) strict = true;
  }
  return strict;
}

std::vector<std::size_t> pareto_filter(const std::vector<std::vector<double>> &points,
                                       const std::vector<Sense> &senses) {
  for (const auto &p : points)
    if (p.size() != senses.size())
      throw Error("DimensionMismatch", "point dimension differs from the sense list");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j)
      dominated = j != i && dominates(points[j], points[i], senses);
    if (!dominated) keep.push_back(i);
  }
  return keep;
}

LayeredRanking rank_outranking(const std::vector<Id> &alternatives,
                               const std::vector<std::vector<double>> &scores,
                               const std::vector<double> &weights,
                               const OutrankingParams &params) {
  std::size_t n = alternatives.size();
  if (scores.size() != n) throw Error("DimensionMismatch", "one score row per alternative expected");
  double wsum = 0;
  for (double w : weights) {
    if (w < 0) throw Error("InvalidWeights", "criterion weights must be non-negative");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-9) throw Error("InvalidWeights", "criterion weights must sum to 1");
  for (const auto &row : scores)
    if (row.size() != weights.size()) throw Error("DimensionMismatch", "score row length differs from weights");

  auto outranks = [&](std::size_t a, std::size_t b) {
    double conc = 0;
    for (std::size_t c = 0; c < weights.size(); ++c) {
      if (scores[a][c] >= scores[b][c]) conc += weights[c];
      if (scores[b][c] - scores[a][c] > params.veto) return false;
    }
    return conc >= params.concordance - 1e-12;
  };
  std::vector<std::vector<bool>> s(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) s[a][b] = outranks(a, b);

  std::map<Id, int> layer;
  std::vector<bool> placed(n, false);
  std::size_t left = n;
  int k = 0;
  while (left > 0) {
    ++k;
    std::vector<std::size_t> top;
    for (std::size_t a = 0; a < n; ++a) {
      if (placed[a]) continue;
      bool beaten = false;
      for (std::size_t b = 0; b < n && !beaten; ++b)
        beaten = !placed[b] && b != a && s[b][a] && !s[a][b];
      if (!beaten) top.push_back(a);
    }
    // A strict-preference cycle leaves no unbeaten alternative: collapse it.
    if (top.empty())
      for (std::size_t a = 0; a < n; ++a)
        if (!placed[a]) top.push_back(a);
    for (auto a : top) {
      placed[a] = true;
      layer[alternatives[a]] = k;
      --left;
    }
  }
  return LayeredRanking(std::move(layer));
}

}  // namespace morphoagg
