#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "morphoagg/core.hpp"

namespace morphoagg {

struct ProximityVector {
  std::vector<std::pair<std::string, double>> components;

  double at(const std::string &label) const;
  std::vector<double> values() const;
};

// Histograms of layer-index differences. Keys are the non-zero differences r;
// missing keys are zero. m is the layer count both rankings are measured on.
struct ErrorVectors {
  int m = 0;
  std::size_t n = 0;
  std::map<int, double> x;
  std::map<int, double> y;
  bool normalized = false;

  // Dense views over r = -(m-1)..-1,1..m-1 and -2(m-1)..-1,1..2(m-1).
  std::vector<double> x_dense() const;
  std::vector<double> y_dense() const;
  double x_module() const;
  double y_module() const;
};

struct VectorOptions {
  bool normalize = false;
};

enum class Dominance { ancestor, descendant, independent };

struct DominanceMatrix {
  std::vector<Id> nodes;
  std::map<std::pair<std::size_t, std::size_t>, Dominance> cells;  // i < j

  Dominance at(std::size_t i, std::size_t j) const { return cells.at({i, j}); }
};

double set_proximity_elements(const IdSet &a, const IdSet &b);
double set_proximity_weighted(const IdSet &a, const IdSet &b, const WeightedSet &w,
                              std::size_t criterion);
std::vector<double> set_proximity_weighted_vector(const IdSet &a, const IdSet &b,
                                                  const WeightedSet &w);

long kendall_tau(const LayeredRanking &s1, const LayeredRanking &s2);
double kendall_tau_normalized(const LayeredRanking &s1, const LayeredRanking &s2);

ErrorVectors vector_proximity(const LayeredRanking &s1, const LayeredRanking &s2,
                              const VectorOptions &opts = {});

// Component helpers over a histogram keyed by r.
double aggregate_component(const std::map<int, double> &v, int k1, int k2);
std::map<int, double> modular_components(const std::map<int, double> &v);
std::map<int, double> truncated(const std::map<int, double> &v, int k1, int k2);

bool error_vector_dominates(const std::map<int, double> &x1, const std::map<int, double> &x2);
bool error_vector_dominates(const ErrorVectors &x1, const ErrorVectors &x2);

DominanceMatrix dominance_matrix(const RootedTree &t, const std::vector<Id> &nodes);

// (rho_A, rho_E)
ProximityVector tree_proximity(const RootedTree &t1, const RootedTree &t2);

// (rho_A, rho_E, rho_r)
ProximityVector morph_proximity(const MorphStructure &l1, const MorphStructure &l2);

// Priorities of one part's DAs as a layered ranking.
LayeredRanking part_ranking(const MorphStructure &ms, const Id &part);

}  // namespace morphoagg
