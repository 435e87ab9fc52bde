#pragma once
// Local Hamiltonians on a qudit register: a list of Hermitian terms, each
// supported on a named subset of sites (a hypergraph of interactions).

#include "qot/matrix.hpp"
#include "qot/register.hpp"

#include <vector>

namespace qot {

struct HamTerm {
  std::vector<int> sites;  // labels, unique, subset of the register
  CMat matrix;             // dim d^{|sites|}, Hermitian within 1e-10
};

struct HypergraphHamiltonian {
  RegisterShape shape;
  std::vector<HamTerm> terms;

  // Validates site membership and hermiticity (symmetrizing within 1e-10);
  // throws std::invalid_argument naming the offending term.
  static HypergraphHamiltonian make(RegisterShape shape, std::vector<HamTerm> terms);

  CMat dense() const;
  // max over terms of the operator norm
  double max_term_norm() const;
  // N_v: union of the supports of all terms containing v (v included even
  // when no term touches it)
  std::vector<int> neighborhood(int site_label) const;
  // max_v |N_v|
  int max_neighborhood_size() const;
  // true when all pairs of embedded terms commute within tol
  bool is_commuting(double tol) const;
  // graph distance between two sites, where sites are adjacent when they
  // share a term; -1 if disconnected
  int site_distance(int a, int b) const;
};

// Convenience builders used by tests and the CLI demos.
HypergraphHamiltonian ising_chain(int n_sites, double coupling = 1.0);
HypergraphHamiltonian ising_ring(int n_sites, double coupling = 1.0);
// Single-site fields sum_v strength * Z_v.
HypergraphHamiltonian field_z(int n_sites, double strength = 1.0);

}  // namespace qot
