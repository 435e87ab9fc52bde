#include "qot/hamiltonian.hpp"

#include "qot/eig.hpp"
#include "qot/tensor.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

namespace qot {

HypergraphHamiltonian HypergraphHamiltonian::make(RegisterShape shape,
                                                  std::vector<HamTerm> terms) {
  HypergraphHamiltonian h;
  h.shape = std::move(shape);
  for (size_t t = 0; t < terms.size(); ++t) {
    HamTerm& term = terms[t];
    if (term.sites.empty())
      throw std::invalid_argument("Hamiltonian term " + std::to_string(t) + ": empty support");
    std::vector<int> sorted = term.sites;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("Hamiltonian term " + std::to_string(t) +
                                  ": repeated site label");
    for (int s : term.sites)
      if (!h.shape.has_site(s))
        throw std::invalid_argument("Hamiltonian term " + std::to_string(t) +
                                    ": site " + std::to_string(s) + " not in register");
    long long dim = 1;
    for (size_t i = 0; i < term.sites.size(); ++i) dim *= h.shape.d;
    if (term.matrix.dim() != dim)
      throw std::invalid_argument("Hamiltonian term " + std::to_string(t) +
                                  ": matrix dimension " + std::to_string(term.matrix.dim()) +
                                  " does not match support size");
    term.matrix = require_hermitian(term.matrix, 1e-10,
                                    "Hamiltonian term " + std::to_string(t));
  }
  h.terms = std::move(terms);
  return h;
}

CMat HypergraphHamiltonian::dense() const {
  CMat total(static_cast<int>(shape.dim()));
  for (const auto& term : terms)
    total += embed(term.matrix, shape.subset(term.sites), shape);
  return total;
}

double HypergraphHamiltonian::max_term_norm() const {
  double m = 0.0;
  for (const auto& term : terms) m = std::max(m, op_norm_herm(term.matrix));
  return m;
}

std::vector<int> HypergraphHamiltonian::neighborhood(int site_label) const {
  (void)shape.pos(site_label);
  std::set<int> nb = {site_label};
  for (const auto& term : terms)
    if (std::find(term.sites.begin(), term.sites.end(), site_label) != term.sites.end())
      nb.insert(term.sites.begin(), term.sites.end());
  std::vector<int> out;
  for (int s : shape.sites)
    if (nb.count(s)) out.push_back(s);
  return out;
}

int HypergraphHamiltonian::max_neighborhood_size() const {
  int m = 1;
  for (int s : shape.sites) m = std::max(m, static_cast<int>(neighborhood(s).size()));
  return m;
}

bool HypergraphHamiltonian::is_commuting(double tol) const {
  std::vector<CMat> lifted;
  for (const auto& term : terms)
    lifted.push_back(embed(term.matrix, shape.subset(term.sites), shape));
  for (size_t a = 0; a < lifted.size(); ++a)
    for (size_t b = a + 1; b < lifted.size(); ++b)
      if (max_abs_entry(commutator(lifted[a], lifted[b])) > tol) return false;
  return true;
}

int HypergraphHamiltonian::site_distance(int a, int b) const {
  (void)shape.pos(a);
  (void)shape.pos(b);
  if (a == b) return 0;
  std::set<int> visited = {a};
  std::queue<std::pair<int, int>> frontier;
  frontier.push({a, 0});
  while (!frontier.empty()) {
    auto [cur, dist] = frontier.front();
    frontier.pop();
    for (const auto& term : terms) {
      if (std::find(term.sites.begin(), term.sites.end(), cur) == term.sites.end()) continue;
      for (int s : term.sites) {
        if (visited.count(s)) continue;
        if (s == b) return dist + 1;
        visited.insert(s);
        frontier.push({s, dist + 1});
      }
    }
  }
  return -1;
}

namespace {
CMat zz_term(double coupling) {
  CMat zz = kron(pauli_z(), pauli_z());
  zz *= coupling;
  return zz;
}
}  // namespace

HypergraphHamiltonian ising_chain(int n_sites, double coupling) {
  std::vector<int> labels(n_sites);
  for (int i = 0; i < n_sites; ++i) labels[i] = i;
  std::vector<HamTerm> terms;
  for (int i = 0; i + 1 < n_sites; ++i) terms.push_back({{i, i + 1}, zz_term(coupling)});
  return HypergraphHamiltonian::make(RegisterShape(2, labels), std::move(terms));
}

HypergraphHamiltonian ising_ring(int n_sites, double coupling) {
  std::vector<int> labels(n_sites);
  for (int i = 0; i < n_sites; ++i) labels[i] = i;
  std::vector<HamTerm> terms;
  for (int i = 0; i + 1 < n_sites; ++i) terms.push_back({{i, i + 1}, zz_term(coupling)});
  if (n_sites > 2) terms.push_back({{n_sites - 1, 0}, zz_term(coupling)});
  return HypergraphHamiltonian::make(RegisterShape(2, labels), std::move(terms));
}

HypergraphHamiltonian field_z(int n_sites, double strength) {
  std::vector<int> labels(n_sites);
  for (int i = 0; i < n_sites; ++i) labels[i] = i;
  std::vector<HamTerm> terms;
  for (int i = 0; i < n_sites; ++i) {
    CMat z = pauli_z();
    z *= strength;
    terms.push_back({{i}, z});
  }
  return HypergraphHamiltonian::make(RegisterShape(2, labels), std::move(terms));
}

}  // namespace qot
