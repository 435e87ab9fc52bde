#include "qot/states.hpp"

#include "qot/eig.hpp"
#include "qot/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace qot {

namespace {

constexpr double kSupportTol = 1e-10;
constexpr double kLogFloor = 1e-14;

void require_disjoint(const std::vector<int>& a, const std::vector<int>& b,
                      const char* what) {
  std::set<int> sa(a.begin(), a.end());
  for (int s : b)
    if (sa.count(s)) throw std::invalid_argument(std::string(what) + ": overlapping parts");
}

std::vector<int> ordered_union(const RegisterShape& shape, const std::vector<int>& a,
                               const std::vector<int>& b) {
  std::set<int> want(a.begin(), a.end());
  want.insert(b.begin(), b.end());
  std::vector<int> out;
  for (int s : shape.sites)
    if (want.count(s)) out.push_back(s);
  return out;
}

}  // namespace

DensityState DensityState::make(RegisterShape shape, CMat matrix, double tol) {
  if (matrix.dim() != shape.dim())
    throw std::invalid_argument("density matrix dimension does not match register");
  CMat m = require_hermitian(matrix, tol, "density matrix");
  double lo = lambda_min_herm(m);
  if (lo < -tol)
    throw std::invalid_argument("density matrix has negative eigenvalue " +
                                std::to_string(lo));
  double tr = trace(m).real();
  if (std::abs(tr - 1.0) > tol)
    throw std::invalid_argument("density matrix trace " + std::to_string(tr) +
                                " is not 1");
  m *= 1.0 / tr;
  return DensityState{std::move(shape), std::move(m)};
}

DensityState maximally_mixed(const RegisterShape& shape) {
  CMat m = CMat::identity(static_cast<int>(shape.dim()));
  m *= 1.0 / static_cast<double>(shape.dim());
  return DensityState{shape, std::move(m)};
}

DensityState product_state(const RegisterShape& shape, const std::vector<CMat>& site_mats) {
  if (site_mats.size() != shape.sites.size())
    throw std::invalid_argument("product_state: need one factor per site");
  CMat total(1);
  total(0, 0) = 1.0;
  for (size_t i = 0; i < site_mats.size(); ++i) {
    DensityState f = DensityState::make(single_site(shape.d, shape.sites[i]), site_mats[i]);
    total = kron(total, f.matrix);
  }
  return DensityState{shape, std::move(total)};
}

DensityState marginal(const DensityState& state, const std::vector<int>& keep) {
  CMat m = partial_trace(state.matrix, state.shape, state.shape.complement(keep).sites);
  return DensityState{state.shape.subset(keep), std::move(m)};
}

DensityState gibbs_state(const RegisterShape& shape, const CMat& hamiltonian, double beta) {
  if (hamiltonian.dim() != shape.dim())
    throw std::invalid_argument("gibbs_state: Hamiltonian dimension mismatch");
  EigResult eh = herm_eig(hamiltonian);
  // Shift so the largest Boltzmann weight is exactly 1: no overflow for any beta.
  double ref = beta >= 0 ? eh.eigenvalues.back() : eh.eigenvalues.front();
  std::vector<double> w(eh.eigenvalues.size());
  double z = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(-beta * (eh.eigenvalues[i] - ref));
    z += w[i];
  }
  for (double& x : w) x /= z;
  CMat m = from_eig(w, eh.vectors);
  m = require_hermitian(m, 1e-9, "gibbs_state result");
  return DensityState{shape, std::move(m)};
}

DensityState gibbs_state(const HypergraphHamiltonian& hamiltonian, double beta) {
  return gibbs_state(hamiltonian.shape, hamiltonian.dense(), beta);
}

DensityState microcanonical_state(const RegisterShape& shape, const CMat& hamiltonian,
                                  double energy, double delta, double degeneracy_tol) {
  if (delta <= 0) throw std::invalid_argument("microcanonical_state: delta must be > 0");
  if (hamiltonian.dim() != shape.dim())
    throw std::invalid_argument("microcanonical_state: Hamiltonian dimension mismatch");
  EigResult eh = herm_eig(hamiltonian);
  size_t n = eh.eigenvalues.size();
  std::vector<double> w(n, 0.0);
  size_t count = 0;
  size_t i = 0;
  while (i < n) {
    // Levels are eigenvalue clusters; a whole cluster enters or leaves together.
    size_t j = i + 1;
    double sum = eh.eigenvalues[i];
    while (j < n && eh.eigenvalues[j - 1] - eh.eigenvalues[j] <= degeneracy_tol) {
      sum += eh.eigenvalues[j];
      ++j;
    }
    double rep = sum / static_cast<double>(j - i);
    if (rep > energy - delta && rep <= energy) {
      for (size_t k = i; k < j; ++k) w[k] = 1.0;
      count += j - i;
    }
    i = j;
  }
  if (count == 0)
    throw std::domain_error("microcanonical_state: no levels in (" +
                            std::to_string(energy - delta) + ", " +
                            std::to_string(energy) + "]");
  for (double& x : w) x /= static_cast<double>(count);
  CMat m = from_eig(w, eh.vectors);
  m = require_hermitian(m, 1e-9, "microcanonical_state result");
  return DensityState{shape, std::move(m)};
}

double entropy(const CMat& rho) {
  EigResult e = herm_eig(rho);
  double s = 0.0;
  for (double lam : e.eigenvalues)
    if (lam > 1e-15) s -= lam * std::log(lam);
  return s;
}

double entropy(const DensityState& state) { return entropy(state.matrix); }

double rel_entropy(const CMat& rho, const CMat& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("rel_entropy: dimension mismatch");
  EigResult es = herm_eig(sigma);
  // rho in sigma's eigenbasis; only the diagonal matters for Tr[rho ln sigma].
  CMat r = adjoint(es.vectors) * rho * es.vectors;
  double outside = 0.0;
  double cross = 0.0;
  for (int i = 0; i < r.dim(); ++i) {
    double p = r(i, i).real();
    double mu = es.eigenvalues[i];
    if (mu <= kSupportTol)
      outside += p;
    else
      cross += p * std::log(std::max(mu, kLogFloor));
  }
  if (outside > kSupportTol) return std::numeric_limits<double>::infinity();
  return -entropy(rho) - cross;
}

double max_divergence(const CMat& rho, const CMat& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("max_divergence: dimension mismatch");
  EigResult es = herm_eig(sigma);
  CMat r = adjoint(es.vectors) * rho * es.vectors;
  double outside = 0.0;
  std::vector<double> inv_sqrt(es.eigenvalues.size(), 0.0);
  for (size_t i = 0; i < es.eigenvalues.size(); ++i) {
    if (es.eigenvalues[i] <= kSupportTol)
      outside += r(static_cast<int>(i), static_cast<int>(i)).real();
    else
      inv_sqrt[i] = 1.0 / std::sqrt(es.eigenvalues[i]);
  }
  if (outside > kSupportTol) return std::numeric_limits<double>::infinity();
  CMat s = from_eig(inv_sqrt, es.vectors);
  return std::log(lambda_max_herm(s * rho * s));
}

double mutual_information(const DensityState& state, const std::vector<int>& part_a,
                          const std::vector<int>& part_b) {
  require_disjoint(part_a, part_b, "mutual_information");
  DensityState ab = marginal(state, ordered_union(state.shape, part_a, part_b));
  return entropy(marginal(state, part_a)) + entropy(marginal(state, part_b)) - entropy(ab);
}

double conditional_mutual_information(const DensityState& state,
                                      const std::vector<int>& part_a,
                                      const std::vector<int>& part_b,
                                      const std::vector<int>& part_c) {
  require_disjoint(part_a, part_b, "conditional_mutual_information");
  require_disjoint(part_a, part_c, "conditional_mutual_information");
  require_disjoint(part_b, part_c, "conditional_mutual_information");
  if (part_c.empty()) return mutual_information(state, part_a, part_b);
  std::vector<int> ac = ordered_union(state.shape, part_a, part_c);
  std::vector<int> bc = ordered_union(state.shape, part_b, part_c);
  std::vector<int> abc = ordered_union(state.shape, ac, part_b);
  return entropy(marginal(state, ac)) + entropy(marginal(state, bc)) -
         entropy(marginal(state, part_c)) - entropy(marginal(state, abc));
}

double entropy_continuity_g(double t) {
  if (t < 0) throw std::invalid_argument("entropy_continuity_g: negative argument");
  if (t == 0) return 0.0;
  return (t + 1) * std::log(t + 1) - t * std::log(t);
}

double entropy_continuity_bound(double transport, int d, int n_sites) {
  if (d < 2 || n_sites < 1)
    throw std::invalid_argument("entropy_continuity_bound: bad register parameters");
  return entropy_continuity_g(transport) +
         transport * std::log(static_cast<double>(d) * d * n_sites);
}

double entropy_lower_w1(double delta_s, int d, int n_sites) {
  if (d < 2 || n_sites < 1)
    throw std::invalid_argument("entropy_lower_w1: bad register parameters");
  return (delta_s - std::log(n_sites + 1.0) - 1.0) /
         std::log(static_cast<double>(d) * d * n_sites);
}

}  // namespace qot
