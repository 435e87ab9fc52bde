#include "qot/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "qot/eig.hpp"
#include "qot/matfun.hpp"
#include "qot/rng.hpp"
#include "qot/tensor.hpp"

namespace qot {

namespace {

// ln Tr exp(log_omega + K) via a shifted eigenvalue log-sum-exp
double log_trace_exp(const CMat& log_omega, const CMat& k) {
  const EigResult e = herm_eig(log_omega + k);
  const double top = e.eigenvalues.front();
  double s = 0.0;
  for (double lam : e.eigenvalues) s += std::exp(lam - top);
  return top + std::log(s);
}

double functional_numerator(const CMat& log_omega, const CMat& omega, const CMat& k) {
  return log_trace_exp(log_omega, k) - std::real(trace(omega * k));
}

CMat center_for(const CMat& omega, const CMat& k) {
  CMat out = k;
  out += (-std::real(trace(omega * k))) * CMat::identity(k.rows());
  return out;
}

}  // namespace

double tci_dual_lower(const DensityState& omega, const DualLowerOptions& opts) {
  const RegisterShape& shape = omega.shape;
  const int dim = static_cast<int>(shape.dim());
  if (lambda_min_herm(omega.matrix) <= 1e-12)
    throw std::invalid_argument("tci_dual_lower: state must have full rank");
  if (opts.iterations < 0 || opts.restarts < 0)
    throw std::invalid_argument("tci_dual_lower: negative budget");

  const CMat log_omega = mat_log_herm(omega.matrix);

  // direction pool: single-site Z probes, their sum, and random traceless ops
  std::vector<CMat> dirs;
  if (shape.d == 2) {
    CMat zsum(dim);
    for (int v : shape.sites) {
      const CMat zi = embed(pauli_z(), single_site(2, v), shape);
      dirs.push_back(zi);
      zsum += zi;
    }
    if (shape.num_sites() > 1) dirs.push_back(zsum);
  }
  Rng rng(opts.seed, 900);
  for (int r = 0; r < opts.restarts; ++r)
    dirs.push_back(random_traceless_hermitian(rng, dim));

  double best = 0.0;
  CMat best_k(dim);
  bool have_best = false;

  for (const CMat& raw : dirs) {
    const CMat d = center_for(omega.matrix, raw);
    const double lip_d = lip_const(d, shape, opts.lip_refine).upper;
    if (lip_d <= 1e-12) continue;
    // the bracket scales linearly, so one bracket serves the whole t sweep
    auto value_at = [&](double t) {
      return 4.0 * functional_numerator(log_omega, omega.matrix, t * d) /
             (t * t * lip_d * lip_d);
    };
    double t_best = 0.0, v_best = 0.0;
    for (double t : {1e-3, 1e-2, 0.05, 0.2, 0.6, 1.5}) {
      const double v = value_at(t);
      if (v > v_best) {
        v_best = v;
        t_best = t;
      }
    }
    if (t_best == 0.0) continue;
    // golden-section refinement of the scale
    double lo = t_best / 4.0, hi = t_best * 4.0;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = value_at(x1), f2 = value_at(x2);
    for (int it = 0; it < 40; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = value_at(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = value_at(x1);
      }
    }
    const double t_ref = f1 > f2 ? x1 : x2;
    const double v_ref = std::max(f1, f2);
    if (v_ref > v_best) {
      v_best = v_ref;
      t_best = t_ref;
    }
    if (v_best > best) {
      best = v_best;
      best_k = t_best * d;
      have_best = true;
    }
  }

  if (!have_best) return 0.0;

  // gradient ascent from the best probe; the numerator gradient at K is the
  // tilted state exp(ln omega + K)/Tr(...) minus omega
  CMat k = best_k;
  double step = 0.25 * op_norm_herm(k);
  for (int it = 0; it < opts.iterations && step > 1e-5; ++it) {
    const CMat m = log_omega + k;
    const EigResult e = herm_eig(m);
    const double top = e.eigenvalues.front();
    std::vector<double> w(e.eigenvalues.size());
    double z = 0.0;
    for (size_t i = 0; i < w.size(); ++i) {
      w[i] = std::exp(e.eigenvalues[i] - top);
      z += w[i];
    }
    for (double& x : w) x /= z;
    const CMat grad = from_eig(w, e.vectors) - omega.matrix;
    const double gn = op_norm_herm(grad);
    if (gn <= 1e-13) break;
    const CMat cand = center_for(omega.matrix, k + (step / gn) * grad);
    const double lip_c = lip_const(cand, shape, opts.lip_refine).upper;
    if (lip_c > 1e-12) {
      const double v =
          4.0 * functional_numerator(log_omega, omega.matrix, cand) / (lip_c * lip_c);
      if (v > best + 1e-14) {
        best = v;
        k = cand;
        continue;
      }
    }
    step *= 0.5;
  }

  // one thorough bracket on the winner; a tighter upper bracket can only
  // raise the certified lower bound
  const double lip_fin = lip_const(k, shape, opts.lip_refine_final).upper;
  if (lip_fin > 1e-12) {
    const double v =
        4.0 * functional_numerator(log_omega, omega.matrix, k) / (lip_fin * lip_fin);
    best = std::max(best, v);
  }
  return best;
}

double tail_prob(const CMat& obs, const DensityState& state, double r, bool centered) {
  require_hermitian(obs, 1e-10, "observable");
  if (obs.rows() != state.dim())
    throw std::invalid_argument("tail_prob: dimension mismatch");
  const EigResult e = herm_eig(obs);
  const CMat w = adjoint(e.vectors) * state.matrix * e.vectors;
  const double mean = centered ? std::real(trace(state.matrix * obs)) : 0.0;
  double p = 0.0;
  for (size_t i = 0; i < e.eigenvalues.size(); ++i) {
    const double lam = e.eigenvalues[i];
    const bool in = centered ? std::abs(lam - mean) >= r : lam >= r;
    if (in) p += std::max(0.0, std::real(w(static_cast<int>(i), static_cast<int>(i))));
  }
  return std::min(1.0, p);
}

TailBound gaussian_tail_bound(const CMat& obs, const DensityState& omega, double r,
                              double c, int lip_refine) {
  if (c <= 0.0) throw std::invalid_argument("gaussian_tail_bound: constant must be positive");
  if (r < 0.0) throw std::invalid_argument("gaussian_tail_bound: negative radius");
  require_hermitian(obs, 1e-10, "observable");
  TailBound out;

  const CMat comm = obs * omega.matrix - omega.matrix * obs;
  const bool commutes = op_norm(comm) <= 1e-10;

  bool clip_a = false, clip_b = false;
  const CMat inv_sqrt = mat_power_clipped(omega.matrix, cxd(-0.5, 0.0), 1e-13, &clip_a);
  const CMat sqrt_w = mat_power_clipped(omega.matrix, cxd(0.5, 0.0), 1e-13, &clip_b);
  out.clipped = clip_a || clip_b;
  const CMat x = inv_sqrt * obs * sqrt_w;
  const CMat xr = 0.5 * (x + adjoint(x));
  const CMat xi = cxd(0.0, -0.5) * (x - adjoint(x));
  out.lip_real = lip_const(xr, omega.shape, lip_refine).upper;
  out.lip_imag = lip_const(xi, omega.shape, lip_refine).upper;
  const double m2 = std::max(out.lip_real * out.lip_real, out.lip_imag * out.lip_imag);
  out.general = m2 < 1e-300 ? (r == 0.0 ? 2.0 : 0.0)
                            : 2.0 * std::exp(-r * r / (4.0 * c * m2));

  if (commutes) {
    out.lip_plain = lip_const(obs, omega.shape, lip_refine).upper;
    const double l2 = out.lip_plain * out.lip_plain;
    out.commuting = l2 < 1e-300 ? (r == 0.0 ? 2.0 : 0.0)
                                : 2.0 * std::exp(-r * r / (c * l2));
  }
  return out;
}

TailReport tail_report(const CMat& obs, const DensityState& omega,
                       const std::vector<double>& r_grid, double c, int lip_refine) {
  if (r_grid.empty()) throw std::invalid_argument("tail_report: empty radius grid");
  TailReport rep;
  rep.r_grid = r_grid;
  // brackets do not depend on r, so compute them once at r = 0
  const TailBound probe = gaussian_tail_bound(obs, omega, 0.0, c, lip_refine);
  rep.commuting = probe.commuting.has_value();
  rep.lipschitz_used =
      rep.commuting ? probe.lip_plain : std::max(probe.lip_real, probe.lip_imag);
  for (double r : r_grid) {
    if (r < 0.0) throw std::invalid_argument("tail_report: negative radius");
    rep.exact_tail.push_back(tail_prob(obs, omega, r, true));
    const double l2 = rep.lipschitz_used * rep.lipschitz_used;
    double bound;
    if (l2 < 1e-300)
      bound = r == 0.0 ? 2.0 : 0.0;
    else if (rep.commuting)
      bound = 2.0 * std::exp(-r * r / (c * l2));
    else
      bound = 2.0 * std::exp(-r * r / (4.0 * c * l2));
    rep.gauss_bound.push_back(bound);
  }
  return rep;
}

double conjugated_lip_bound(const std::vector<HamTerm>& obs_terms,
                            const HypergraphHamiltonian& ham, double beta) {
  if (obs_terms.empty())
    throw std::invalid_argument("conjugated_lip_bound: observable has no terms");
  if (beta < 0.0) throw std::invalid_argument("conjugated_lip_bound: negative beta");
  const RegisterShape& shape = ham.shape;

  std::vector<double> ham_norms;
  for (const HamTerm& t : ham.terms) ham_norms.push_back(op_norm_herm(t.matrix));

  std::vector<double> site_total(shape.sites.size(), 0.0);
  for (const HamTerm& a : obs_terms) {
    if (a.sites.empty())
      throw std::invalid_argument("conjugated_lip_bound: term with empty support");
    for (int s : a.sites)
      if (!shape.has_site(s))
        throw std::invalid_argument("conjugated_lip_bound: term site outside register");
    require_hermitian(a.matrix, 1e-10, "observable term");
    const double lam = op_norm_herm(a.matrix);

    std::set<int> support(a.sites.begin(), a.sites.end());
    double touching = 0.0;
    for (size_t b = 0; b < ham.terms.size(); ++b) {
      bool meets = false;
      for (int s : ham.terms[b].sites)
        if (support.count(s)) {
          meets = true;
          break;
        }
      if (!meets) continue;
      touching += ham_norms[b];
    }
    // enlarge the support by every Hamiltonian term it touches; conjugation
    // by the Gibbs weight cannot spread the operator further than that
    std::set<int> enlarged = support;
    for (const HamTerm& b : ham.terms) {
      bool meets = false;
      for (int s : b.sites)
        if (support.count(s)) {
          meets = true;
          break;
        }
      if (meets)
        for (int s : b.sites) enlarged.insert(s);
    }
    const double contribution = lam * std::exp(beta * touching);
    for (size_t i = 0; i < shape.sites.size(); ++i)
      if (enlarged.count(shape.sites[i])) site_total[i] += contribution;
  }
  return 4.0 * *std::max_element(site_total.begin(), site_total.end());
}

LaplacePair laplace_bound_check(const CMat& k, const DensityState& omega,
                                double c_prime, int lip_refine) {
  if (c_prime <= 0.0)
    throw std::invalid_argument("laplace_bound_check: constant must be positive");
  require_hermitian(k, 1e-10, "observable");
  if (k.rows() != omega.dim())
    throw std::invalid_argument("laplace_bound_check: dimension mismatch");
  const double mean = std::real(trace(omega.matrix * k));
  if (std::abs(mean) > 1e-8 * std::max(1.0, op_norm_herm(k)))
    throw std::invalid_argument("laplace_bound_check: observable is not centered");
  LaplacePair out;
  if (max_abs_entry(k) == 0.0) return out;
  out.lhs = std::log(std::real(trace(omega.matrix * mat_exp_herm(k))));
  out.lip_upper = lip_const(k, omega.shape, lip_refine).upper;
  out.rhs = 0.25 * c_prime * out.lip_upper * out.lip_upper;
  return out;
}

}  // namespace qot
