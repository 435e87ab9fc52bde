#include "qot/w1.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qot/eig.hpp"
#include "qot/tensor.hpp"

namespace qot {

namespace {

CMat checked_input(const CMat& x0, const RegisterShape& shape, const char* what) {
  if (x0.dim() != shape.dim())
    throw std::invalid_argument(std::string(what) +
                                ": operator dimension does not match the register");
  CMat x = require_hermitian(x0, 1e-8, what);
  const double tr = std::abs(trace(x));
  if (tr > 1e-8 * std::max(1.0, fro_norm(x)))
    throw std::invalid_argument(std::string(what) + ": input must be traceless, |trace| = " +
                                std::to_string(tr));
  return x;
}

// Q = sum_v (Id - site_average_v); diagonal in the product operator basis with
// eigenvalue |support|, so CG below converges in at most num_sites steps.
CMat apply_q(const CMat& m, const RegisterShape& shape) {
  CMat r = static_cast<double>(shape.num_sites()) * m;
  for (int v : shape.sites) r -= site_average(m, shape, v);
  return r;
}

CMat solve_q(const CMat& rhs0, const RegisterShape& shape) {
  CMat rhs = rhs0;
  const int dim = rhs.dim();
  const cxd tr = trace(rhs);
  for (int i = 0; i < dim; ++i) rhs(i, i) -= tr / static_cast<double>(dim);
  CMat m(dim);
  CMat r = rhs;
  CMat p = rhs;
  double rs = std::real(hs_inner(r, r));
  const double stop = 1e-26 * std::max(1.0, rs);
  const int max_iter = 3 * shape.num_sites() + 8;
  for (int it = 0; it < max_iter && rs > stop; ++it) {
    const CMat qp = apply_q(p, shape);
    const double denom = std::real(hs_inner(p, qp));
    if (denom <= 0.0) break;
    const double alpha = rs / denom;
    m += alpha * p;
    r -= alpha * qp;
    const double rs2 = std::real(hs_inner(r, r));
    p = r + (rs2 / rs) * p;
    rs = rs2;
  }
  return m;
}

CMat soft_threshold(const CMat& v, double thr) {
  EigResult e = herm_eig(v);
  for (double& lam : e.eigenvalues)
    lam = lam > thr ? lam - thr : (lam < -thr ? lam + thr : 0.0);
  return from_eig(e.eigenvalues, e.vectors);
}

struct AdmmOut {
  W1Certificate cert;
  std::vector<CMat> multipliers;  // scaled duals U_v at exit
  double sigma = 0.0;
};

AdmmOut admm_primal(const CMat& x, const RegisterShape& shape, const W1Options& opts) {
  const int n = shape.num_sites();
  const int dim = x.dim();
  AdmmOut out;
  out.cert.witness = CMat(dim);
  const double xnorm = op_norm_herm(x);
  if (xnorm <= 1e-15 || n == 0) return out;

  // feasible start: telescoping suffix averages; term k is traceless at site k
  std::vector<CMat> z(n);
  {
    std::vector<CMat> avg(n + 1);
    avg[n] = x;
    for (int k = n - 1; k >= 0; --k) {
      const std::vector<int> suffix(shape.sites.begin() + k, shape.sites.end());
      avg[k] = block_average(x, shape, suffix);
    }
    for (int k = 0; k < n; ++k) z[k] = avg[k + 1] - avg[k];
  }
  auto objective = [](const std::vector<CMat>& zz) {
    double s = 0.0;
    for (const CMat& m : zz) s += trace_norm_herm(m);
    return 0.5 * s;
  };
  double best_obj = objective(z);
  std::vector<CMat> best_z = z;

  // if x is already traceless at some site, assigning everything there is feasible
  for (int k = 0; k < n; ++k) {
    const CMat marg = partial_trace(x, shape, {shape.sites[k]});
    if (max_abs_entry(marg) <= 1e-12 * std::max(1.0, xnorm)) {
      const double single = 0.5 * trace_norm_herm(x);
      if (single < best_obj) {
        best_obj = single;
        for (CMat& m : best_z) m = CMat(dim);
        best_z[k] = x;
      }
    }
  }

  double sigma = opts.penalty > 0.0 ? opts.penalty : 1.0 / xnorm;
  std::vector<CMat> u(n, CMat(dim));
  std::vector<CMat> w(n, CMat(dim));
  std::vector<CMat> py(n);
  const double scale = std::max(1.0, fro_norm(x));
  const double tol = opts.admm_residual_tol;

  for (int it = 0; it < opts.admm_max_iters; ++it) {
    for (int k = 0; k < n; ++k) w[k] = soft_threshold(z[k] - u[k], 0.5 / sigma);

    CMat sum_py(dim);
    for (int k = 0; k < n; ++k) {
      py[k] = site_centered(w[k] + u[k], shape, shape.sites[k]);
      sum_py += py[k];
    }
    const CMat m = solve_q(x - sum_py, shape);

    double r2 = 0.0, s2 = 0.0;
    for (int k = 0; k < n; ++k) {
      CMat znew = py[k] + site_centered(m, shape, shape.sites[k]);
      s2 += std::pow(fro_norm(znew - z[k]), 2);
      z[k] = std::move(znew);
      const CMat gap = w[k] - z[k];
      r2 += std::pow(fro_norm(gap), 2);
      u[k] += gap;
    }
    const double r = std::sqrt(r2);
    const double s = sigma * std::sqrt(s2);
    const bool converged = r <= tol * scale && s <= tol * scale;

    if (it % 5 == 0 || converged) {
      const double obj = objective(z);
      if (obj < best_obj) {
        best_obj = obj;
        best_z = z;
      }
    }
    if (converged) break;
    if (it % 10 == 9) {
      if (r > 10.0 * s) {
        sigma *= 2.0;
        for (CMat& m2 : u) m2 *= 0.5;
      } else if (s > 10.0 * r) {
        sigma *= 0.5;
        for (CMat& m2 : u) m2 *= 2.0;
      }
    }
  }
  const double obj = objective(z);
  if (obj < best_obj) {
    best_obj = obj;
    best_z = z;
  }

  CMat recon(dim);
  for (int k = 0; k < n; ++k) recon += best_z[k];
  if (max_abs_entry(recon - x) > 1e-8 * std::max(1.0, max_abs_entry(x)))
    throw std::logic_error("w1_primal: decomposition drifted off the consistency constraint");

  out.cert.value_upper = best_obj;
  for (int k = 0; k < n; ++k) out.cert.decomposition.push_back({shape.sites[k], best_z[k]});
  out.multipliers = u;
  out.sigma = sigma;
  return out;
}

W1Certificate dual_ascent(const CMat& x, const RegisterShape& shape, const W1Options& opts,
                          const std::vector<CMat>& extra_candidates) {
  const int dim = x.dim();
  W1Certificate cert;
  cert.witness = CMat(dim);
  const double xnorm = op_norm_herm(x);
  if (xnorm <= 1e-15) return cert;
  const double xf = fro_norm(x);

  double best_val = 0.0;
  CMat best_k;
  auto consider = [&](const CMat& k) {
    const LipschitzBracket b = lip_const(k, shape, opts.lip_refine);
    if (b.upper <= 1e-13) return;
    const double val = std::real(hs_inner(x, k)) / b.upper;
    if (best_k.empty() || val > best_val) {
      best_val = val;
      best_k = k;
    }
  };

  consider(sign_herm(x));
  {
    // sum of centered single-site sign witnesses of the marginals
    CMat local(dim);
    bool nonzero = false;
    for (int v : shape.sites) {
      const CMat marg = partial_trace(x, shape, shape.complement({v}).sites);
      if (max_abs_entry(marg) <= 1e-13 * std::max(1.0, xnorm)) continue;
      CMat s = sign_herm(marg);
      const cxd c = trace(s) / static_cast<double>(shape.d);
      for (int i = 0; i < s.dim(); ++i) s(i, i) -= c;
      local += embed(s, shape.subset({v}), shape);
      nonzero = true;
    }
    if (nonzero) consider(local);
  }
  consider(x);
  for (const CMat& k : extra_candidates)
    if (!k.empty() && max_abs_entry(k) > 1e-14) consider(k);

  // projected supergradient ascent from the best candidate
  CMat kcur = best_k;
  {
    const LipschitzBracket b0 = lip_const(kcur, shape, opts.lip_refine);
    if (b0.upper > 1e-13) kcur *= 1.0 / b0.upper;
  }
  const CMat dir = (1.0 / xf) * x;
  for (int t = 0; t < opts.dual_steps; ++t) {
    kcur += (0.7 / std::sqrt(t + 1.0)) * dir;
    const LipschitzBracket b = lip_const(kcur, shape, opts.lip_refine);
    if (b.upper <= 1e-13) continue;
    const double val = std::real(hs_inner(x, kcur)) / b.upper;
    if (val > best_val) {
      best_val = val;
      best_k = kcur;
    }
    if (b.upper > 1.0) kcur *= 1.0 / b.upper;
  }

  // thorough certificate for the winner; a longer descent only extends the
  // evaluated candidate set, so the bound can only improve
  const LipschitzBracket fin = lip_const(best_k, shape, opts.lip_refine_final);
  if (fin.upper <= 1e-13) return cert;
  cert.value_lower = std::real(hs_inner(x, best_k)) / fin.upper;
  cert.witness = (1.0 / fin.upper) * best_k;
  cert.witness_lip = 1.0;
  return cert;
}

}  // namespace

LipschitzBracket lip_const(const CMat& h0, const RegisterShape& shape, int refine_iters) {
  if (h0.dim() != shape.dim())
    throw std::invalid_argument("lip_const: operator dimension does not match the register");
  const CMat h = require_hermitian(h0, 1e-8, "lip_const input");
  LipschitzBracket br;
  br.sites = shape.sites;
  const int n = shape.num_sites();
  if (n == 0) return br;

  // scalar candidate shared by every site: G = (global spectral midpoint) * I
  const EigResult ge = herm_eig(h);
  const double gmid = 0.5 * (ge.eigenvalues.front() + ge.eigenvalues.back());
  const double gspread = 0.5 * (ge.eigenvalues.front() - ge.eigenvalues.back());

  double lower = 0.0;
  double worst = 0.0;
  for (int v : shape.sites) {
    const RegisterShape comp = shape.complement({v});
    const int dc = static_cast<int>(comp.dim());

    CMat g0 = partial_trace(h, shape, {v});
    g0 *= 1.0 / shape.d;
    const CMat r0 = h - embed(g0, comp, shape);
    const EigResult re = herm_eig(r0);
    const double r_hi = re.eigenvalues.front();
    const double r_lo = re.eigenvalues.back();
    const double u0 = std::max(std::abs(r_hi), std::abs(r_lo));
    lower = std::max(lower, u0);

    // best of: trace-out average with spectral midpoint shift, global scalar
    double best = 0.5 * (r_hi - r_lo);
    CMat gbest = g0 + (0.5 * (r_hi + r_lo)) * CMat::identity(dc);
    if (gspread < best) {
      best = gspread;
      gbest = gmid * CMat::identity(dc);
    }

    if (refine_iters > 0 && best > 1e-15) {
      // log-sum-exp smoothed descent on G -> ||h - I_v (x) G||_inf,
      // every iterate evaluated exactly so the record stays certified
      CMat g = gbest;
      for (int k = 0; k <= refine_iters; ++k) {
        const CMat r = h - embed(g, comp, shape);
        const EigResult er = herm_eig(r);
        const int last = static_cast<int>(er.eigenvalues.size()) - 1;
        const double u =
            std::max(std::abs(er.eigenvalues.front()), std::abs(er.eigenvalues[last]));
        if (u < best) {
          best = u;
          gbest = g;
        }
        if (k == refine_iters || u <= 1e-15) break;
        const double mu = std::max(1e-12, 0.02 * u);
        CMat d(h.dim());
        double wsum = 0.0;
        for (int i = 0; i <= last; ++i) {
          const double lam = er.eigenvalues[i];
          const double wgt = std::exp((std::abs(lam) - u) / mu);
          if (wgt < 1e-14) continue;
          wsum += wgt;
          const double signed_w = lam >= 0.0 ? wgt : -wgt;
          const cxd* vec = er.vectors.col(i);
          for (int cc = 0; cc < h.dim(); ++cc) {
            const cxd vc = std::conj(vec[cc]) * signed_w;
            if (vc == cxd(0.0, 0.0)) continue;
            cxd* dcol = d.col(cc);
            for (int rr = 0; rr < h.dim(); ++rr) dcol[rr] += vec[rr] * vc;
          }
        }
        if (wsum <= 0.0) break;
        // symmetrize: the rank-one accumulation is Hermitian only to roundoff,
        // and the normalization below can amplify that noise enormously when
        // the true gradient vanishes
        CMat grad = partial_trace(d, shape, {v});
        grad = 0.5 * (grad + adjoint(grad));
        const double gn = fro_norm(grad);
        // a gradient this far below the weight scale is pure roundoff; the
        // smoothed objective is stationary, nothing left to descend
        if (gn <= 1e-11 * wsum) break;
        grad *= (0.35 * u0 / gn) / std::sqrt(k + 1.0);
        g += grad;
      }
    }

    br.site_witnesses.push_back(gbest);
    br.site_values.push_back(best);
    worst = std::max(worst, best);
  }
  br.lower = lower;
  br.upper = 2.0 * worst;
  return br;
}

W1Certificate w1_primal(const CMat& x, const RegisterShape& shape, const W1Options& opts) {
  return admm_primal(checked_input(x, shape, "w1_primal"), shape, opts).cert;
}

W1Certificate w1_dual(const CMat& x, const RegisterShape& shape, const W1Options& opts) {
  return dual_ascent(checked_input(x, shape, "w1_dual"), shape, opts, {});
}

W1Certificate w1_norm(const CMat& x0, const RegisterShape& shape, const W1Options& opts) {
  const CMat x = checked_input(x0, shape, "w1_norm");
  AdmmOut primal = admm_primal(x, shape, opts);

  // the ADMM multipliers approximate the site projections of a dual witness;
  // recover it by least squares as an extra ascent candidate
  std::vector<CMat> extra;
  if (!primal.multipliers.empty() && primal.sigma > 0.0) {
    CMat rhs(x.dim());
    for (int k = 0; k < shape.num_sites(); ++k)
      rhs += site_centered(primal.multipliers[k], shape, shape.sites[k]);
    rhs *= primal.sigma;
    if (max_abs_entry(rhs) > 1e-14) extra.push_back(solve_q(rhs, shape));
  }
  const W1Certificate dual = dual_ascent(x, shape, opts, extra);

  W1Certificate cert = primal.cert;
  cert.value_lower = dual.value_lower;
  cert.witness = dual.witness;
  cert.witness_lip = dual.witness_lip;
  if (cert.value_lower > cert.value_upper + 1e-9 * std::max(1.0, cert.value_upper))
    throw std::logic_error("w1_norm: certified bounds crossed");
  return cert;
}

W1Certificate w1_distance(const DensityState& rho, const DensityState& sigma,
                          const W1Options& opts) {
  if (!(rho.shape == sigma.shape))
    throw std::invalid_argument("w1_distance: states live on different registers");
  const CMat x = rho.matrix - sigma.matrix;
  W1Certificate cert = w1_norm(x, rho.shape, opts);

  // the half-sum of marginal trace distances can never exceed the upper value
  double marg = 0.0;
  for (int v : rho.shape.sites) {
    const std::vector<int> rest = rho.shape.complement({v}).sites;
    marg += 0.5 * trace_norm_herm(partial_trace(x, rho.shape, rest));
  }
  if (marg > cert.value_upper + 1e-6)
    throw std::logic_error("w1_distance: marginal lower bound exceeds the certified upper value");
  return cert;
}

LightConeCheck light_cone_expansion_check(const ChannelRep& phi, const CMat& x,
                                          const W1Options& opts) {
  if (!(phi.in_shape == phi.out_shape))
    throw std::invalid_argument("light_cone_expansion_check: channel must map a register to itself");
  const RegisterShape& shape = phi.in_shape;
  const CMat xin = checked_input(x, shape, "light_cone_expansion_check");

  LightConeCheck out;
  // cones are probed on the adjoint side: output site w belongs to the cone
  // of input site v exactly when some observable of w pulls back to an
  // operator acting nontrivially on v.  The adjoint of a trace-preserving
  // map is unital, so padding the probe with identities elsewhere is exact;
  // probing forward would overreport whenever the channel is not unital.
  const std::vector<CMat> basis = traceless_site_basis(shape.d);
  std::vector<std::vector<int>> cones(shape.sites.size());
  for (size_t wi = 0; wi < shape.sites.size(); ++wi) {
    const int w = shape.sites[wi];
    for (const CMat& b : basis) {
      const CMat pull = phi.apply_adjoint(embed(b, shape.subset({w}), shape));
      for (size_t vi = 0; vi < shape.sites.size(); ++vi) {
        std::vector<int>& cone = cones[vi];
        if (std::find(cone.begin(), cone.end(), w) != cone.end()) continue;
        if (max_abs_entry(site_centered(pull, shape, shape.sites[vi])) > 1e-10)
          cone.push_back(w);
      }
    }
  }
  for (std::vector<int>& cone : cones) {
    std::sort(cone.begin(), cone.end());
    out.max_cone = std::max(out.max_cone, static_cast<int>(cone.size()));
    out.cones.push_back(std::move(cone));
  }

  const W1Certificate in_cert = w1_norm(xin, shape, opts);
  CMat y = phi.apply(xin);
  const cxd ytr = trace(y);
  for (int i = 0; i < y.dim(); ++i) y(i, i) -= ytr / static_cast<double>(y.dim());
  const W1Certificate out_cert = w1_primal(y, shape, opts);

  out.lhs = out_cert.value_upper;
  out.rhs = 2.0 * out.max_cone * in_cert.value_lower;
  out.input_gap = in_cert.gap();
  return out;
}

DifferentialStructure DifferentialStructure::modular(const DensityState& base,
                                                     const std::vector<JumpSpec>& jumps,
                                                     double cluster_tol) {
  DifferentialStructure ds{base.shape, base, {}};
  const EigResult e = herm_eig(base.matrix);
  const int dim = static_cast<int>(base.dim());
  if (e.eigenvalues.back() <= 1e-12)
    throw std::invalid_argument("DifferentialStructure: base state must be full rank");
  std::vector<double> lnmu(dim);
  for (int i = 0; i < dim; ++i) lnmu[i] = std::log(e.eigenvalues[i]);

  for (const JumpSpec& spec : jumps) {
    const CMat full = embed(spec.local, base.shape.subset(spec.sites), base.shape);
    const CMat tilde = adjoint(e.vectors) * full * e.vectors;
    const double scale = std::max(1e-300, fro_norm(tilde));

    struct El {
      double freq;
      int i, j;
    };
    std::vector<El> els;
    for (int j = 0; j < dim; ++j)
      for (int i = 0; i < dim; ++i)
        if (std::abs(tilde(i, j)) > 1e-13 * scale) els.push_back({lnmu[j] - lnmu[i], i, j});
    std::sort(els.begin(), els.end(), [](const El& a, const El& b) {
      if (a.freq != b.freq) return a.freq < b.freq;
      if (a.i != b.i) return a.i < b.i;
      return a.j < b.j;
    });

    size_t start = 0;
    while (start < els.size()) {
      size_t end = start + 1;
      while (end < els.size() && els[end].freq - els[end - 1].freq <= cluster_tol) ++end;
      double omega = 0.0;
      CMat comp_tilde(dim);
      for (size_t k = start; k < end; ++k) {
        omega += els[k].freq;
        comp_tilde(els[k].i, els[k].j) = tilde(els[k].i, els[k].j);
      }
      omega /= static_cast<double>(end - start);
      const CMat lk = e.vectors * comp_tilde * adjoint(e.vectors);
      ds.ops.push_back({lk, omega, spec.site, spec.support});
      start = end;
    }
  }
  return ds;
}

double DifferentialStructure::modular_defect() const {
  if (ops.empty()) return 0.0;
  const EigResult e = herm_eig(base.matrix);
  std::vector<double> inv(e.eigenvalues.size());
  for (size_t i = 0; i < inv.size(); ++i) inv[i] = 1.0 / e.eigenvalues[i];
  const CMat w = base.matrix;
  const CMat winv = from_eig(inv, e.vectors);
  double worst = 0.0;
  for (const LindbladOp& op : ops) {
    const CMat lhs = w * op.op * winv;
    const CMat rhs = std::exp(-op.omega) * op.op;
    worst = std::max(worst, fro_norm(lhs - rhs) / std::max(1e-300, fro_norm(op.op)));
  }
  return worst;
}

double DifferentialStructure::adjoint_closure_defect() const {
  double worst = 0.0;
  for (const LindbladOp& op : ops) {
    const CMat adj = adjoint(op.op);
    double best = fro_norm(adj);
    for (const LindbladOp& other : ops) {
      if (std::abs(other.omega + op.omega) > 1e-6) continue;
      best = std::min(best, fro_norm(adj - other.op));
    }
    worst = std::max(worst, best / std::max(1e-300, fro_norm(op.op)));
  }
  return worst;
}

double diff_lipschitz(const CMat& x, const DifferentialStructure& ds) {
  if (x.dim() != ds.shape.dim())
    throw std::invalid_argument("diff_lipschitz: operator dimension does not match the register");
  double s = 0.0;
  for (const LindbladOp& op : ds.ops) {
    const double dnorm = op_norm(commutator(op.op, x));
    s += (std::exp(-op.omega / 2.0) + std::exp(op.omega / 2.0)) * dnorm * dnorm;
  }
  return std::sqrt(s);
}

ComparisonCheck comparison_check(const CMat& h, const DifferentialStructure& ds) {
  if (ds.ops.empty())
    throw std::invalid_argument("comparison_check: differential structure has no operators");
  for (const LindbladOp& op : ds.ops) {
    if (op.support.empty())
      throw std::invalid_argument("comparison_check: operator is missing support metadata");
    const double lscale = std::max(1.0, fro_norm(op.op));
    for (int w : ds.shape.sites) {
      if (std::find(op.support.begin(), op.support.end(), w) != op.support.end()) continue;
      if (fro_norm(op.op - site_average(op.op, ds.shape, w)) > 1e-7 * lscale)
        throw std::invalid_argument(
            "comparison_check: operator acts outside its declared support at site " +
            std::to_string(w));
    }
  }

  ComparisonCheck out;
  out.lhs = diff_lipschitz(h, ds);

  double omega_max = 0.0, l_max = 0.0;
  size_t n_max = 0;
  std::vector<int> counts;
  for (const LindbladOp& op : ds.ops) {
    omega_max = std::max(omega_max, std::abs(op.omega));
    l_max = std::max(l_max, op_norm(op.op));
    n_max = std::max(n_max, op.support.size());
    bool found = false;
    for (size_t i = 0; i < counts.size(); i += 2)
      if (counts[i] == op.site) {
        ++counts[i + 1];
        found = true;
      }
    if (!found) {
      counts.push_back(op.site);
      counts.push_back(1);
    }
  }
  int gamma = 0;
  for (size_t i = 1; i < counts.size(); i += 2) gamma = std::max(gamma, counts[i]);

  const LipschitzBracket b = lip_const(h, ds.shape);
  const double n = static_cast<double>(ds.shape.num_sites());
  out.rhs = std::sqrt(n * gamma) * 2.0 * std::sqrt(2.0 * std::exp(omega_max / 2.0)) * l_max *
            static_cast<double>(n_max) * b.upper;
  return out;
}

}  // namespace qot
