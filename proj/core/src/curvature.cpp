#include "qot/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qot/eig.hpp"
#include "qot/recovery.hpp"
#include "qot/rng.hpp"
#include "qot/states.hpp"
#include "qot/tensor.hpp"

namespace qot {

namespace {

// Trace over the output factor of an in (x) out composite index.
CMat trace_out_factor(const CMat& z, int din, int dout) {
  CMat m(din);
  for (int i = 0; i < din; ++i)
    for (int j = 0; j < din; ++j) {
      cxd acc = 0.0;
      for (int o = 0; o < dout; ++o) acc += z(i * dout + o, j * dout + o);
      m(i, j) = acc;
    }
  return m;
}

// p (x) I_out on the composite index.
CMat expand_in_factor(const CMat& p, int dout) {
  const int din = p.dim();
  CMat d(din * dout);
  for (int i = 0; i < din; ++i)
    for (int j = 0; j < din; ++j) {
      const cxd v = p(i, j);
      if (v == cxd(0.0, 0.0)) continue;
      for (int o = 0; o < dout; ++o) d(i * dout + o, j * dout + o) = v;
    }
  return d;
}

double feasibility_defect(const CMat& z, const CMat& j) {
  const double a = lambda_min_herm(z - j);
  const double b = lambda_min_herm(z + j);
  return std::max(0.0, -std::min(a, b));
}

CMat outer(const std::vector<cxd>& v) {
  const int n = static_cast<int>(v.size());
  CMat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

CMat column_density(const CMat& vectors, int col) {
  const int n = vectors.dim();
  std::vector<cxd> v(n);
  for (int i = 0; i < n; ++i) v[i] = vectors(i, col);
  return outer(v);
}

double diamond_lower(const ChannelRep& a, const ChannelRep& b, const DiamondOptions& opts) {
  const int dd = a.in_dim() * a.in_dim();
  double best = 0.0;
  for (int r = 0; r < opts.lower_restarts; ++r) {
    Rng rng(opts.seed, 7000 + static_cast<uint64_t>(r));
    CMat rho = outer(haar_state(rng, dd));
    double last = -1.0;
    for (int it = 0; it < opts.lower_iters; ++it) {
      const CMat img = a.apply_doubled(rho) - b.apply_doubled(rho);
      const double val = trace_norm_herm(img);
      best = std::max(best, val);
      if (val <= last + 1e-12) break;
      last = val;
      // best dual observable for the current input, then best input for it
      const CMat w = sign_herm(img, 1e-14);
      CMat g = a.apply_doubled_adjoint(w) - b.apply_doubled_adjoint(w);
      g = 0.5 * (g + adjoint(g));
      rho = column_density(herm_eig(g).vectors, 0);
    }
  }
  return best;
}

// Minimizes lambda_max(Tr_out Z) over Z >= +-J starting from Z = |J|;
// every accepted iterate is kept exactly feasible, so the returned value is
// a sound upper bound regardless of how far the descent got.
double polish_upper(const CMat& j, int din, int dout, const DiamondOptions& opts,
                    double stop_below) {
  const int dim = din * dout;
  const CMat eye = CMat::identity(dim);
  CMat z = abs_herm(j);
  double best = lambda_max_herm(trace_out_factor(z, din, dout));
  for (int it = 0; it < opts.upper_iters && best > stop_below; ++it) {
    // shared slack against both constraints comes off for free
    const double slack =
        std::min(lambda_min_herm(z - j), lambda_min_herm(z + j));
    if (slack > 1e-13) {
      z += (-slack) * eye;
      best -= slack * dout;
    }
    const EigResult em = herm_eig(trace_out_factor(z, din, dout));
    const double top = em.eigenvalues[0];
    // averaged projector onto the top eigenvalue cluster, to keep the step
    // meaningful when the maximum is degenerate
    int cluster = 1;
    while (cluster < din && em.eigenvalues[cluster] > top - 1e-9 * std::max(1.0, std::abs(top)))
      ++cluster;
    CMat p(din);
    for (int c = 0; c < cluster; ++c) p += column_density(em.vectors, c);
    p *= 1.0 / cluster;
    const CMat dir = expand_in_factor(p, dout);
    const double scale = std::max(top - em.eigenvalues[din - 1], 1e-3 * std::abs(top));
    bool improved = false;
    for (double t = 0.5 * scale; t > 1e-4 * scale; t *= 0.3) {
      CMat cand = z + (-t) * dir;
      const double defect = feasibility_defect(cand, j);
      if (defect > 0.0) cand += (defect + 1e-13) * eye;
      const double f = lambda_max_herm(trace_out_factor(cand, din, dout));
      if (f < best - 1e-13) {
        z = cand;
        best = f;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  const double defect = feasibility_defect(z, j);
  if (defect > 0.0) z += (defect + 1e-13) * eye;
  return lambda_max_herm(trace_out_factor(z, din, dout));
}

}  // namespace

DiamondBounds diamond_norm_diff(const ChannelRep& a, const ChannelRep& b,
                                const DiamondOptions& opts) {
  if (!(a.in_shape == b.in_shape) || !(a.out_shape == b.out_shape))
    throw std::invalid_argument("diamond_norm_diff: register mismatch");
  DiamondBounds out;
  CMat j = a.choi - b.choi;
  if (max_abs_entry(j) < 1e-15) {
    out.tight = true;
    return out;
  }
  j = 0.5 * (j + adjoint(j));
  out.lower = diamond_lower(a, b, opts);
  out.upper =
      polish_upper(j, a.in_dim(), a.out_dim(), opts, out.lower + 0.5 * opts.target_gap);
  // a difference of two channels can never exceed 2, so cap a stalled descent
  out.upper = std::min(out.upper, 2.0);
  if (out.lower > out.upper) {
    if (out.lower - out.upper > 1e-8 * std::max(1.0, out.upper))
      throw std::logic_error("diamond_norm_diff: certified bounds crossed");
    out.lower = out.upper;
  }
  out.tight = (out.upper - out.lower) <= std::max(opts.target_gap, 1e-9 * out.upper);
  return out;
}

double lambert_w(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("lambert_w: argument must be nonnegative");
  if (x == 0.0) return 0.0;
  double w = std::log1p(x);
  for (int it = 0; it < 200; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::abs(f) <= 1e-14 * std::max(1.0, x)) break;
    w -= f / (ew * (1.0 + w));
  }
  return w;
}

BetaCritical beta_critical(int neighborhood, int d, double max_term_norm) {
  if (neighborhood <= 1)
    throw std::invalid_argument(
        "beta_critical: neighborhood size must exceed 1, single sites carry no "
        "interaction scale");
  if (d < 2) throw std::invalid_argument("beta_critical: local dimension must be at least 2");
  if (!(max_term_norm > 0.0))
    throw std::invalid_argument("beta_critical: term norm must be positive");
  BetaCritical out;
  out.neighborhood = neighborhood;
  out.d = d;
  out.max_term_norm = max_term_norm;
  const double dd = static_cast<double>(d);
  out.beta_c = lambert_w(1.0 / (16.0 * dd * dd * dd)) / (5.0 * neighborhood * max_term_norm);
  return out;
}

double tci_curvature_bound(int n, int neighborhood, double kappa) {
  if (n < 1 || neighborhood < 1)
    throw std::invalid_argument("tci_curvature_bound: register and neighborhood must be nonempty");
  if (!(kappa > 0.0))
    throw std::invalid_argument("tci_curvature_bound: contraction rate must be positive");
  const double denom = 1.0 - std::exp(-kappa);
  return 2.0 * n * static_cast<double>(neighborhood) * neighborhood / (denom * denom);
}

namespace {

std::vector<int> neighborhood_of(const HypergraphHamiltonian& ham, int v) {
  std::vector<int> nb;
  for (int s : ham.shape.sites) {
    bool in = (s == v);
    for (const HamTerm& t : ham.terms) {
      if (in) break;
      bool has_v = false, has_s = false;
      for (int u : t.sites) {
        has_v = has_v || (u == v);
        has_s = has_s || (u == s);
      }
      in = has_v && has_s;
    }
    if (in) nb.push_back(s);
  }
  return nb;
}

void require_commuting(const HypergraphHamiltonian& ham) {
  const RegisterShape& shape = ham.shape;
  for (size_t s = 0; s + 1 < ham.terms.size(); ++s)
    for (size_t t = s + 1; t < ham.terms.size(); ++t) {
      std::vector<int> joint;
      for (int u : shape.sites) {
        const auto& a = ham.terms[s].sites;
        const auto& b = ham.terms[t].sites;
        if (std::find(a.begin(), a.end(), u) != a.end() ||
            std::find(b.begin(), b.end(), u) != b.end())
          joint.push_back(u);
      }
      const RegisterShape js = shape.subset(joint);
      const CMat ea = embed(ham.terms[s].matrix, RegisterShape(shape.d, ham.terms[s].sites), js);
      const CMat eb = embed(ham.terms[t].matrix, RegisterShape(shape.d, ham.terms[t].sites), js);
      if (max_abs_entry(ea * eb - eb * ea) > 1e-10)
        throw std::invalid_argument("contraction_coefficient: Hamiltonian terms do not commute");
    }
}

}  // namespace

ContractionEstimate contraction_coefficient(const HypergraphHamiltonian& ham, double beta,
                                            const ContractionOptions& opts) {
  const RegisterShape& shape = ham.shape;
  const int n = static_cast<int>(shape.sites.size());
  if (n < 1) throw std::invalid_argument("contraction_coefficient: empty register");
  require_commuting(ham);

  const DensityState omega = gibbs_state(ham, beta);
  ContractionEstimate out;

  // per-site rebuild-vs-replace diamond bounds on the interaction neighborhood
  std::vector<std::vector<int>> neighborhoods(n);
  for (int vi = 0; vi < n; ++vi) {
    neighborhoods[vi] = neighborhood_of(ham, shape.sites[vi]);
    out.neighborhood_max =
        std::max(out.neighborhood_max, static_cast<int>(neighborhoods[vi].size()));
  }
  out.diamond_terms.assign(n, 0.0);
  for (int wi = 0; wi < n; ++wi) {
    const int w = shape.sites[wi];
    const std::vector<int>& nb = neighborhoods[wi];
    if (nb.size() <= 1) continue;  // no interactions: the rebuild is the replacer
    const RegisterShape nb_shape = shape.subset(nb);
    std::vector<int> kept;
    for (int u : nb)
      if (u != w) kept.push_back(u);
    const RecoveryMap rec = petz_rotated(marginal(omega, nb), kept, {w}, opts.tol);
    if (!rec.channel.has_value())
      throw std::logic_error("contraction_coefficient: rebuild channel not materialized");
    const ChannelRep rebuild = partial_trace_channel(nb_shape, {w}).then(*rec.channel);
    const ChannelRep replace =
        partial_trace_channel(nb_shape, {w})
            .then(append_state_channel(shape.subset(kept), marginal(omega, {w}), nb_shape));
    out.diamond_terms[wi] = diamond_norm_diff(rebuild, replace, opts.diamond).upper;
  }

  const double nn = static_cast<double>(n);
  const int bigN = std::max(out.neighborhood_max, 1);
  out.site_upper.assign(n, 0.0);
  for (int vi = 0; vi < n; ++vi) {
    double sum = 0.0;
    for (int wi = 0; wi < n; ++wi) {
      if (wi == vi) continue;
      const std::vector<int>& nb = neighborhoods[vi];
      if (std::find(nb.begin(), nb.end(), shape.sites[wi]) == nb.end()) continue;
      sum += out.diamond_terms[wi];
    }
    out.site_upper[vi] = 1.0 - 1.0 / nn + (2.0 * bigN - 1.0) / nn * sum;
  }
  out.upper = *std::max_element(out.site_upper.begin(), out.site_upper.end());
  out.kappa_implied = nn * (1.0 - out.upper);

  if (n == 1) {
    out.upper = 0.0;
    out.site_upper.assign(1, 0.0);
    out.kappa_implied = 1.0;
    return out;  // any traceless input is annihilated, nothing to search
  }

  // witness search: single-site state pairs tensor an environment, polished
  // by alternating eigenvector updates against the trace-norm objective
  const ChannelRep psi = psi_avg(omega, opts.tol);
  double best_proxy = -1.0;
  int best_site = -1;
  CMat best_x(1);
  for (int vi = 0; vi < n; ++vi) {
    const int v = shape.sites[vi];
    const RegisterShape vs = shape.subset({v});
    const RegisterShape rest = shape.complement({v});
    const int drest = static_cast<int>(rest.dim());
    for (int r = 0; r < opts.restarts; ++r) {
      Rng rng(opts.seed, static_cast<uint64_t>(vi) * 1000003 + static_cast<uint64_t>(r));
      CMat delta = outer(haar_state(rng, shape.d)) - outer(haar_state(rng, shape.d));
      CMat tau = random_density(rng, drest);
      CMat x = embed(delta, vs, shape) * embed(tau, rest, shape);
      double last = -1.0;
      for (int sweep = 0; sweep < opts.sweeps; ++sweep) {
        const CMat img = psi.apply(x);
        const double den = trace_norm_herm(x);
        if (den < 1e-12) break;
        const double val = trace_norm_herm(img) / den;
        if (val > best_proxy) {
          best_proxy = val;
          best_site = vi;
          best_x = (2.0 / den) * x;
        }
        if (val <= last + 1e-11) break;
        last = val;
        const CMat w = sign_herm(img, 1e-14);
        const CMat y = psi.apply_adjoint(w);
        CMat t = partial_trace(embed(tau, rest, shape) * y, shape, rest.sites);
        t = 0.5 * (t + adjoint(t));
        const EigResult et = herm_eig(t);
        delta = column_density(et.vectors, 0) - column_density(et.vectors, shape.d - 1);
        CMat s = partial_trace(embed(delta, vs, shape) * y, shape, {v});
        s = 0.5 * (s + adjoint(s));
        tau = column_density(herm_eig(s).vectors, 0);
        x = embed(delta, vs, shape) * embed(tau, rest, shape);
      }
    }
  }
  if (best_site >= 0) {
    const double den = w1_norm(best_x, shape, opts.w1).value_upper;
    if (den > 1e-12) {
      out.lower = w1_norm(psi.apply(best_x), shape, opts.w1).value_lower / den;
      out.witness_site = shape.sites[best_site];
      out.witness = best_x;
    }
  }
  return out;
}

}  // namespace qot
