#include "qot/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "qot/eig.hpp"
#include "qot/matfun.hpp"
#include "qot/tensor.hpp"

namespace qot {

namespace {

// For each index of `sub`, the contribution it makes to a composite index of
// `full` when the remaining digits are zero.  full(a, b) = spread_a[a] +
// spread_b[b] for complementary sub-registers a, b of full.
std::vector<long long> spread_indices(const RegisterShape& sub, const RegisterShape& full) {
  const int k = sub.num_sites();
  const int n = full.num_sites();
  std::vector<long long> stride(k);
  for (int j = 0; j < k; ++j) {
    long long s = 1;
    for (int p = full.pos(sub.sites[j]) + 1; p < n; ++p) s *= full.d;
    stride[j] = s;
  }
  std::vector<long long> out(static_cast<size_t>(sub.dim()));
  for (long long idx = 0; idx < sub.dim(); ++idx) {
    long long rem = idx, val = 0;
    for (int j = k - 1; j >= 0; --j) {
      val += (rem % sub.d) * stride[j];
      rem /= sub.d;
    }
    out[static_cast<size_t>(idx)] = val;
  }
  return out;
}

// Register-ordered sublist of shape's sites contained in `labels`; validates
// that every label exists and appears once.
std::vector<int> ordered_sublist(const RegisterShape& shape, const std::vector<int>& labels,
                                 const char* what) {
  for (int l : labels) shape.pos(l);  // throws on unknown labels
  std::vector<int> out;
  for (int s : shape.sites) {
    int hits = 0;
    for (int l : labels)
      if (l == s) ++hits;
    if (hits > 1) throw std::invalid_argument(std::string(what) + ": duplicate site label");
    if (hits == 1) out.push_back(s);
  }
  if (out.size() != labels.size())
    throw std::invalid_argument(std::string(what) + ": duplicate site label");
  return out;
}

// Eigendecomposition with small eigenvalues floored and the trace restored
// to one; sets *clipped when the floor engaged.
EigResult floored_eig(const CMat& m, bool* clipped) {
  EigResult e = herm_eig(m);
  const double floor = 1e-12 * std::max(e.eigenvalues.front(), 0.0);
  if (floor <= 0.0)
    throw std::domain_error("recovery: reference state has no positive spectrum");
  bool hit = false;
  for (double& l : e.eigenvalues)
    if (l < floor) {
      l = floor;
      hit = true;
    }
  if (hit) {
    *clipped = true;
    double s = 0.0;
    for (double l : e.eigenvalues) s += l;
    for (double& l : e.eigenvalues) l /= s;
  }
  return e;
}

void validate_partition(const RegisterShape& shape, const std::vector<std::vector<int>>& blocks,
                        const char* what) {
  if (blocks.empty()) throw std::invalid_argument(std::string(what) + ": empty partition");
  std::vector<int> flat;
  for (const std::vector<int>& b : blocks) {
    if (b.empty()) throw std::invalid_argument(std::string(what) + ": empty block");
    flat.insert(flat.end(), b.begin(), b.end());
  }
  if (flat != shape.sites)
    throw std::invalid_argument(std::string(what) +
                                ": blocks must list the register's sites in order");
}

}  // namespace

CMat RecoveryMap::apply(const CMat& x) const {
  if (x.dim() != in_shape.dim())
    throw std::invalid_argument("RecoveryMap::apply: operator does not match the input register");
  CMat out(static_cast<int>(out_shape.dim()));
  for (const CMat& k : kraus) out += k * x * adjoint(k);
  return out;
}

RecoveryMap petz_rotated(const DensityState& omega, const std::vector<int>& kept,
                         const std::vector<int>& recovered, double tol) {
  if (!(tol > 0.0) || tol > 1e-2)
    throw std::invalid_argument("petz_rotated: tolerance must lie in (0, 1e-2]");
  const std::vector<int> a_sites = ordered_sublist(omega.shape, kept, "petz_rotated kept");
  const std::vector<int> b_sites = ordered_sublist(omega.shape, recovered, "petz_rotated recovered");
  for (int a : a_sites)
    for (int b : b_sites)
      if (a == b) throw std::invalid_argument("petz_rotated: kept and recovered sites overlap");

  std::vector<int> uni;
  for (int s : omega.shape.sites) {
    const bool in_a = std::find(a_sites.begin(), a_sites.end(), s) != a_sites.end();
    const bool in_b = std::find(b_sites.begin(), b_sites.end(), s) != b_sites.end();
    if (in_a || in_b) uni.push_back(s);
  }

  RecoveryMap rec;
  rec.kept = a_sites;
  rec.recovered = b_sites;
  rec.in_shape = omega.shape.subset(a_sites);
  rec.out_shape = omega.shape.subset(uni);
  rec.rule = recovery_weight_rule(tol);

  const DensityState mab = marginal(omega, uni);
  const EigResult eab = floored_eig(mab.matrix, &rec.clipped);
  const CMat omega_ab = from_eig(eab.eigenvalues, eab.vectors);
  rec.base = DensityState{rec.out_shape, omega_ab};

  const CMat omega_a = partial_trace(omega_ab, rec.out_shape, b_sites);
  const EigResult ea = floored_eig(omega_a, &rec.clipped);

  const RegisterShape b_shape = omega.shape.subset(b_sites);
  const int da = static_cast<int>(rec.in_shape.dim());
  const int db = static_cast<int>(b_shape.dim());
  const int dab = static_cast<int>(rec.out_shape.dim());
  const std::vector<long long> spread_a = spread_indices(rec.in_shape, rec.out_shape);
  const std::vector<long long> spread_b = spread_indices(b_shape, rec.out_shape);

  const double wsum = rec.rule.weight_sum();
  rec.kraus.reserve(rec.rule.nodes.size() * static_cast<size_t>(db));
  for (size_t qn = 0; qn < rec.rule.nodes.size(); ++qn) {
    const double t = rec.rule.nodes[qn];
    const double sw = std::sqrt(rec.rule.weights[qn] / wsum);
    const CMat p = mat_power_from_eig(eab, cxd(0.5, -0.5 * t));
    const CMat q = mat_power_from_eig(ea, cxd(-0.5, 0.5 * t));
    for (int b = 0; b < db; ++b) {
      CMat k(dab, da);
      for (int acol = 0; acol < da; ++acol) {
        cxd* kc = k.col(acol);
        for (int m = 0; m < da; ++m) {
          const cxd f = q(m, acol) * sw;
          if (f == cxd(0.0, 0.0)) continue;
          const cxd* pc = p.col(static_cast<int>(spread_a[m] + spread_b[b]));
          for (int r = 0; r < dab; ++r) kc[r] += pc[r] * f;
        }
      }
      rec.kraus.push_back(std::move(k));
    }
  }

  // trace preservation is an algebraic identity of the construction, so a
  // noticeable defect means the build above is wrong, not the data
  CMat tp(da);
  for (const CMat& k : rec.kraus) tp += adjoint(k) * k;
  if (max_abs_entry(tp - CMat::identity(da)) > 1e-7)
    throw std::logic_error("petz_rotated: Kraus family lost trace preservation");

  if (static_cast<long long>(da) * dab <= kRecoveryChoiLimit)
    rec.channel = ChannelRep::from_kraus(rec.in_shape, rec.out_shape, rec.kraus);

  const CMat fixed = rec.apply(omega_a);
  if (trace_norm_herm(fixed - omega_ab) > 10.0 * tol)
    throw std::logic_error("petz_rotated: fixed point check failed beyond quadrature slack");
  return rec;
}

ChannelRep psi_v(const DensityState& omega, int v, double tol) {
  const RegisterShape& shape = omega.shape;
  shape.pos(v);
  const RecoveryMap rec = petz_rotated(omega, shape.complement({v}).sites, {v}, tol);
  if (!rec.channel)
    throw std::invalid_argument("psi_v: register too large to materialize the channel");
  return partial_trace_channel(shape, {v}).then(*rec.channel);
}

ChannelRep psi_avg(const DensityState& omega, double tol) {
  std::vector<ChannelRep> parts;
  parts.reserve(omega.shape.sites.size());
  for (int v : omega.shape.sites) parts.push_back(psi_v(omega, v, tol));
  return mixture_channel(parts);
}

RecoverabilityGap recoverability_gap(const DensityState& rho, const DensityState& omega,
                                     const std::vector<int>& kept,
                                     const std::vector<int>& recovered, double tol) {
  if (!(rho.shape == omega.shape))
    throw std::invalid_argument("recoverability_gap: states live on different registers");
  const RecoveryMap rec = petz_rotated(omega, kept, recovered, tol);

  const std::vector<int> uni = rec.out_shape.sites;
  const CMat rab = marginal(rho, uni).matrix;
  const CMat ra = marginal(rho, rec.kept).matrix;
  const CMat oab = marginal(omega, uni).matrix;
  const CMat oa = marginal(omega, rec.kept).matrix;

  RecoverabilityGap g;
  const double sab = rel_entropy(rab, oab);
  const double sa = rel_entropy(ra, oa);
  g.entropy_drop = std::isinf(sab) ? sab : sab - sa;
  const double dist = trace_norm_herm(rab - rec.apply(ra));
  g.pinsker_rhs = 0.5 * dist * dist;
  return g;
}

ChainRecoveryBounds chain_recovery_bounds(const DensityState& rho, const DensityState& omega,
                                          const std::vector<std::vector<int>>& partition,
                                          double tol) {
  if (!(rho.shape == omega.shape))
    throw std::invalid_argument("chain_recovery_bounds: states live on different registers");
  validate_partition(rho.shape, partition, "chain_recovery_bounds");

  ChainRecoveryBounds out;
  out.blocks = static_cast<int>(partition.size());
  out.rel_entropy_total = rel_entropy(rho.matrix, omega.matrix);

  std::vector<int> prefix;
  for (const std::vector<int>& block : partition) {
    const RecoveryMap rec = petz_rotated(omega, prefix, block, tol);
    const CMat rho_prev = marginal(rho, prefix).matrix;
    prefix.insert(prefix.end(), block.begin(), block.end());
    const CMat rho_cur = marginal(rho, prefix).matrix;
    out.sum_dists += trace_norm_herm(rho_cur - rec.apply(rho_prev));
  }

  const double m = static_cast<double>(out.blocks);
  out.bound1 = out.sum_dists * out.sum_dists / (2.0 * m);
  out.bound2 = (out.sum_dists / (2.0 * m)) * (out.sum_dists / (2.0 * m));

  const double slack = 10.0 * tol * (1.0 + 2.0 * out.sum_dists) + 1e-12;
  if (out.rel_entropy_total + slack < out.bound1)
    throw std::logic_error("chain_recovery_bounds: relative entropy " +
                           std::to_string(out.rel_entropy_total) +
                           " fell below the recovery defect bound " + std::to_string(out.bound1));
  if (out.bound2 > 1.0 - std::exp(-out.rel_entropy_total / m) + slack)
    throw std::logic_error("chain_recovery_bounds: squared defect bound " +
                           std::to_string(out.bound2) + " exceeds its exponential cap");
  return out;
}

bool markov_locality_check(const DensityState& omega,
                           const std::vector<std::vector<int>>& partition, int block,
                           double tol) {
  validate_partition(omega.shape, partition, "markov_locality_check");
  if (block < 0 || block >= static_cast<int>(partition.size()))
    throw std::invalid_argument("markov_locality_check: block index out of range");
  if (block <= 1) return true;  // nothing to the left of the conditioning block

  std::vector<int> prefix;
  for (int i = 0; i + 2 <= block; ++i)
    prefix.insert(prefix.end(), partition[i].begin(), partition[i].end());
  const std::vector<int>& mid = partition[block - 1];
  const std::vector<int>& last = partition[block];

  const double cmi = conditional_mutual_information(omega, prefix, last, mid);
  if (cmi > tol) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "markov_locality_check: conditional mutual information %g exceeds tolerance "
                  "%g; the factorization precondition fails",
                  cmi, tol);
    throw std::domain_error(msg);
  }

  std::vector<int> a_full = prefix;
  a_full.insert(a_full.end(), mid.begin(), mid.end());
  const RecoveryMap full_map = petz_rotated(omega, a_full, last, tol);
  if (!full_map.channel)
    throw std::invalid_argument("markov_locality_check: register too large to compare");
  const RecoveryMap small_map = petz_rotated(omega, mid, last, tol);

  // identity-extended reduced map on the same registers as the full one
  const int dpre = static_cast<int>(omega.shape.subset(prefix).dim());
  std::vector<CMat> ext;
  ext.reserve(small_map.kraus.size());
  for (const CMat& k : small_map.kraus) ext.push_back(kron(CMat::identity(dpre), k));
  const ChannelRep ext_ch =
      ChannelRep::from_kraus(full_map.in_shape, full_map.out_shape, ext);

  return max_abs_entry(full_map.channel->choi - ext_ch.choi) <= 10.0 * tol;
}

}  // namespace qot
