#include "qot/dobrushin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qot/channel.hpp"
#include "qot/eig.hpp"
#include "qot/recovery.hpp"
#include "qot/rng.hpp"
#include "qot/tensor.hpp"

namespace qot {

int ChainPartition::max_block() const {
  int k = 0;
  for (const std::vector<int>& b : blocks) k = std::max(k, static_cast<int>(b.size()));
  return k;
}

void ChainPartition::validate(const RegisterShape& shape) const {
  if (blocks.empty()) throw std::invalid_argument("ChainPartition: no blocks");
  std::vector<int> flat;
  for (const std::vector<int>& b : blocks) {
    if (b.empty()) throw std::invalid_argument("ChainPartition: empty block");
    flat.insert(flat.end(), b.begin(), b.end());
  }
  if (flat != shape.sites)
    throw std::invalid_argument(
        "ChainPartition: blocks must tile the register in order");
}

namespace {

// The map carrying the state of block b-1 into block b: rebuild block b from
// its predecessor, then discard the predecessor.  Built from the two-block
// marginal; the Markov locality precondition makes this the restriction of
// the full-prefix map.
ChannelRep propagation_map(const DensityState& omega, const ChainPartition& part, int b,
                           double tol) {
  const std::vector<int>& prev = part.blocks[static_cast<size_t>(b) - 1];
  const std::vector<int>& cur = part.blocks[static_cast<size_t>(b)];
  std::vector<int> joint = prev;
  joint.insert(joint.end(), cur.begin(), cur.end());
  const RegisterShape joint_shape = omega.shape.subset(joint);
  const RecoveryMap rec = petz_rotated(marginal(omega, joint), prev, cur, tol);
  if (!rec.channel.has_value())
    throw std::logic_error("propagation_map: recovery channel not materialized");
  return rec.channel->then(partial_trace_channel(joint_shape, prev));
}

void require_markov(const DensityState& omega, const ChainPartition& part, double tol) {
  for (int b = 2; b < part.count(); ++b)
    if (!markov_locality_check(omega, part.blocks, b, tol))
      throw std::domain_error(
          "eta estimation: recovery map leaks outside the predecessor block");
}

}  // namespace

EtaEstimate eta_diamond(const DensityState& omega, const ChainPartition& part, double tol,
                        const DiamondOptions& dopts) {
  part.validate(omega.shape);
  require_markov(omega, part, tol);
  EtaEstimate out;
  out.method = EtaMethod::diamond_bound;
  out.per_block.assign(part.blocks.size(), 0.0);
  for (int b = 1; b < part.count(); ++b) {
    const ChannelRep phi = propagation_map(omega, part, b, tol);
    const ChannelRep rep =
        replacer_channel(phi.in_shape, marginal(omega, part.blocks[static_cast<size_t>(b)]));
    out.per_block[static_cast<size_t>(b)] = diamond_norm_diff(phi, rep, dopts).upper;
  }
  out.eta = *std::max_element(out.per_block.begin(), out.per_block.end());
  return out;
}

EtaEstimate eta_from_maxdiv(const DensityState& omega, const ChainPartition& part) {
  part.validate(omega.shape);
  EtaEstimate out;
  out.method = EtaMethod::maxdiv_bound;
  out.per_block.assign(part.blocks.size(), 0.0);
  double a = 0.0;
  for (int b = 0; b + 1 < part.count(); ++b) {
    const std::vector<int>& cur = part.blocks[static_cast<size_t>(b)];
    const std::vector<int>& next = part.blocks[static_cast<size_t>(b) + 1];
    std::vector<int> joint = cur;
    joint.insert(joint.end(), next.begin(), next.end());
    const CMat prod = kron(marginal(omega, cur).matrix, marginal(omega, next).matrix);
    const double ab = max_divergence(prod, marginal(omega, joint).matrix);
    out.per_block[static_cast<size_t>(b) + 1] = ab;
    a = std::max(a, ab);
  }
  out.a = a;
  if (a < 0.5) {
    out.eta = std::sqrt(2.0 * a);
    out.condition_met = true;
  } else {
    out.eta = 1.0;
    out.condition_met = false;
  }
  return out;
}

EtaEstimate eta_empirical(const DensityState& omega, const ChainPartition& part, int trials,
                          uint64_t seed, double tol) {
  part.validate(omega.shape);
  if (trials < 1) throw std::invalid_argument("eta_empirical: need at least one trial");
  require_markov(omega, part, tol);
  EtaEstimate out;
  out.method = EtaMethod::empirical_lower;
  out.per_block.assign(part.blocks.size(), 0.0);
  for (int b = 1; b < part.count(); ++b) {
    const ChannelRep phi = propagation_map(omega, part, b, tol);
    const int din = phi.in_dim();
    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
      Rng rng(seed, static_cast<uint64_t>(b) * 100003 + static_cast<uint64_t>(t));
      const CMat delta =
          haar_pure_density(rng, din) - haar_pure_density(rng, din);
      const double den = trace_norm_herm(delta);
      if (den < 1e-12) continue;
      best = std::max(best, trace_norm_herm(phi.apply(delta)) / den);
    }
    out.per_block[static_cast<size_t>(b)] = best;
    out.eta = std::max(out.eta, best);
  }
  return out;
}

double tci_markov_bound(const ChainPartition& part, double eta) {
  if (!(eta >= 0.0 && eta < 1.0))
    throw std::invalid_argument("tci_markov_bound: eta must lie in [0, 1)");
  const double m = part.count();
  const double k = part.max_block();
  const double f = 1.0 / (1.0 - eta) + 1.0;
  return 2.0 * m * k * k * f * f;
}

double tci_markov_refined(double rel_entropy, const ChainPartition& part, double eta) {
  if (!(eta >= 0.0 && eta < 1.0))
    throw std::invalid_argument("tci_markov_refined: eta must lie in [0, 1)");
  if (!(rel_entropy >= 0.0))
    throw std::invalid_argument("tci_markov_refined: negative relative entropy");
  const double m = part.count();
  const double k = part.max_block();
  return k * (1.0 / (1.0 - eta) + 1.0) * 2.0 * m * std::sqrt(1.0 - std::exp(-rel_entropy / m));
}

NonMarkovBound tci_nonmarkov_bound(int n, double c, double eta) {
  if (n < 1) throw std::invalid_argument("tci_nonmarkov_bound: empty chain");
  if (!(c >= 0.0)) throw std::invalid_argument("tci_nonmarkov_bound: negative amplitude");
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("tci_nonmarkov_bound: eta must lie in (0, 1)");
  const double cg = std::max(c, 1e-12);
  const double term = -std::log(cg * cg * n) / (2.0 * std::log(eta));
  NonMarkovBound out;
  out.k0 = static_cast<long long>(std::ceil(term));
  const double base = 2.0 + (c + 1.0) / (1.0 - eta) + term;
  out.value = 8.0 * n * base * base;
  return out;
}

TciReport verify_tci_empirical(const DensityState& omega, double constant, int trials,
                               uint64_t seed, const W1Options& w1) {
  if (!(constant > 0.0))
    throw std::invalid_argument("verify_tci_empirical: constant must be positive");
  if (trials < 1) throw std::invalid_argument("verify_tci_empirical: need at least one trial");
  TciReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.constant = constant;
  rep.pass = true;
  const int dim = static_cast<int>(omega.shape.dim());
  for (int t = 0; t < trials; ++t) {
    Rng rng(seed, static_cast<uint64_t>(t));
    const double lam = rng.uniform();
    CMat mix = haar_pure_density(rng, dim);
    mix *= lam;
    mix += (1.0 - lam) * omega.matrix;
    const DensityState rho = DensityState::make(omega.shape, mix);
    const double s = rel_entropy(rho.matrix, omega.matrix);
    if (!(s > 1e-12)) continue;
    ++rep.used;
    const W1Certificate cert = w1_distance(rho, omega, w1);
    const double ru = cert.value_upper * cert.value_upper / s;
    const double rl = cert.value_lower * cert.value_lower / s;
    rep.max_ratio_upper = std::max(rep.max_ratio_upper, ru);
    rep.max_ratio_lower = std::max(rep.max_ratio_lower, rl);
    if (ru <= constant + 1e-6) ++rep.strict;
    if (rl > constant + 1e-6) rep.pass = false;
  }
  return rep;
}

}  // namespace qot
