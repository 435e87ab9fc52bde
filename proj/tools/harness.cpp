#include "harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qot/concentration.hpp"
#include "qot/curvature.hpp"
#include "qot/dobrushin.hpp"
#include "qot/eig.hpp"
#include "qot/ensembles.hpp"
#include "qot/matrix.hpp"
#include "qot/recovery.hpp"
#include "qot/rng.hpp"
#include "qot/states.hpp"
#include "qot/tensor.hpp"
#include "qot/w1.hpp"

namespace qot::harness {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw std::invalid_argument(path + ": " + msg);
}

const json& field(const json& obj, const std::string& path, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required field");
  return *it;
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) fail(path + "." + it.key(), "unknown field");
  }
}

long long as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<long long>();
}

double as_num(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, "expected a finite number");
  return x;
}

std::string as_str(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

// row-major array of rows, each entry a [re, im] pair
CMat parse_matrix(const json& v, const std::string& path, long long dim) {
  if (!v.is_array() || static_cast<long long>(v.size()) != dim)
    fail(path, "expected " + std::to_string(dim) + " rows");
  CMat m(static_cast<int>(dim));
  for (long long r = 0; r < dim; ++r) {
    const json& row = v[static_cast<size_t>(r)];
    std::string rp = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<long long>(row.size()) != dim)
      fail(rp, "expected " + std::to_string(dim) + " entries");
    for (long long c = 0; c < dim; ++c) {
      const json& e = row[static_cast<size_t>(c)];
      std::string ep = rp + "[" + std::to_string(c) + "]";
      if (!e.is_array() || e.size() != 2) fail(ep, "expected a [re, im] pair");
      m(static_cast<int>(r), static_cast<int>(c)) =
          cxd(as_num(e[0], ep + "[0]"), as_num(e[1], ep + "[1]"));
    }
  }
  return m;
}

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string beta_tag(double beta) { return "[beta=" + fmt_g(beta) + "]"; }

// effort levels tuned so a demo run finishes in well under a minute
W1Options quick_w1() {
  W1Options o;
  o.dual_steps = 60;
  o.lip_refine = 4;
  o.lip_refine_final = 24;
  return o;
}

ContractionOptions quick_contraction(double tol) {
  ContractionOptions o;
  o.tol = tol;
  o.restarts = 4;
  o.sweeps = 30;
  o.w1 = quick_w1();
  o.w1.dual_steps = 40;
  return o;
}

ChainPartition singleton_partition(const RegisterShape& shape) {
  ChainPartition part;
  for (int s : shape.sites) part.blocks.push_back({s});
  return part;
}

// one certified transport-entropy constant per beta, shared across tasks
struct CertScan {
  bool available = false;
  double c = 0.0;
  std::string method;
  JsonValue methods = JsonValue::object();
};

struct RunCtx {
  const ExperimentConfig& cfg;
  RegisterShape shape;
  HypergraphHamiltonian ham;
  std::map<double, CertScan> scans;

  explicit RunCtx(const ExperimentConfig& c) : cfg(c), shape(c.shape()), ham(c.hamiltonian()) {}

  const CertScan& scan(double beta);
};

const CertScan& RunCtx::scan(double beta) {
  auto it = scans.find(beta);
  if (it != scans.end()) return it->second;

  CertScan out;
  DensityState omega = gibbs_state(ham, beta);
  int n = shape.num_sites();

  auto offer = [&](const char* key, double c) {
    out.methods.set(key, JsonValue::num(c));
    if (!out.available || c < out.c) {
      out.available = true;
      out.c = c;
      out.method = key;
    }
  };

  bool single_site_only = true;
  for (const auto& t : ham.terms)
    if (t.sites.size() > 1) single_site_only = false;
  if (cfg.d == 2 && single_site_only) {
    offer("product", 0.5 * n);
  } else {
    out.methods.set("product",
                    JsonValue::str("inapplicable: needs single-site terms on qubits"));
  }

  if (n >= 2) {
    try {
      EtaEstimate dia = eta_diamond(omega, singleton_partition(shape), cfg.tol_quadrature);
      out.methods.set("markov_eta", JsonValue::num(dia.eta));
      if (dia.eta < 1.0) {
        offer("markov", tci_markov_bound(singleton_partition(shape), dia.eta));
      } else {
        out.methods.set("markov", JsonValue::str("inapplicable: eta >= 1"));
      }
    } catch (const std::exception& e) {
      out.methods.set("markov", JsonValue::str(std::string("inapplicable: ") + e.what()));
    }
  } else {
    out.methods.set("markov", JsonValue::str("inapplicable: needs at least two sites"));
  }

  if (ham.is_commuting(1e-10)) {
    try {
      ContractionEstimate est = contraction_coefficient(ham, beta, quick_contraction(cfg.tol_quadrature));
      out.methods.set("curvature_upper", JsonValue::num(est.upper));
      if (est.upper < 1.0 && est.kappa_implied > 0.0) {
        offer("curvature", tci_curvature_bound(n, est.neighborhood_max, est.kappa_implied));
      } else {
        out.methods.set("curvature", JsonValue::str("inapplicable: no contraction at this beta"));
      }
    } catch (const std::exception& e) {
      out.methods.set("curvature", JsonValue::str(std::string("inapplicable: ") + e.what()));
    }
  } else {
    out.methods.set("curvature", JsonValue::str("inapplicable: terms do not commute"));
  }

  return scans.emplace(beta, std::move(out)).first->second;
}

void push(TaskReport& tr, AssertionRecord rec) { tr.assertions.push_back(std::move(rec)); }

// random pair differing only on the register's first site, so the transport
// value has the closed form half trace norm
struct SiteDiffPair {
  DensityState rho;
  DensityState sigma;
  double half_trace_norm = 0.0;
};

SiteDiffPair make_site_diff_pair(const RegisterShape& shape, std::uint64_t seed, std::uint64_t stream) {
  Rng rng(seed, stream);
  int dim = static_cast<int>(shape.dim());
  int v = shape.sites.front();
  CMat rho = random_density(rng, dim);
  CMat rest = partial_trace(rho, shape, {v});
  CMat tau = random_density(rng, shape.d);
  CMat sig = kron(tau, rest);  // site v is the most significant digit
  SiteDiffPair out{DensityState::make(shape, rho), DensityState::make(shape, sig), 0.0};
  out.half_trace_norm = 0.5 * trace_norm_herm(rho - sig);
  return out;
}

void task_w1(RunCtx& ctx, TaskReport& tr) {
  const auto& cfg = ctx.cfg;
  W1Options opts = quick_w1();

  for (double beta : cfg.betas) {
    DensityState a = gibbs_state(ctx.ham, beta);
    DensityState b = gibbs_state(ctx.ham, beta + 0.1);
    W1Certificate cert = w1_distance(a, b, opts);
    JsonValue det = JsonValue::object();
    det.set("gibbs_pair_upper", JsonValue::num(cert.value_upper));
    det.set("gibbs_pair_lower", JsonValue::num(cert.value_lower));
    tr.details.set("beta=" + fmt_g(beta), std::move(det));
    push(tr, AssertionRecord::check("gibbs_pair_ordered" + beta_tag(beta), cert.value_lower,
                                    cert.value_upper, 1e-9));
    push(tr, AssertionRecord::check("gibbs_pair_gap" + beta_tag(beta), cert.gap(), 1e-3, 0.0));
  }

  // seeded pairs differing on one site: certified value vs the closed form
  int trials = cfg.trials;
  std::vector<SiteDiffPair> pairs;
  pairs.reserve(trials);
  for (int t = 0; t < trials; ++t) pairs.push_back(make_site_diff_pair(ctx.shape, cfg.seed, 100 + t));

  std::vector<W1Certificate> certs(pairs.size());
  auto solve = [&](int t) { certs[t] = w1_distance(pairs[t].rho, pairs[t].sigma, opts); };
  if (cfg.parallel_trials) {
    std::vector<std::future<void>> futs;
    futs.reserve(pairs.size());
    for (int t = 0; t < trials; ++t) futs.push_back(std::async(std::launch::async, solve, t));
    for (auto& f : futs) f.get();
  } else {
    for (int t = 0; t < trials; ++t) solve(t);
  }

  for (int t = 0; t < trials; ++t) {
    std::string tag = "[t=" + std::to_string(t) + "]";
    push(tr, AssertionRecord::check("single_site_value" + tag,
                                    std::abs(certs[t].value_upper - pairs[t].half_trace_norm),
                                    1e-4, 0.0));
    push(tr, AssertionRecord::check("single_site_gap" + tag, certs[t].gap(), 1e-3, 0.0));
  }
  tr.details.set("trials", JsonValue::integer(trials));
}

void task_lipschitz(RunCtx& ctx, TaskReport& tr) {
  CMat h = ctx.ham.dense();
  LipschitzBracket b = lip_const(h, ctx.shape, 60);
  double term_sum = 0.0;
  for (const auto& t : ctx.ham.terms) term_sum += op_norm_herm(t.matrix);
  tr.details.set("lower", JsonValue::num(b.lower));
  tr.details.set("upper", JsonValue::num(b.upper));
  tr.details.set("term_norm_sum", JsonValue::num(term_sum));
  push(tr, AssertionRecord::check("bracket_ordered", b.lower, b.upper, 1e-12));
  push(tr, AssertionRecord::check("upper_leq_twice_lower", b.upper, 2.0 * b.lower, 1e-9));
  push(tr, AssertionRecord::check("lower_leq_twice_term_sum", b.lower, 2.0 * term_sum, 1e-9));

  if (ctx.shape.d == 2) {
    // sum of Z fields has Lipschitz constant exactly 2; the bracket must
    // enclose it
    CMat zsum(static_cast<int>(ctx.shape.dim()));
    for (int s : ctx.shape.sites) zsum += embed(pauli_z(), single_site(2, s), ctx.shape);
    LipschitzBracket zb = lip_const(zsum, ctx.shape, 60);
    push(tr, AssertionRecord::check("z_sum_lower_leq_2", zb.lower, 2.0, 1e-9));
    push(tr, AssertionRecord::check("z_sum_upper_geq_2", 2.0, zb.upper, 1e-9));
  }
}

void task_recovery(RunCtx& ctx, TaskReport& tr) {
  const auto& cfg = ctx.cfg;
  if (ctx.shape.num_sites() < 2) {
    tr.details.set("note", JsonValue::str("skipped: needs at least two sites"));
    return;
  }
  std::vector<int> kept(ctx.shape.sites.begin(), ctx.shape.sites.end() - 1);
  std::vector<int> rec_sites{ctx.shape.sites.back()};

  for (double beta : cfg.betas) {
    DensityState omega = gibbs_state(ctx.ham, beta);
    JsonValue det = JsonValue::object();

    RecoveryMap rec = petz_rotated(omega, kept, rec_sites, cfg.tol_quadrature);
    CMat rebuilt = rec.apply(marginal(omega, kept).matrix);
    double defect = max_abs_entry(rebuilt - omega.matrix);
    det.set("fixed_point_defect", JsonValue::num(defect));
    push(tr, AssertionRecord::check("fixed_point" + beta_tag(beta), defect, 1e-7, 0.0));

    ChannelRep psi = psi_v(omega, ctx.shape.sites.front(), cfg.tol_quadrature);
    double psi_defect = max_abs_entry(psi.apply(omega.matrix) - omega.matrix);
    det.set("psi_fixed_point_defect", JsonValue::num(psi_defect));
    push(tr, AssertionRecord::check("psi_fixed_point" + beta_tag(beta), psi_defect, 1e-7, 0.0));

    for (int t = 0; t < cfg.trials; ++t) {
      Rng rng(cfg.seed, 200 + t);
      DensityState rho = DensityState::make(ctx.shape, random_density(rng, static_cast<int>(ctx.shape.dim())));
      RecoverabilityGap g = recoverability_gap(rho, omega, kept, rec_sites, cfg.tol_quadrature);
      push(tr, AssertionRecord::check(
                   "recoverability" + beta_tag(beta) + "[t=" + std::to_string(t) + "]",
                   g.pinsker_rhs, g.entropy_drop, 1e-6));
    }

    Rng rng(cfg.seed, 250);
    DensityState rho = DensityState::make(ctx.shape, random_density(rng, static_cast<int>(ctx.shape.dim())));
    ChainRecoveryBounds cb =
        chain_recovery_bounds(rho, omega, singleton_partition(ctx.shape).blocks, cfg.tol_quadrature);
    det.set("chain_rel_entropy", JsonValue::num(cb.rel_entropy_total));
    det.set("chain_sum_dists", JsonValue::num(cb.sum_dists));
    push(tr, AssertionRecord::check("chain_quadratic" + beta_tag(beta), cb.bound1,
                                    cb.rel_entropy_total, 1e-6));
    push(tr, AssertionRecord::check("chain_exponential" + beta_tag(beta), cb.bound2,
                                    1.0 - std::exp(-cb.rel_entropy_total / cb.blocks), 1e-6));

    tr.details.set("beta=" + fmt_g(beta), std::move(det));
  }
}

void task_dobrushin(RunCtx& ctx, TaskReport& tr) {
  const auto& cfg = ctx.cfg;
  if (ctx.shape.num_sites() < 2) {
    tr.details.set("note", JsonValue::str("skipped: needs at least two sites"));
    return;
  }
  ChainPartition part = singleton_partition(ctx.shape);

  for (double beta : cfg.betas) {
    DensityState omega = gibbs_state(ctx.ham, beta);
    JsonValue det = JsonValue::object();

    EtaEstimate dia = eta_diamond(omega, part, cfg.tol_quadrature);
    EtaEstimate md = eta_from_maxdiv(omega, part);
    EtaEstimate emp = eta_empirical(omega, part, cfg.trials, cfg.seed + 300, cfg.tol_quadrature);
    det.set("eta_diamond", JsonValue::num(dia.eta));
    det.set("eta_empirical", JsonValue::num(emp.eta));
    det.set("maxdiv_a", JsonValue::num(md.a));
    det.set("maxdiv_condition_met", JsonValue::boolean(md.condition_met));

    push(tr, AssertionRecord::check("eta_diamond_below_one" + beta_tag(beta), dia.eta, 1.0, -1e-9));
    push(tr, AssertionRecord::check("empirical_leq_diamond" + beta_tag(beta), emp.eta, dia.eta, 1e-9));
    if (md.condition_met) {
      det.set("eta_sqrt_2a", JsonValue::num(md.eta));
      push(tr, AssertionRecord::check("empirical_leq_sqrt_2a" + beta_tag(beta), emp.eta, md.eta, 1e-9));
    }

    if (dia.eta < 1.0) {
      double c = tci_markov_bound(part, dia.eta);
      det.set("markov_constant", JsonValue::num(c));
      det.set("markov_refined_at_ln2", JsonValue::num(tci_markov_refined(std::log(2.0), part, dia.eta)));
      if (dia.eta > 0.0) {
        NonMarkovBound nm = tci_nonmarkov_bound(ctx.shape.num_sites(), 1.0, dia.eta);
        det.set("nonmarkov_closed_form", JsonValue::num(nm.value));
      }
      TciReport vr = verify_tci_empirical(omega, c, cfg.trials, cfg.seed + 301, quick_w1());
      det.set("verify_used", JsonValue::integer(vr.used));
      det.set("verify_max_ratio_lower", JsonValue::num(vr.max_ratio_lower));
      push(tr, AssertionRecord::check("tci_no_refutation" + beta_tag(beta), vr.max_ratio_lower, c, 1e-6));
    }

    tr.details.set("beta=" + fmt_g(beta), std::move(det));
  }
}

void task_curvature(RunCtx& ctx, TaskReport& tr) {
  const auto& cfg = ctx.cfg;
  int n = ctx.shape.num_sites();

  for (double beta : cfg.betas) {
    ContractionEstimate est = contraction_coefficient(ctx.ham, beta, quick_contraction(cfg.tol_quadrature));
    JsonValue det = JsonValue::object();
    det.set("upper", JsonValue::num(est.upper));
    det.set("lower", JsonValue::num(est.lower));
    det.set("kappa", JsonValue::num(est.kappa_implied));
    det.set("neighborhood", JsonValue::integer(est.neighborhood_max));

    push(tr, AssertionRecord::check("witness_leq_upper" + beta_tag(beta), est.lower, est.upper, 1e-6));
    push(tr, AssertionRecord::check("upper_below_one" + beta_tag(beta), est.upper, 1.0, -1e-12));

    if (est.neighborhood_max > 1) {
      BetaCritical bc = beta_critical(est.neighborhood_max, cfg.d, ctx.ham.max_term_norm());
      det.set("beta_critical", JsonValue::num(bc.beta_c));
    }

    if (est.upper < 1.0 && est.kappa_implied > 0.0) {
      double c = tci_curvature_bound(n, est.neighborhood_max, est.kappa_implied);
      det.set("constant", JsonValue::num(c));
      DensityState omega = gibbs_state(ctx.ham, beta);
      TciReport vr = verify_tci_empirical(omega, c, cfg.trials, cfg.seed + 400, quick_w1());
      det.set("verify_used", JsonValue::integer(vr.used));
      det.set("verify_max_ratio_lower", JsonValue::num(vr.max_ratio_lower));
      push(tr, AssertionRecord::check("tci_no_refutation" + beta_tag(beta), vr.max_ratio_lower, c, 1e-6));
    }

    tr.details.set("beta=" + fmt_g(beta), std::move(det));
  }
}

void task_tci(RunCtx& ctx, TaskReport& tr) {
  const auto& cfg = ctx.cfg;

  for (double beta : cfg.betas) {
    const CertScan& scan = ctx.scan(beta);
    DensityState omega = gibbs_state(ctx.ham, beta);
    JsonValue det = JsonValue::object();
    det.set("methods", scan.methods);

    push(tr, AssertionRecord::check("upper_bound_available" + beta_tag(beta), 1.0,
                                    scan.available ? 1.0 : 0.0, 0.0));
    if (!scan.available) {
      tr.details.set("beta=" + fmt_g(beta), std::move(det));
      continue;
    }
    det.set("selected", JsonValue::str(scan.method));
    det.set("constant", JsonValue::num(scan.c));

    DualLowerOptions dopts;
    dopts.iterations = 18;
    dopts.restarts = 2;
    dopts.seed = cfg.seed + 500;
    dopts.lip_refine = 8;
    dopts.lip_refine_final = 32;
    double dual = tci_dual_lower(omega, dopts);
    det.set("dual_lower", JsonValue::num(dual));
    push(tr, AssertionRecord::check("dual_leq_best_upper" + beta_tag(beta), dual, scan.c, 1e-3));

    TciReport vr = verify_tci_empirical(omega, scan.c, cfg.trials, cfg.seed + 501, quick_w1());
    det.set("verify_used", JsonValue::integer(vr.used));
    det.set("verify_strict", JsonValue::integer(vr.strict));
    det.set("verify_max_ratio_upper", JsonValue::num(vr.max_ratio_upper));
    det.set("verify_max_ratio_lower", JsonValue::num(vr.max_ratio_lower));
    push(tr, AssertionRecord::check("tci_no_refutation" + beta_tag(beta), vr.max_ratio_lower,
                                    scan.c, 1e-6));

    tr.details.set("beta=" + fmt_g(beta), std::move(det));
  }
}

void task_concentration(RunCtx& ctx, TaskReport& tr) {
  const auto& cfg = ctx.cfg;
  int dim = static_cast<int>(ctx.shape.dim());

  for (double beta : cfg.betas) {
    const CertScan& scan = ctx.scan(beta);
    JsonValue det = JsonValue::object();
    push(tr, AssertionRecord::check("certified_constant_available" + beta_tag(beta), 1.0,
                                    scan.available ? 1.0 : 0.0, 0.0));
    if (!scan.available) {
      tr.details.set("beta=" + fmt_g(beta), std::move(det));
      continue;
    }
    det.set("constant", JsonValue::num(scan.c));
    det.set("method", JsonValue::str(scan.method));
    DensityState omega = gibbs_state(ctx.ham, beta);

    std::vector<std::pair<std::string, CMat>> observables;
    CMat h = ctx.ham.dense();
    observables.emplace_back("energy", h);
    if (cfg.d == 2) {
      CMat z0 = embed(pauli_z(), single_site(2, ctx.shape.sites.front()), ctx.shape);
      CMat zsum(dim);
      for (int s : ctx.shape.sites) zsum += embed(pauli_z(), single_site(2, s), ctx.shape);
      observables.emplace_back("z_first", z0);
      observables.emplace_back("z_sum", zsum);
    }

    JsonValue obs_det = JsonValue::array();
    for (const auto& [name, obs] : observables) {
      double mean = std::real(hs_inner(omega.matrix, obs));
      CMat centered = obs - mean * CMat::identity(dim);
      double r_max = op_norm_herm(centered);
      if (r_max < 1e-12) continue;
      std::vector<double> grid;
      for (int j = 0; j < 20; ++j) grid.push_back(r_max * j / 19.0);
      TailReport rep = tail_report(obs, omega, grid, scan.c, 16);
      double worst = 0.0;
      for (size_t j = 0; j < grid.size(); ++j)
        worst = std::max(worst, rep.exact_tail[j] - rep.gauss_bound[j]);
      JsonValue od = JsonValue::object();
      od.set("name", JsonValue::str(name));
      od.set("lipschitz_used", JsonValue::num(rep.lipschitz_used));
      od.set("commuting", JsonValue::boolean(rep.commuting));
      od.set("r_max", JsonValue::num(r_max));
      obs_det.push(std::move(od));
      push(tr, AssertionRecord::check("tails_below_bound[" + name + "]" + beta_tag(beta), worst,
                                      0.0, 1e-9));
    }
    det.set("observables", std::move(obs_det));

    // Laplace transform bound for centered multiples of the energy
    double mean = std::real(hs_inner(omega.matrix, h));
    CMat hc = h - mean * CMat::identity(dim);
    double hn = op_norm_herm(hc);
    if (hn > 1e-12) {
      CMat base = (1.0 / hn) * hc;
      for (double t : {0.5, 1.0, 2.0}) {
        LaplacePair lp = laplace_bound_check(t * base, omega, scan.c, 16);
        push(tr, AssertionRecord::check("laplace[t=" + fmt_g(t) + "]" + beta_tag(beta), lp.lhs,
                                        lp.rhs, 1e-9));
      }
    }

    if (cfg.d == 2 && !ctx.ham.terms.empty()) {
      std::vector<HamTerm> zterms;
      for (int s : ctx.shape.sites) zterms.push_back({{s}, pauli_z()});
      double conj = conjugated_lip_bound(zterms, ctx.ham, beta);
      CMat zsum(dim);
      for (int s : ctx.shape.sites) zsum += embed(pauli_z(), single_site(2, s), ctx.shape);
      TailBound tb = gaussian_tail_bound(zsum, omega, 0.0, scan.c, 16);
      det.set("conjugated_bound", JsonValue::num(conj));
      push(tr, AssertionRecord::check("conjugated_dominates" + beta_tag(beta),
                                      std::max(tb.lip_real, tb.lip_imag), conj, 1e-6));
    }

    tr.details.set("beta=" + fmt_g(beta), std::move(det));
  }
}

void task_ensembles(RunCtx& ctx, TaskReport& tr) {
  const auto& cfg = ctx.cfg;
  int n = ctx.shape.num_sites();
  CMat h = ctx.ham.dense();
  EigResult spec = herm_eig(h);
  double e_max = spec.eigenvalues.front();
  double e_min = spec.eigenvalues.back();
  double spread = e_max - e_min;

  for (double beta : cfg.betas) {
    const CertScan& scan = ctx.scan(beta);
    JsonValue det = JsonValue::object();
    push(tr, AssertionRecord::check("certified_constant_available" + beta_tag(beta), 1.0,
                                    scan.available ? 1.0 : 0.0, 0.0));
    if (!scan.available) {
      tr.details.set("beta=" + fmt_g(beta), std::move(det));
      continue;
    }
    det.set("constant", JsonValue::num(scan.c));
    det.set("method", JsonValue::str(scan.method));

    DensityState omega = gibbs_state(ctx.ham, beta);
    double e_omega = std::real(hs_inner(omega.matrix, h));
    det.set("gibbs_energy", JsonValue::num(e_omega));

    // energy-matched comparison state: mix the extreme spectral shells so
    // the average energy equals the Gibbs energy exactly
    DensityState rho = omega;
    if (spread > 1e-9) {
      double shell_delta = std::max(1e-9, 1e-6 * spread);
      DensityState lo = microcanonical_state(ctx.shape, h, e_min, shell_delta);
      DensityState hi = microcanonical_state(ctx.shape, h, e_max, shell_delta);
      double e_lo = std::real(hs_inner(lo.matrix, h));
      double e_hi = std::real(hs_inner(hi.matrix, h));
      double lam = (e_hi - e_omega) / (e_hi - e_lo);
      det.set("mix_weight", JsonValue::num(lam));
      rho = DensityState::make(ctx.shape, lam * lo.matrix + (1.0 - lam) * hi.matrix);
    }

    EnsembleBounds eb = ensemble_equivalence(rho, omega, ctx.ham, scan.c);
    det.set("entropy_gap", JsonValue::num(eb.entropy_gap));
    W1Certificate cert = w1_distance(rho, omega, quick_w1());
    det.set("w1_upper", JsonValue::num(cert.value_upper));

    push(tr, AssertionRecord::check("w1_per_site" + beta_tag(beta), cert.value_upper / n,
                                    eb.w1_per_site_bound, 1e-6));
    double marg = trace_norm_herm(average_marginal(rho) - average_marginal(omega));
    push(tr, AssertionRecord::check("marginal_bound" + beta_tag(beta), marg, eb.marginal_bound, 1e-9));
    push(tr, AssertionRecord::check("marginal_chain" + beta_tag(beta), marg,
                                    2.0 * cert.value_upper / n, 1e-6));
    double ds = std::abs(entropy(rho) - entropy(omega));
    push(tr, AssertionRecord::check("entropy_continuity" + beta_tag(beta), ds,
                                    entropy_continuity_bound(cert.value_upper, cfg.d, n), 1e-9));

    // shell at the eigenvalue closest to the Gibbs energy stays nonempty for
    // every width
    double e_shell = spec.eigenvalues.front();
    for (double ev : spec.eigenvalues)
      if (std::abs(ev - e_omega) < std::abs(e_shell - e_omega)) e_shell = ev;
    det.set("shell_energy", JsonValue::num(e_shell));
    std::vector<double> deltas;
    if (spread > 1e-9) {
      deltas = {spread / 8.0, spread / 4.0, spread / 2.0};
    } else {
      deltas = {1.0};
    }
    for (double delta : deltas) {
      MicrocanonicalBound mb = microcanonical_equivalence_bound(ctx.ham, beta, e_shell, delta, scan.c, 24);
      push(tr, AssertionRecord::check(
                   "micro_bound[delta=" + fmt_g(delta) + "]" + beta_tag(beta), mb.exact, mb.bound,
                   1e-9));
    }

    tr.details.set("beta=" + fmt_g(beta), std::move(det));
  }
}

using TaskFn = void (*)(RunCtx&, TaskReport&);

const std::vector<std::pair<std::string, TaskFn>>& task_table() {
  static const std::vector<std::pair<std::string, TaskFn>> table = {
      {"w1", task_w1},
      {"lipschitz", task_lipschitz},
      {"recovery", task_recovery},
      {"dobrushin", task_dobrushin},
      {"curvature", task_curvature},
      {"tci", task_tci},
      {"concentration", task_concentration},
      {"ensembles", task_ensembles},
  };
  return table;
}

}  // namespace

RegisterShape ExperimentConfig::shape() const { return RegisterShape(d, sites); }

HypergraphHamiltonian ExperimentConfig::hamiltonian() const {
  return HypergraphHamiltonian::make(shape(), edges);
}

const std::vector<std::string>& known_tasks() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : task_table()) out.push_back(name);
    return out;
  }();
  return names;
}

ExperimentConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("config", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("config", "expected a JSON object");
  check_keys(root, "config",
             {"system", "beta", "beta_grid", "tasks", "trials", "seed", "tolerances", "output"});

  ExperimentConfig cfg;

  const json& sys = field(root, "config", "system");
  if (!sys.is_object()) fail("config.system", "expected an object");
  check_keys(sys, "config.system", {"d", "sites", "edges"});

  long long d = as_int(field(sys, "config.system", "d"), "config.system.d");
  if (d < 2 || d > 64) fail("config.system.d", "local dimension must be in [2, 64]");
  cfg.d = static_cast<int>(d);

  const json& sites = field(sys, "config.system", "sites");
  if (!sites.is_array() || sites.empty()) fail("config.system.sites", "expected a nonempty array");
  std::set<long long> seen;
  for (size_t i = 0; i < sites.size(); ++i) {
    std::string p = "config.system.sites[" + std::to_string(i) + "]";
    long long s = as_int(sites[i], p);
    if (!seen.insert(s).second) fail(p, "duplicate site label");
    cfg.sites.push_back(static_cast<int>(s));
  }
  if (cfg.sites.size() > 12) fail("config.system.sites", "at most 12 sites are supported");

  const json& edges = field(sys, "config.system", "edges");
  if (!edges.is_array()) fail("config.system.edges", "expected an array");
  for (size_t i = 0; i < edges.size(); ++i) {
    std::string p = "config.system.edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    if (!e.is_object()) fail(p, "expected an object");
    check_keys(e, p, {"sites", "matrix"});
    const json& es = field(e, p, "sites");
    if (!es.is_array() || es.empty()) fail(p + ".sites", "expected a nonempty array");
    HamTerm term;
    std::set<long long> eseen;
    std::string label;
    for (size_t k = 0; k < es.size(); ++k) {
      std::string sp = p + ".sites[" + std::to_string(k) + "]";
      long long s = as_int(es[k], sp);
      if (!eseen.insert(s).second) fail(sp, "duplicate site label");
      if (!seen.count(s)) fail(sp, "site is not part of the system");
      term.sites.push_back(static_cast<int>(s));
      if (k) label += ",";
      label += std::to_string(s);
    }
    long long tdim = 1;
    for (size_t k = 0; k < term.sites.size(); ++k) tdim *= cfg.d;
    term.matrix = parse_matrix(field(e, p, "matrix"), p + ".matrix", tdim);
    if (hermiticity_error(term.matrix) > 1e-10 * std::max(1.0, max_abs_entry(term.matrix)))
      fail(p + ".matrix", "term on sites [" + label + "] is not Hermitian");
    cfg.edges.push_back(std::move(term));
  }

  bool has_beta = root.contains("beta");
  bool has_grid = root.contains("beta_grid");
  if (has_beta == has_grid)
    fail("config.beta", has_beta ? "give either beta or beta_grid, not both"
                                 : "either beta or beta_grid is required");
  if (has_beta) {
    double b = as_num(root["beta"], "config.beta");
    if (b < 0) fail("config.beta", "inverse temperature must be >= 0");
    cfg.betas.push_back(b);
  } else {
    const json& grid = root["beta_grid"];
    if (!grid.is_array() || grid.empty()) fail("config.beta_grid", "expected a nonempty array");
    for (size_t i = 0; i < grid.size(); ++i) {
      std::string p = "config.beta_grid[" + std::to_string(i) + "]";
      double b = as_num(grid[i], p);
      if (b < 0) fail(p, "inverse temperature must be >= 0");
      cfg.betas.push_back(b);
    }
  }

  const json& tasks = field(root, "config", "tasks");
  if (!tasks.is_array() || tasks.empty()) fail("config.tasks", "expected a nonempty array");
  for (size_t i = 0; i < tasks.size(); ++i) {
    std::string p = "config.tasks[" + std::to_string(i) + "]";
    std::string name = as_str(tasks[i], p);
    const auto& known = known_tasks();
    if (std::find(known.begin(), known.end(), name) == known.end())
      fail(p, "unknown task '" + name + "'");
    if (std::find(cfg.tasks.begin(), cfg.tasks.end(), name) != cfg.tasks.end())
      fail(p, "duplicate task '" + name + "'");
    cfg.tasks.push_back(name);
  }

  if (root.contains("trials")) {
    long long t = as_int(root["trials"], "config.trials");
    if (t < 1 || t > 100000) fail("config.trials", "expected a value in [1, 100000]");
    cfg.trials = static_cast<int>(t);
  }

  const json& seed = field(root, "config", "seed");
  if (!seed.is_number_integer() && !seed.is_number_unsigned())
    fail("config.seed", "expected an integer");
  if (seed.is_number_integer() && seed.get<long long>() < 0)
    fail("config.seed", "expected a nonnegative integer");
  cfg.seed = seed.get<std::uint64_t>();

  if (root.contains("tolerances")) {
    const json& tol = root["tolerances"];
    if (!tol.is_object()) fail("config.tolerances", "expected an object");
    check_keys(tol, "config.tolerances", {"quadrature"});
    if (tol.contains("quadrature")) {
      double q = as_num(tol["quadrature"], "config.tolerances.quadrature");
      if (q <= 0 || q > 1e-2) fail("config.tolerances.quadrature", "expected a value in (0, 1e-2]");
      cfg.tol_quadrature = q;
    }
  }

  if (root.contains("output")) cfg.output = as_str(root["output"], "config.output");

  return cfg;
}

JsonValue config_echo(const ExperimentConfig& cfg) {
  JsonValue sys = JsonValue::object();
  sys.set("d", JsonValue::integer(cfg.d));
  JsonValue sites = JsonValue::array();
  for (int s : cfg.sites) sites.push(JsonValue::integer(s));
  sys.set("sites", std::move(sites));
  JsonValue edges = JsonValue::array();
  for (const auto& term : cfg.edges) {
    JsonValue e = JsonValue::object();
    JsonValue es = JsonValue::array();
    for (int s : term.sites) es.push(JsonValue::integer(s));
    e.set("sites", std::move(es));
    JsonValue rows = JsonValue::array();
    for (int r = 0; r < term.matrix.rows(); ++r) {
      JsonValue row = JsonValue::array();
      for (int c = 0; c < term.matrix.cols(); ++c) {
        JsonValue pair = JsonValue::array();
        pair.push(JsonValue::num(term.matrix(r, c).real()));
        pair.push(JsonValue::num(term.matrix(r, c).imag()));
        row.push(std::move(pair));
      }
      rows.push(std::move(row));
    }
    e.set("matrix", std::move(rows));
    edges.push(std::move(e));
  }
  sys.set("edges", std::move(edges));

  JsonValue out = JsonValue::object();
  out.set("system", std::move(sys));
  JsonValue betas = JsonValue::array();
  for (double b : cfg.betas) betas.push(JsonValue::num(b));
  out.set("beta_grid", std::move(betas));
  JsonValue tasks = JsonValue::array();
  for (const auto& t : cfg.tasks) tasks.push(JsonValue::str(t));
  out.set("tasks", std::move(tasks));
  out.set("trials", JsonValue::integer(cfg.trials));
  out.set("seed", JsonValue::integer(static_cast<long long>(cfg.seed)));
  JsonValue tol = JsonValue::object();
  tol.set("quadrature", JsonValue::num(cfg.tol_quadrature));
  out.set("tolerances", std::move(tol));
  return out;
}

RunReport run_experiment(const ExperimentConfig& cfg) {
  RunReport report;
  report.version = QOT_VERSION_STRING;
  report.seed = cfg.seed;
  report.config_echo = config_echo(cfg);

  RunCtx ctx(cfg);

  for (const auto& name : cfg.tasks) {
    TaskReport tr;
    tr.task = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
      for (const auto& [tname, fn] : task_table()) {
        if (tname == name) {
          fn(ctx, tr);
          break;
        }
      }
      tr.assertions.push_back(AssertionRecord::check("completed_without_error", 0.0, 0.0, 0.0));
    } catch (const std::exception& e) {
      tr.details.set("error", JsonValue::str(e.what()));
      tr.assertions.push_back(AssertionRecord::check("completed_without_error", 1.0, 0.0, 0.0));
    }
    auto t1 = std::chrono::steady_clock::now();
    tr.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    report.tasks.push_back(std::move(tr));
  }
  return report;
}

}  // namespace qot::harness
