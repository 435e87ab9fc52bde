#include "qot/matfun.hpp"

#include <cmath>
#include <stdexcept>

namespace qot {

namespace {

// lambda^z = exp(z ln lambda) for lambda > 0
cxd complex_pow(double lambda, cxd z) {
  const double ln = std::log(lambda);
  return std::exp(cxd(z.real() * ln, z.imag() * ln));
}

CMat apply_complex_weights(const EigResult& e, const std::vector<cxd>& w) {
  const int n = e.vectors.dim();
  CMat r(n);
  for (int k = 0; k < n; ++k) {
    if (w[k] == cxd(0.0, 0.0)) continue;
    const cxd* vk = e.vectors.col(k);
    for (int j = 0; j < n; ++j) {
      const cxd f = w[k] * std::conj(vk[j]);
      if (f == cxd(0.0, 0.0)) continue;
      cxd* rj = r.col(j);
      for (int i = 0; i < n; ++i) rj[i] += vk[i] * f;
    }
  }
  return r;
}

}  // namespace

CMat mat_power_from_eig(const EigResult& e, cxd z) {
  const int n = e.vectors.dim();
  if (n == 0) return CMat(0);
  const double wmin = e.eigenvalues.back();
  if (wmin <= 1e-12)
    throw std::domain_error("mat_power: matrix not positive definite at working precision (min eig " +
                            std::to_string(wmin) + ")");
  std::vector<cxd> w(n);
  for (int k = 0; k < n; ++k) w[k] = complex_pow(e.eigenvalues[k], z);
  return apply_complex_weights(e, w);
}

CMat mat_power_from_eig_clipped(const EigResult& e, cxd z, double rel_floor, bool* clipped) {
  const int n = e.vectors.dim();
  if (clipped) *clipped = false;
  if (n == 0) return CMat(0);
  const double top = std::max(e.eigenvalues.front(), 0.0);
  double floor_val = rel_floor * top;
  if (floor_val <= 0.0) floor_val = rel_floor;
  std::vector<cxd> w(n);
  for (int k = 0; k < n; ++k) {
    double lam = e.eigenvalues[k];
    if (lam < floor_val) {
      lam = floor_val;
      if (clipped) *clipped = true;
    }
    w[k] = complex_pow(lam, z);
  }
  return apply_complex_weights(e, w);
}

CMat mat_power(const CMat& a, cxd z) { return mat_power_from_eig(herm_eig(a), z); }

CMat mat_power_clipped(const CMat& a, cxd z, double rel_floor, bool* clipped) {
  return mat_power_from_eig_clipped(herm_eig(a), z, rel_floor, clipped);
}

CMat mat_exp_herm(const CMat& a) {
  auto e = herm_eig(a);
  std::vector<double> w(e.eigenvalues.size());
  for (size_t k = 0; k < w.size(); ++k) w[k] = std::exp(e.eigenvalues[k]);
  return from_eig(w, e.vectors);
}

CMat mat_log_herm(const CMat& a) {
  auto e = herm_eig(a);
  if (!e.eigenvalues.empty() && e.eigenvalues.back() <= 1e-12)
    throw std::domain_error("mat_log_herm: matrix not positive definite at working precision");
  std::vector<double> w(e.eigenvalues.size());
  for (size_t k = 0; k < w.size(); ++k) w[k] = std::log(e.eigenvalues[k]);
  return from_eig(w, e.vectors);
}

PowerPerturbation power_perturbation_check(const CMat& a, const CMat& b, cxd z, double slack) {
  auto ea = herm_eig(a);
  auto eb = herm_eig(b);
  if (ea.eigenvalues.empty() || eb.eigenvalues.empty())
    throw std::invalid_argument("power_perturbation_check: empty input");
  if (ea.eigenvalues.back() <= 1e-12 || eb.eigenvalues.back() <= 1e-12)
    throw std::domain_error("power_perturbation_check: inputs must be positive definite");

  const CMat az = mat_power_from_eig(ea, z);
  const CMat bz = mat_power_from_eig(eb, z);
  PowerPerturbation out;
  out.lhs = op_norm(az - bz);
  const double na = std::max(std::abs(ea.eigenvalues.front()), std::abs(ea.eigenvalues.back()));
  const double nb = std::max(std::abs(eb.eigenvalues.front()), std::abs(eb.eigenvalues.back()));
  const double nia = 1.0 / ea.eigenvalues.back();
  const double nib = 1.0 / eb.eigenvalues.back();
  const double m = std::max(std::max(na, nb), std::max(nia, nib));
  const double amp = std::pow(m, 1.0 + std::abs(z.real()));
  out.rhs = std::abs(z) * amp * op_norm(a - b);
  out.holds = out.lhs <= out.rhs + slack;
  return out;
}

}  // namespace qot
