#include "qot/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qot {

namespace {

double offdiag_norm(const CMat& a) {
  double s = 0.0;
  for (int j = 0; j < a.dim(); ++j)
    for (int i = 0; i < j; ++i) s += std::norm(a(i, j));
  return std::sqrt(2.0 * s);
}

// One complex Jacobi rotation zeroing a(p,q).  The 2x2 block
// [[app, apq],[conj(apq), aqq]] is diagonalized by D*J with
// D = diag(1, e^{-i phi}), apq = |apq| e^{i phi}, and J the classic real
// rotation.  Columns p,q of `a` and `v` pick up G = D*J on the right,
// rows p,q of `a` pick up G^dagger on the left.
void rotate(CMat& a, CMat& v, int p, int q) {
  const cxd apq = a(p, q);
  const double g = std::abs(apq);
  if (g == 0.0) return;
  const cxd phase = apq / g;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * g);
  double t;
  if (tau >= 0.0)
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  else
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const int n = a.dim();
  // G = [[c, s],[-s e^{-i phi}, c e^{-i phi}]]: the conjugate phase first
  // rotates apq onto the real axis, then the real rotation kills it.
  const cxd g21 = -s * std::conj(phase);
  const cxd g22 = c * std::conj(phase);

  // columns: col_p' = c*col_p + g21*col_q ; col_q' = s*col_p + g22*col_q
  {
    cxd* cp = a.col(p);
    cxd* cq = a.col(q);
    for (int i = 0; i < n; ++i) {
      const cxd xp = cp[i], xq = cq[i];
      cp[i] = c * xp + g21 * xq;
      cq[i] = s * xp + g22 * xq;
    }
  }
  // rows: row_p' = c*row_p + conj(g21)*row_q ; row_q' = s*row_p + conj(g22)*row_q
  {
    const cxd g21c = std::conj(g21);
    const cxd g22c = std::conj(g22);
    for (int j = 0; j < n; ++j) {
      const cxd xp = a(p, j), xq = a(q, j);
      a(p, j) = c * xp + g21c * xq;
      a(q, j) = s * xp + g22c * xq;
    }
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = cxd(a(p, p).real(), 0.0);
  a(q, q) = cxd(a(q, q).real(), 0.0);

  {
    cxd* vp = v.col(p);
    cxd* vq = v.col(q);
    for (int i = 0; i < n; ++i) {
      const cxd xp = vp[i], xq = vq[i];
      vp[i] = c * xp + g21 * xq;
      vq[i] = s * xp + g22 * xq;
    }
  }
}

// true if column ci of v is lexicographically smaller than column cj
bool col_lex_less(const CMat& v, int ci, int cj) {
  for (int i = 0; i < v.dim(); ++i) {
    const cxd a = v(i, ci), b = v(i, cj);
    if (a.real() != b.real()) return a.real() < b.real();
    if (a.imag() != b.imag()) return a.imag() < b.imag();
  }
  return false;
}

}  // namespace

EigResult herm_eig(const CMat& x) {
  CMat a = require_hermitian(x, 1e-10, "herm_eig input");
  const int n = a.dim();
  CMat v = CMat::identity(n);
  if (n <= 1) {
    EigResult r;
    r.vectors = v;
    if (n == 1) r.eigenvalues = {a(0, 0).real()};
    return r;
  }

  const double scale = std::max(1.0, fro_norm(a));
  const double tol_off = 1e-15 * scale;
  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double off = offdiag_norm(a);
    if (off <= tol_off) break;
    // threshold pivoting: early sweeps skip entries that are small relative
    // to the remaining off-diagonal mass, later sweeps rotate everything
    const double thresh = (sweep < 3) ? 0.2 * off / (n * n) : 0.0;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > thresh) rotate(a, v, p, q);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    const double wi = a(i, i).real(), wj = a(j, j).real();
    if (wi != wj) return wi > wj;
    return col_lex_less(v, i, j);
  });

  EigResult r;
  r.eigenvalues.resize(n);
  r.vectors = CMat(n);
  for (int k = 0; k < n; ++k) {
    const int src = order[k];
    r.eigenvalues[k] = a(src, src).real();
    // gauge: first significant entry real positive
    cxd phase = 1.0;
    for (int i = 0; i < n; ++i) {
      const cxd e = v(i, src);
      if (std::abs(e) > 1e-12) {
        phase = std::conj(e) / std::abs(e);
        break;
      }
    }
    for (int i = 0; i < n; ++i) r.vectors(i, k) = v(i, src) * phase;
  }
  return r;
}

CMat from_eig(const std::vector<double>& w, const CMat& v) {
  const int n = v.dim();
  CMat r(n);
  for (int k = 0; k < n; ++k) {
    if (w[k] == 0.0) continue;
    const cxd* vk = v.col(k);
    for (int j = 0; j < n; ++j) {
      const cxd f = w[k] * std::conj(vk[j]);
      if (f == cxd(0.0, 0.0)) continue;
      cxd* rj = r.col(j);
      for (int i = 0; i < n; ++i) rj[i] += vk[i] * f;
    }
  }
  return r;
}

double op_norm_herm(const CMat& x) {
  auto e = herm_eig(x);
  double m = 0.0;
  for (double w : e.eigenvalues) m = std::max(m, std::abs(w));
  return m;
}

double trace_norm_herm(const CMat& x) {
  auto e = herm_eig(x);
  double s = 0.0;
  for (double w : e.eigenvalues) s += std::abs(w);
  return s;
}

double lambda_max_herm(const CMat& x) {
  auto e = herm_eig(x);
  return e.eigenvalues.empty() ? 0.0 : e.eigenvalues.front();
}

double lambda_min_herm(const CMat& x) {
  auto e = herm_eig(x);
  return e.eigenvalues.empty() ? 0.0 : e.eigenvalues.back();
}

double op_norm(const CMat& x) {
  if (hermiticity_error(x) <= 1e-12 * std::max(1.0, max_abs_entry(x)))
    return op_norm_herm(require_hermitian(x, 1e-10, "op_norm"));
  const CMat g = adjoint(x) * x;
  const double lm = lambda_max_herm(require_hermitian(g, 1e-8 * std::max(1.0, max_abs_entry(g)), "op_norm gram"));
  return std::sqrt(std::max(0.0, lm));
}

double trace_norm(const CMat& x) {
  if (hermiticity_error(x) <= 1e-12 * std::max(1.0, max_abs_entry(x)))
    return trace_norm_herm(require_hermitian(x, 1e-10, "trace_norm"));
  const CMat g = adjoint(x) * x;
  auto e = herm_eig(require_hermitian(g, 1e-8 * std::max(1.0, max_abs_entry(g)), "trace_norm gram"));
  double s = 0.0;
  for (double w : e.eigenvalues) s += std::sqrt(std::max(0.0, w));
  return s;
}

CMat sign_herm(const CMat& x, double tol) {
  auto e = herm_eig(x);
  std::vector<double> w(e.eigenvalues.size());
  for (size_t i = 0; i < w.size(); ++i)
    w[i] = (std::abs(e.eigenvalues[i]) <= tol) ? 0.0 : (e.eigenvalues[i] > 0.0 ? 1.0 : -1.0);
  return from_eig(w, e.vectors);
}

CMat abs_herm(const CMat& x) {
  auto e = herm_eig(x);
  std::vector<double> w(e.eigenvalues.size());
  for (size_t i = 0; i < w.size(); ++i) w[i] = std::abs(e.eigenvalues[i]);
  return from_eig(w, e.vectors);
}

CMat pos_part_herm(const CMat& x) {
  auto e = herm_eig(x);
  std::vector<double> w(e.eigenvalues.size());
  for (size_t i = 0; i < w.size(); ++i) w[i] = std::max(0.0, e.eigenvalues[i]);
  return from_eig(w, e.vectors);
}

}  // namespace qot
