#include "qot/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace qot {

namespace {
void check_same(const CMat& a, const CMat& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument(std::string("CMat ") + op + ": shape mismatch " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
}
}  // namespace

CMat& CMat::operator+=(const CMat& o) {
  check_same(*this, o, "+=");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

CMat& CMat::operator-=(const CMat& o) {
  check_same(*this, o, "-=");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

CMat& CMat::operator*=(cxd s) {
  for (auto& x : a_) x *= s;
  return *this;
}

CMat& CMat::operator*=(double s) {
  for (auto& x : a_) x *= s;
  return *this;
}

CMat operator+(CMat a, const CMat& b) { a += b; return a; }
CMat operator-(CMat a, const CMat& b) { a -= b; return a; }
CMat operator*(cxd s, CMat a) { a *= s; return a; }
CMat operator*(double s, CMat a) { a *= s; return a; }

CMat operator*(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("CMat *: inner dimension mismatch " + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()));
  CMat c(a.rows(), b.cols());
  // c[:,j] = sum_k b(k,j) * a[:,k]; column-major friendly accumulation
  for (int j = 0; j < b.cols(); ++j) {
    cxd* cj = c.col(j);
    const cxd* bj = b.col(j);
    for (int k = 0; k < a.cols(); ++k) {
      const cxd bkj = bj[k];
      if (bkj == cxd(0.0, 0.0)) continue;
      const cxd* ak = a.col(k);
      for (int i = 0; i < a.rows(); ++i) cj[i] += ak[i] * bkj;
    }
  }
  return c;
}

CMat adjoint(const CMat& a) {
  CMat r(a.cols(), a.rows());
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) r(j, i) = std::conj(a(i, j));
  return r;
}

CMat conj_entries(const CMat& a) {
  CMat r(a.rows(), a.cols());
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) r(i, j) = std::conj(a(i, j));
  return r;
}

CMat transpose_entries(const CMat& a) {
  CMat r(a.cols(), a.rows());
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) r(j, i) = a(i, j);
  return r;
}

cxd trace(const CMat& a) {
  cxd t = 0.0;
  for (int i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

cxd hs_inner(const CMat& a, const CMat& b) {
  check_same(a, b, "hs_inner");
  cxd t = 0.0;
  const cxd* pa = a.data();
  const cxd* pb = b.data();
  const size_t sz = static_cast<size_t>(a.rows()) * a.cols();
  for (size_t i = 0; i < sz; ++i) t += std::conj(pa[i]) * pb[i];
  return t;
}

double fro_norm(const CMat& a) {
  double s = 0.0;
  const cxd* p = a.data();
  const size_t sz = static_cast<size_t>(a.rows()) * a.cols();
  for (size_t i = 0; i < sz; ++i) s += std::norm(p[i]);
  return std::sqrt(s);
}

double max_abs_entry(const CMat& a) {
  double m = 0.0;
  const cxd* p = a.data();
  const size_t sz = static_cast<size_t>(a.rows()) * a.cols();
  for (size_t i = 0; i < sz; ++i) m = std::max(m, std::abs(p[i]));
  return m;
}

double hermiticity_error(const CMat& a) {
  double m = 0.0;
  for (int j = 0; j < a.dim(); ++j)
    for (int i = 0; i <= j; ++i)
      m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ja = 0; ja < a.cols(); ++ja)
    for (int jb = 0; jb < b.cols(); ++jb) {
      cxd* rc = r.col(ja * b.cols() + jb);
      for (int ia = 0; ia < a.rows(); ++ia) {
        const cxd av = a(ia, ja);
        if (av == cxd(0.0, 0.0)) continue;
        const cxd* bc = b.col(jb);
        cxd* dst = rc + static_cast<size_t>(ia) * b.rows();
        for (int ib = 0; ib < b.rows(); ++ib) dst[ib] += av * bc[ib];
      }
    }
  return r;
}

CMat commutator(const CMat& a, const CMat& b) { return a * b - b * a; }

CMat require_hermitian(const CMat& a, double tol, const std::string& what) {
  const double err = hermiticity_error(a);
  if (err > tol)
    throw std::invalid_argument(what + ": not Hermitian, deviation " + std::to_string(err) +
                                " exceeds tolerance " + std::to_string(tol));
  const int n = a.dim();
  CMat r(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) r(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return r;
}

}  // namespace qot
