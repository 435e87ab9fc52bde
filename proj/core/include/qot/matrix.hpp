#pragma once
// Dense complex matrices, column major.  Everything in this library lives on
// registers of a few qudits, so dimensions stay small (<= a few hundred) and
// a plain contiguous buffer with naive kernels is all we need.  Matrices are
// square almost everywhere; the rectangular case exists for Kraus operators
// and isometries between registers of different size.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qot {

using cxd = std::complex<double>;

class CMat {
public:
  CMat() = default;
  explicit CMat(int n) : rows_(n), cols_(n), a_(static_cast<size_t>(n) * n) {
    if (n < 0) throw std::invalid_argument("CMat: negative dimension");
  }
  CMat(int r, int c) : rows_(r), cols_(c), a_(static_cast<size_t>(r) * c) {
    if (r < 0 || c < 0) throw std::invalid_argument("CMat: negative dimension");
  }

  static CMat identity(int n) {
    CMat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  // Side length of a square matrix; guards against silently treating a
  // rectangular matrix as square.
  int dim() const {
    if (rows_ != cols_) throw std::logic_error("CMat::dim called on a non-square matrix");
    return rows_;
  }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return a_.empty(); }

  cxd& operator()(int r, int c) { return a_[static_cast<size_t>(c) * rows_ + r]; }
  const cxd& operator()(int r, int c) const { return a_[static_cast<size_t>(c) * rows_ + r]; }

  cxd* data() { return a_.data(); }
  const cxd* data() const { return a_.data(); }
  cxd* col(int c) { return a_.data() + static_cast<size_t>(c) * rows_; }
  const cxd* col(int c) const { return a_.data() + static_cast<size_t>(c) * rows_; }

  CMat& operator+=(const CMat& o);
  CMat& operator-=(const CMat& o);
  CMat& operator*=(cxd s);
  CMat& operator*=(double s);

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cxd> a_;
};

CMat operator+(CMat a, const CMat& b);
CMat operator-(CMat a, const CMat& b);
CMat operator*(const CMat& a, const CMat& b);
CMat operator*(cxd s, CMat a);
CMat operator*(double s, CMat a);

CMat adjoint(const CMat& a);
CMat conj_entries(const CMat& a);
CMat transpose_entries(const CMat& a);
cxd trace(const CMat& a);
// Tr[a^dagger b]
cxd hs_inner(const CMat& a, const CMat& b);
double fro_norm(const CMat& a);
double max_abs_entry(const CMat& a);
// max entry deviation from the adjoint, i.e. max |a - a^dagger| / 2-ish scale
double hermiticity_error(const CMat& a);
CMat kron(const CMat& a, const CMat& b);
CMat commutator(const CMat& a, const CMat& b);

// Returns (a + a^dagger)/2 if the deviation is within tol, otherwise throws
// std::invalid_argument mentioning `what`.
CMat require_hermitian(const CMat& a, double tol, const std::string& what);

inline bool same_dim(const CMat& a, const CMat& b) { return a.dim() == b.dim(); }

}  // namespace qot
