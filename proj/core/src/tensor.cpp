#include "qot/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qot {

namespace {

// Strides for big-endian digit layout: position p has stride d^{n-1-p}.
std::vector<long long> strides(const RegisterShape& shape) {
  const int n = shape.num_sites();
  std::vector<long long> s(n);
  long long v = 1;
  for (int p = n - 1; p >= 0; --p) {
    s[p] = v;
    v *= shape.d;
  }
  return s;
}

}  // namespace

CMat embed(const CMat& op, const RegisterShape& op_shape, const RegisterShape& full) {
  if (op_shape.d != full.d)
    throw std::invalid_argument("embed: local dimension mismatch");
  if (op.dim() != op_shape.dim())
    throw std::invalid_argument("embed: operator dimension does not match its register");
  const int n = full.num_sites();
  const int k = op_shape.num_sites();
  const auto full_str = strides(full);

  // positions of the op sites inside the full register, in op_shape order
  std::vector<long long> op_pos_stride(k);
  for (int i = 0; i < k; ++i) op_pos_stride[i] = full_str[full.pos(op_shape.sites[i])];
  // positions of the remaining sites
  std::vector<long long> env_stride;
  for (int p = 0; p < n; ++p) {
    const int label = full.sites[p];
    if (!op_shape.has_site(label)) env_stride.push_back(full_str[p]);
  }

  const int d = full.d;
  const long long dim_op = op_shape.dim();
  long long dim_env = 1;
  for (size_t i = 0; i < env_stride.size(); ++i) dim_env *= d;

  // full index offsets for every op-space index
  std::vector<long long> op_offset(dim_op, 0);
  for (long long idx = 0; idx < dim_op; ++idx) {
    long long rem = idx;
    long long off = 0;
    for (int i = k - 1; i >= 0; --i) {
      off += (rem % d) * op_pos_stride[i];
      rem /= d;
    }
    op_offset[idx] = off;
  }
  std::vector<long long> env_offset(dim_env, 0);
  for (long long idx = 0; idx < dim_env; ++idx) {
    long long rem = idx;
    long long off = 0;
    for (int i = static_cast<int>(env_stride.size()) - 1; i >= 0; --i) {
      off += (rem % d) * env_stride[i];
      rem /= d;
    }
    env_offset[idx] = off;
  }

  CMat r(static_cast<int>(full.dim()));
  for (long long c = 0; c < dim_op; ++c)
    for (long long rI = 0; rI < dim_op; ++rI) {
      const cxd v = op(static_cast<int>(rI), static_cast<int>(c));
      if (v == cxd(0.0, 0.0)) continue;
      for (long long e = 0; e < dim_env; ++e)
        r(static_cast<int>(op_offset[rI] + env_offset[e]),
          static_cast<int>(op_offset[c] + env_offset[e])) = v;
    }
  return r;
}

CMat partial_trace(const CMat& op, const RegisterShape& full,
                   const std::vector<int>& traced_labels) {
  if (op.dim() != full.dim())
    throw std::invalid_argument("partial_trace: operator dimension does not match register");
  for (int l : traced_labels) (void)full.pos(l);
  const RegisterShape kept = full.complement(traced_labels);
  const auto full_str = strides(full);

  const int d = full.d;
  std::vector<long long> kept_stride;
  std::vector<long long> traced_stride;
  for (int p = 0; p < full.num_sites(); ++p) {
    const int label = full.sites[p];
    if (std::find(traced_labels.begin(), traced_labels.end(), label) != traced_labels.end())
      traced_stride.push_back(full_str[p]);
    else
      kept_stride.push_back(full_str[p]);
  }
  const long long dim_kept = kept.dim();
  long long dim_traced = 1;
  for (size_t i = 0; i < traced_stride.size(); ++i) dim_traced *= d;

  std::vector<long long> kept_offset(dim_kept, 0);
  for (long long idx = 0; idx < dim_kept; ++idx) {
    long long rem = idx;
    long long off = 0;
    for (int i = static_cast<int>(kept_stride.size()) - 1; i >= 0; --i) {
      off += (rem % d) * kept_stride[i];
      rem /= d;
    }
    kept_offset[idx] = off;
  }
  std::vector<long long> traced_offset(dim_traced, 0);
  for (long long idx = 0; idx < dim_traced; ++idx) {
    long long rem = idx;
    long long off = 0;
    for (int i = static_cast<int>(traced_stride.size()) - 1; i >= 0; --i) {
      off += (rem % d) * traced_stride[i];
      rem /= d;
    }
    traced_offset[idx] = off;
  }

  CMat r(static_cast<int>(dim_kept));
  for (long long c = 0; c < dim_kept; ++c)
    for (long long rI = 0; rI < dim_kept; ++rI) {
      cxd s = 0.0;
      for (long long t = 0; t < dim_traced; ++t)
        s += op(static_cast<int>(kept_offset[rI] + traced_offset[t]),
                static_cast<int>(kept_offset[c] + traced_offset[t]));
      r(static_cast<int>(rI), static_cast<int>(c)) = s;
    }
  return r;
}

CMat site_average(const CMat& op, const RegisterShape& full, int site_label) {
  const CMat traced = partial_trace(op, full, {site_label});
  const RegisterShape kept = full.complement({site_label});
  CMat lifted = embed(traced, kept, full);
  lifted *= 1.0 / full.d;
  return lifted;
}

CMat site_centered(const CMat& op, const RegisterShape& full, int site_label) {
  return op - site_average(op, full, site_label);
}

CMat block_average(const CMat& op, const RegisterShape& full, const std::vector<int>& labels) {
  if (labels.empty()) return op;
  const CMat traced = partial_trace(op, full, labels);
  const RegisterShape kept = full.complement(labels);
  CMat lifted = (kept.num_sites() == 0)
                    ? [&] {
                        CMat m(static_cast<int>(full.dim()));
                        const cxd t = traced.dim() == 1 ? traced(0, 0) : trace(traced);
                        for (int i = 0; i < m.dim(); ++i) m(i, i) = t;
                        return m;
                      }()
                    : embed(traced, kept, full);
  double scale = 1.0;
  for (size_t i = 0; i < labels.size(); ++i) scale /= full.d;
  lifted *= scale;
  return lifted;
}

CMat matrix_unit(int dim, int r, int c) {
  CMat m(dim);
  m(r, c) = 1.0;
  return m;
}

std::vector<CMat> traceless_site_basis(int d) {
  std::vector<CMat> basis;
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      CMat sym(d);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      basis.push_back(sym);
      CMat asym(d);
      asym(j, k) = cxd(0.0, -1.0);
      asym(k, j) = cxd(0.0, 1.0);
      basis.push_back(asym);
    }
  for (int l = 1; l < d; ++l) {
    CMat diag(d);
    const double norm = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
    for (int j = 0; j < l; ++j) diag(j, j) = norm;
    diag(l, l) = -norm * l;
    basis.push_back(diag);
  }
  return basis;
}

CMat pauli_x() {
  CMat m(2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

CMat pauli_y() {
  CMat m(2);
  m(0, 1) = cxd(0.0, -1.0);
  m(1, 0) = cxd(0.0, 1.0);
  return m;
}

CMat pauli_z() {
  CMat m(2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

}  // namespace qot
