#include "qot/channel.hpp"

#include <stdexcept>
#include <string>

#include "qot/eig.hpp"
#include "qot/tensor.hpp"

namespace qot {

namespace {

// Digit-split of a full-register index into (kept-part, dropped-part) indices,
// where "kept" are the sites of `sub` in their sub-register order.
void split_indices(const RegisterShape& full, const RegisterShape& sub,
                   std::vector<long long>& sub_part, std::vector<long long>& rest_part) {
  const int n = full.num_sites();
  const int d = full.d;
  const long long dim = full.dim();
  std::vector<int> digit(n);
  sub_part.assign(dim, 0);
  rest_part.assign(dim, 0);
  for (long long idx = 0; idx < dim; ++idx) {
    long long rem = idx;
    for (int p = n - 1; p >= 0; --p) {
      digit[p] = static_cast<int>(rem % d);
      rem /= d;
    }
    long long s = 0;
    for (int label : sub.sites) s = s * d + digit[full.pos(label)];
    long long r = 0;
    for (int p = 0; p < n; ++p)
      if (!sub.has_site(full.sites[p])) r = r * d + digit[p];
    sub_part[idx] = s;
    rest_part[idx] = r;
  }
}

}  // namespace

ChannelRep ChannelRep::make(RegisterShape in, RegisterShape out, CMat choi,
                            double tol_cp, double tol_tp) {
  const long long expect = in.dim() * out.dim();
  if (choi.dim() != expect)
    throw std::invalid_argument("ChannelRep: Choi dimension " + std::to_string(choi.dim()) +
                                " does not match in*out = " + std::to_string(expect));
  require_hermitian(choi, 1e-8, "ChannelRep Choi matrix");
  ChannelRep c{std::move(in), std::move(out), std::move(choi)};
  const double cp = c.cp_defect();
  if (cp > tol_cp)
    throw std::invalid_argument("ChannelRep: Choi matrix not positive, defect " +
                                std::to_string(cp));
  const double tp = c.tp_defect();
  if (tp > tol_tp)
    throw std::invalid_argument("ChannelRep: not trace preserving, defect " +
                                std::to_string(tp));
  return c;
}

ChannelRep ChannelRep::from_kraus(RegisterShape in, RegisterShape out,
                                  const std::vector<CMat>& kraus,
                                  const std::vector<double>& weights,
                                  double tol_cp, double tol_tp) {
  if (kraus.empty()) throw std::invalid_argument("ChannelRep: empty Kraus list");
  if (!weights.empty() && weights.size() != kraus.size())
    throw std::invalid_argument("ChannelRep: weight count does not match Kraus count");
  const int din = static_cast<int>(in.dim());
  const int dout = static_cast<int>(out.dim());
  CMat j(din * dout);
  for (size_t k = 0; k < kraus.size(); ++k) {
    const CMat& m = kraus[k];
    if (m.rows() != dout || m.cols() != din)
      throw std::invalid_argument("ChannelRep: Kraus operator " + std::to_string(k) +
                                  " has wrong dimensions");
    const double w = weights.empty() ? 1.0 : weights[k];
    // J += w * vec(K) vec(K)^dag with vec_{(i,o)} = K[o,i]
    for (int jcol = 0; jcol < din; ++jcol)
      for (int p = 0; p < dout; ++p) {
        const cxd right = std::conj(m(p, jcol));
        if (right == cxd(0.0, 0.0)) continue;
        cxd* col = j.col(jcol * dout + p);
        for (int i = 0; i < din; ++i)
          for (int o = 0; o < dout; ++o) col[i * dout + o] += w * m(o, i) * right;
      }
  }
  return make(std::move(in), std::move(out), std::move(j), tol_cp, tol_tp);
}

CMat ChannelRep::apply(const CMat& x) const {
  const int din = in_dim();
  const int dout = out_dim();
  if (x.dim() != din) throw std::invalid_argument("ChannelRep::apply: dimension mismatch");
  CMat y(dout);
  for (int jcol = 0; jcol < din; ++jcol)
    for (int p = 0; p < dout; ++p) {
      const cxd* col = choi.col(jcol * dout + p);
      for (int i = 0; i < din; ++i) {
        const cxd xv = x(i, jcol);
        if (xv == cxd(0.0, 0.0)) continue;
        for (int o = 0; o < dout; ++o) y(o, p) += xv * col[i * dout + o];
      }
    }
  return y;
}

CMat ChannelRep::apply_adjoint(const CMat& y) const {
  const int din = in_dim();
  const int dout = out_dim();
  if (y.dim() != dout)
    throw std::invalid_argument("ChannelRep::apply_adjoint: dimension mismatch");
  CMat z(din);
  for (int jcol = 0; jcol < din; ++jcol)
    for (int p = 0; p < dout; ++p) {
      const cxd* col = choi.col(jcol * dout + p);
      for (int i = 0; i < din; ++i)
        for (int o = 0; o < dout; ++o) z(jcol, i) += col[i * dout + o] * y(p, o);
    }
  return z;
}

CMat ChannelRep::apply_doubled(const CMat& x) const {
  const int din = in_dim();
  const int dout = out_dim();
  if (x.dim() != din * din)
    throw std::invalid_argument("ChannelRep::apply_doubled: dimension mismatch");
  CMat y(dout * din);
  for (int jcol = 0; jcol < din; ++jcol)
    for (int p = 0; p < dout; ++p) {
      const cxd* col = choi.col(jcol * dout + p);
      for (int i = 0; i < din; ++i)
        for (int o = 0; o < dout; ++o) {
          const cxd jv = col[i * dout + o];
          if (jv == cxd(0.0, 0.0)) continue;
          for (int s = 0; s < din; ++s)
            for (int r = 0; r < din; ++r)
              y(o * din + r, p * din + s) += jv * x(i * din + r, jcol * din + s);
        }
    }
  return y;
}

CMat ChannelRep::apply_doubled_adjoint(const CMat& y) const {
  const int din = in_dim();
  const int dout = out_dim();
  if (y.dim() != dout * din)
    throw std::invalid_argument("ChannelRep::apply_doubled_adjoint: dimension mismatch");
  CMat z(din * din);
  for (int jcol = 0; jcol < din; ++jcol)
    for (int p = 0; p < dout; ++p) {
      const cxd* col = choi.col(jcol * dout + p);
      for (int i = 0; i < din; ++i)
        for (int o = 0; o < dout; ++o) {
          const cxd jv = col[i * dout + o];
          if (jv == cxd(0.0, 0.0)) continue;
          for (int s = 0; s < din; ++s)
            for (int r = 0; r < din; ++r)
              z(jcol * din + s, i * din + r) += jv * y(p * din + s, o * din + r);
        }
    }
  return z;
}

ChannelRep ChannelRep::then(const ChannelRep& next) const {
  if (!(out_shape == next.in_shape))
    throw std::invalid_argument("ChannelRep::then: intermediate registers do not match");
  const int din = in_dim();
  const int dmid = out_dim();
  const int dnext = next.out_dim();
  CMat j(din * dnext);
  CMat block(dmid);
  for (int i = 0; i < din; ++i)
    for (int jc = 0; jc < din; ++jc) {
      for (int o = 0; o < dmid; ++o)
        for (int p = 0; p < dmid; ++p) block(o, p) = choi(i * dmid + o, jc * dmid + p);
      const CMat image = next.apply(block);
      for (int o = 0; o < dnext; ++o)
        for (int p = 0; p < dnext; ++p) j(i * dnext + o, jc * dnext + p) = image(o, p);
    }
  // composition of valid channels; re-validation guards accumulated error
  return make(in_shape, next.out_shape, std::move(j), 1e-7, 1e-6);
}

double ChannelRep::cp_defect() const {
  const double lo = lambda_min_herm(choi);
  return lo < 0.0 ? -lo : 0.0;
}

double ChannelRep::tp_defect() const {
  const int din = in_dim();
  const int dout = out_dim();
  double worst = 0.0;
  for (int i = 0; i < din; ++i)
    for (int jc = 0; jc < din; ++jc) {
      cxd s = 0.0;
      for (int o = 0; o < dout; ++o) s += choi(i * dout + o, jc * dout + o);
      if (i == jc) s -= 1.0;
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

ChannelRep identity_channel(const RegisterShape& shape) {
  const int d = static_cast<int>(shape.dim());
  CMat j(d * d);
  for (int i = 0; i < d; ++i)
    for (int jc = 0; jc < d; ++jc) j(i * d + i, jc * d + jc) = 1.0;
  return ChannelRep::make(shape, shape, std::move(j));
}

ChannelRep unitary_channel(const RegisterShape& shape, const CMat& u) {
  const int d = static_cast<int>(shape.dim());
  if (u.dim() != d) throw std::invalid_argument("unitary_channel: dimension mismatch");
  const CMat gram = adjoint(u) * u;
  double dev = 0.0;
  for (int i = 0; i < d; ++i)
    for (int jc = 0; jc < d; ++jc)
      dev = std::max(dev, std::abs(gram(i, jc) - (i == jc ? cxd(1.0) : cxd(0.0))));
  if (dev > 1e-10)
    throw std::invalid_argument("unitary_channel: matrix is not unitary, defect " +
                                std::to_string(dev));
  CMat j(d * d);
  for (int i = 0; i < d; ++i)
    for (int jc = 0; jc < d; ++jc)
      for (int o = 0; o < d; ++o)
        for (int p = 0; p < d; ++p) j(i * d + o, jc * d + p) = u(o, i) * std::conj(u(p, jc));
  return ChannelRep::make(shape, shape, std::move(j));
}

ChannelRep replacer_channel(const RegisterShape& in, const DensityState& target) {
  const int din = static_cast<int>(in.dim());
  const int dout = static_cast<int>(target.shape.dim());
  CMat j(din * dout);
  for (int i = 0; i < din; ++i)
    for (int o = 0; o < dout; ++o)
      for (int p = 0; p < dout; ++p) j(i * dout + o, i * dout + p) = target.matrix(o, p);
  return ChannelRep::make(in, target.shape, std::move(j));
}

ChannelRep partial_trace_channel(const RegisterShape& full, const std::vector<int>& traced) {
  for (int l : traced) (void)full.pos(l);
  const RegisterShape kept = full.complement(traced);
  const int din = static_cast<int>(full.dim());
  const int dout = static_cast<int>(kept.dim());
  std::vector<long long> kept_part, traced_part;
  split_indices(full, kept, kept_part, traced_part);
  CMat j(din * dout);
  for (int i = 0; i < din; ++i)
    for (int jc = 0; jc < din; ++jc)
      if (traced_part[i] == traced_part[jc])
        j(i * dout + static_cast<int>(kept_part[i]),
          jc * dout + static_cast<int>(kept_part[jc])) = 1.0;
  return ChannelRep::make(full, kept, std::move(j));
}

ChannelRep append_state_channel(const RegisterShape& in, const DensityState& appended,
                                const RegisterShape& out) {
  if (in.d != out.d || appended.shape.d != out.d)
    throw std::invalid_argument("append_state_channel: local dimension mismatch");
  for (int l : in.sites)
    if (!out.has_site(l)) throw std::invalid_argument("append_state_channel: out misses input site");
  for (int l : appended.shape.sites)
    if (!out.has_site(l))
      throw std::invalid_argument("append_state_channel: out misses appended site");
  if (static_cast<long long>(in.num_sites() + appended.shape.num_sites()) != out.num_sites())
    throw std::invalid_argument("append_state_channel: out register is not the disjoint union");
  const int din = static_cast<int>(in.dim());
  const int dout = static_cast<int>(out.dim());
  std::vector<long long> in_part, rest_dummy;
  split_indices(out, in, in_part, rest_dummy);
  std::vector<long long> app_part, rest_dummy2;
  split_indices(out, appended.shape, app_part, rest_dummy2);
  CMat j(din * dout);
  for (int a = 0; a < dout; ++a)
    for (int b = 0; b < dout; ++b) {
      const cxd v = appended.matrix(static_cast<int>(app_part[a]), static_cast<int>(app_part[b]));
      if (v == cxd(0.0, 0.0)) continue;
      j(static_cast<int>(in_part[a]) * dout + a, static_cast<int>(in_part[b]) * dout + b) = v;
    }
  return ChannelRep::make(in, out, std::move(j));
}

ChannelRep mixture_channel(const std::vector<ChannelRep>& parts,
                           const std::vector<double>& weights) {
  if (parts.empty()) throw std::invalid_argument("mixture_channel: no channels given");
  std::vector<double> w = weights;
  if (w.empty()) w.assign(parts.size(), 1.0 / static_cast<double>(parts.size()));
  if (w.size() != parts.size())
    throw std::invalid_argument("mixture_channel: weight count does not match channel count");
  CMat j(parts[0].choi.dim());
  for (size_t i = 0; i < parts.size(); ++i) {
    if (!(parts[i].in_shape == parts[0].in_shape) || !(parts[i].out_shape == parts[0].out_shape))
      throw std::invalid_argument("mixture_channel: channels live on different registers");
    if (w[i] < 0.0) throw std::invalid_argument("mixture_channel: negative weight");
    j += w[i] * parts[i].choi;
  }
  return ChannelRep::make(parts[0].in_shape, parts[0].out_shape, std::move(j), 1e-7, 1e-6);
}

}  // namespace qot
