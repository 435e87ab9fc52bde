#include "qot/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace qot {

namespace {
uint64_t splitmix64(uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

void Rng::reseed(uint64_t seed, uint64_t stream_id) {
  uint64_t x = seed ^ (0xA3C59AC2ULL + stream_id * 0x9E3779B97F4A7C15ULL);
  for (int i = 0; i < 4; ++i) s_[i] = splitmix64(x);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // xoshiro forbids all-zero
  have_spare_ = false;
}

uint64_t Rng::next_u64() {
  const uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  have_spare_ = true;
  return u * f;
}

int Rng::uniform_int(int n) {
  if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
  return static_cast<int>(next_u64() % static_cast<uint64_t>(n));
}

std::vector<cxd> haar_state(Rng& rng, int dim) {
  std::vector<cxd> v(dim);
  double norm2 = 0.0;
  for (int i = 0; i < dim; ++i) {
    v[i] = cxd(rng.gaussian(), rng.gaussian());
    norm2 += std::norm(v[i]);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : v) x *= inv;
  return v;
}

CMat haar_pure_density(Rng& rng, int dim) {
  const auto v = haar_state(rng, dim);
  CMat rho(dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) rho(i, j) = v[i] * std::conj(v[j]);
  return rho;
}

CMat random_density(Rng& rng, int dim) {
  CMat g(dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) g(i, j) = cxd(rng.gaussian(), rng.gaussian());
  CMat rho = g * adjoint(g);
  const double tr = trace(rho).real();
  rho *= 1.0 / tr;
  return rho;
}

CMat random_hermitian(Rng& rng, int dim) {
  CMat h(dim);
  for (int i = 0; i < dim; ++i) h(i, i) = rng.gaussian();
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < j; ++i) {
      const cxd e = cxd(rng.gaussian(), rng.gaussian()) / std::sqrt(2.0);
      h(i, j) = e;
      h(j, i) = std::conj(e);
    }
  return h;
}

CMat random_traceless_hermitian(Rng& rng, int dim) {
  CMat h = random_hermitian(rng, dim);
  const double t = trace(h).real() / dim;
  for (int i = 0; i < dim; ++i) h(i, i) -= t;
  return h;
}

}  // namespace qot
