#pragma once
// Deterministic random streams (xoshiro256** seeded through splitmix64).
// Every sampling task derives its own stream from (seed, stream_id), so
// results do not depend on evaluation order or trial partitioning.

#include "qot/matrix.hpp"

#include <cstdint>
#include <vector>

namespace qot {

class Rng {
public:
  explicit Rng(uint64_t seed) { reseed(seed, 0); }
  Rng(uint64_t seed, uint64_t stream_id) { reseed(seed, stream_id); }

  void reseed(uint64_t seed, uint64_t stream_id);
  uint64_t next_u64();
  double uniform();                 // [0, 1)
  double uniform(double a, double b);
  double gaussian();                // standard normal, Box-Muller (polar)
  int uniform_int(int n);           // {0, ..., n-1}

private:
  uint64_t s_[4] = {0, 0, 0, 0};
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Haar random unit vector of the given dimension.
std::vector<cxd> haar_state(Rng& rng, int dim);
CMat haar_pure_density(Rng& rng, int dim);
// Full-rank random density: normalized G G^dagger with Gaussian G.
CMat random_density(Rng& rng, int dim);
CMat random_hermitian(Rng& rng, int dim);  // GUE-like, entries O(1)
CMat random_traceless_hermitian(Rng& rng, int dim);

}  // namespace qot
