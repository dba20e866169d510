#pragma once

#include <cstdint>
#include <random>

#include "bowlab/numerics/linalg.hpp"

namespace bowlab::numerics {

// Seed for start `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal();
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);  // inclusive
  cplx complex_normal();            // independent N(0,1) real and imaginary parts
  CMatrix matrix(Index rows, Index cols);
  CVector vector(Index n);
  // Random matrix with singular values kept away from zero.
  CMatrix invertible(Index n, double min_sigma = 0.3);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bowlab::numerics
