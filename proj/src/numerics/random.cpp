#include <cmath>

#include "bowlab/numerics/random.hpp"

namespace bowlab::numerics {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

// Box-Muller by hand: std::normal_distribution is not pinned across
// standard libraries and seeded runs should not depend on that.
double Rng::normal() {
  constexpr double two_pi = 6.283185307179586476925;
  double u1 = 0.0;
  while (u1 <= 0.0) u1 = std::generate_canonical<double, 53>(engine_);
  double u2 = std::generate_canonical<double, 53>(engine_);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * std::generate_canonical<double, 53>(engine_);
}

int Rng::uniform_int(int lo, int hi) {
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

cplx Rng::complex_normal() {
  double re = normal();
  double im = normal();
  return {re, im};
}

CMatrix Rng::matrix(Index rows, Index cols) {
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = complex_normal();
  return m;
}

CVector Rng::vector(Index n) {
  CVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = complex_normal();
  return v;
}

CMatrix Rng::invertible(Index n, double min_sigma) {
  while (true) {
    CMatrix m = matrix(n, n);
    if (n == 0) return m;
    Eigen::JacobiSVD<CMatrix> svd(m);
    if (svd.singularValues()(n - 1) >= min_sigma) return m;
  }
}

}  // namespace bowlab::numerics
