#pragma once

#include <cstdint>
#include <vector>

#include "bowlab/numerics/linalg.hpp"

namespace bowlab::numerics {

// Dense matrix over Z/p, entries kept in [0, p).
struct FpMatrix {
  Index rows = 0;
  Index cols = 0;
  std::vector<int> data;  // row-major

  FpMatrix() = default;
  FpMatrix(Index r, Index c) : rows(r), cols(c), data(static_cast<std::size_t>(r * c), 0) {}

  int& operator()(Index i, Index j) { return data[static_cast<std::size_t>(i * cols + j)]; }
  int operator()(Index i, Index j) const { return data[static_cast<std::size_t>(i * cols + j)]; }
  bool operator==(const FpMatrix&) const = default;
};

// Exact subspace arithmetic over a prime field. A space is stored as the
// reduced row echelon form of a spanning set, so equal spaces compare equal.
class PrimeFieldAlgebra {
 public:
  struct Space {
    Index ambient = 0;
    FpMatrix rref;  // dim x ambient
    bool operator==(const Space&) const = default;
  };
  using Matrix = FpMatrix;

  explicit PrimeFieldAlgebra(int p);
  int modulus() const { return p_; }

  FpMatrix reduce(const FpMatrix& m) const;  // entries mod p
  FpMatrix multiply(const FpMatrix& a, const FpMatrix& b) const;
  FpMatrix rref(FpMatrix m, std::vector<Index>* pivots = nullptr) const;
  Index rank(const FpMatrix& m) const;

  // Span of the given row vectors / column vectors.
  Space span_rows(const FpMatrix& rows, Index ambient) const;
  Space span_columns(const FpMatrix& cols) const;

  Space zero(Index n) const;
  Space full(Index n) const;
  Space kernel(const Matrix& m) const;
  Space column_space(const Matrix& m) const { return span_columns(m); }
  Space intersect(const Space& a, const Space& b) const;
  Space sum(const Space& a, const Space& b) const;
  Space image(const Matrix& m, const Space& s) const;
  Space preimage(const Matrix& m, const Space& t) const;
  Index dim(const Space& s) const { return s.rref.rows; }
  Index ambient(const Space& s) const { return s.ambient; }
  Index rows(const Matrix& m) const { return m.rows; }
  Index cols(const Matrix& m) const { return m.cols; }

  bool contains(const Space& s, const std::vector<int>& v) const;

 private:
  int inv(int a) const;
  Space annihilator(const Space& s) const;

  int p_;
};

}  // namespace bowlab::numerics
