#include "bowlab/numerics/prime_field.hpp"

namespace bowlab::numerics {

PrimeFieldAlgebra::PrimeFieldAlgebra(int p) : p_(p) {
  if (p < 2) throw InvalidArgument("modulus must be a prime >= 2");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw InvalidArgument("modulus must be prime");
}

int PrimeFieldAlgebra::inv(int a) const {
  // Fermat; p is small
  int result = 1, base = a % p_, e = p_ - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return result;
}

FpMatrix PrimeFieldAlgebra::reduce(const FpMatrix& m) const {
  FpMatrix r = m;
  for (auto& x : r.data) x = ((x % p_) + p_) % p_;
  return r;
}

FpMatrix PrimeFieldAlgebra::multiply(const FpMatrix& a, const FpMatrix& b) const {
  if (a.cols != b.rows) throw DimensionMismatch("F_p multiply: inner dims differ");
  FpMatrix c(a.rows, b.cols);
  for (Index i = 0; i < a.rows; ++i)
    for (Index j = 0; j < b.cols; ++j) {
      long acc = 0;
      for (Index k = 0; k < a.cols; ++k) acc += static_cast<long>(a(i, k)) * b(k, j);
      c(i, j) = static_cast<int>(((acc % p_) + p_) % p_);
    }
  return c;
}

FpMatrix PrimeFieldAlgebra::rref(FpMatrix m, std::vector<Index>* pivots) const {
  m = reduce(m);
  Index row = 0;
  if (pivots) pivots->clear();
  for (Index col = 0; col < m.cols && row < m.rows; ++col) {
    Index piv = row;
    while (piv < m.rows && m(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    for (Index j = 0; j < m.cols; ++j) std::swap(m(row, j), m(piv, j));
    int s = inv(m(row, col));
    for (Index j = 0; j < m.cols; ++j) m(row, j) = m(row, j) * s % p_;
    for (Index i = 0; i < m.rows; ++i) {
      if (i == row || m(i, col) == 0) continue;
      int f = m(i, col);
      for (Index j = 0; j < m.cols; ++j) m(i, j) = ((m(i, j) - f * m(row, j)) % p_ + p_) % p_;
    }
    if (pivots) pivots->push_back(col);
    ++row;
  }
  FpMatrix out(row, m.cols);
  for (Index i = 0; i < row; ++i)
    for (Index j = 0; j < m.cols; ++j) out(i, j) = m(i, j);
  return out;
}

Index PrimeFieldAlgebra::rank(const FpMatrix& m) const { return rref(m).rows; }

PrimeFieldAlgebra::Space PrimeFieldAlgebra::span_rows(const FpMatrix& rows, Index ambient) const {
  if (rows.rows > 0 && rows.cols != ambient) throw DimensionMismatch("F_p span: width mismatch");
  if (rows.rows == 0) return zero(ambient);
  return Space{ambient, rref(rows)};
}

PrimeFieldAlgebra::Space PrimeFieldAlgebra::span_columns(const FpMatrix& cols) const {
  FpMatrix t(cols.cols, cols.rows);
  for (Index i = 0; i < cols.rows; ++i)
    for (Index j = 0; j < cols.cols; ++j) t(j, i) = cols(i, j);
  return span_rows(t, cols.rows);
}

PrimeFieldAlgebra::Space PrimeFieldAlgebra::zero(Index n) const { return Space{n, FpMatrix(0, n)}; }

PrimeFieldAlgebra::Space PrimeFieldAlgebra::full(Index n) const {
  FpMatrix id(n, n);
  for (Index i = 0; i < n; ++i) id(i, i) = 1;
  return Space{n, id};
}

PrimeFieldAlgebra::Space PrimeFieldAlgebra::kernel(const Matrix& m) const {
  std::vector<Index> pivots;
  FpMatrix r = rref(m, &pivots);
  const Index n = m.cols;
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  FpMatrix basis(n - static_cast<Index>(pivots.size()), n);
  Index k = 0;
  for (Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(k, free) = 1;
    for (Index i = 0; i < r.rows; ++i)
      basis(k, pivots[static_cast<std::size_t>(i)]) = (p_ - r(i, free)) % p_;
    ++k;
  }
  return span_rows(basis, n);
}

PrimeFieldAlgebra::Space PrimeFieldAlgebra::annihilator(const Space& s) const {
  if (s.rref.rows == 0) return full(s.ambient);
  return kernel(s.rref);
}

PrimeFieldAlgebra::Space PrimeFieldAlgebra::sum(const Space& a, const Space& b) const {
  if (a.ambient != b.ambient) throw DimensionMismatch("F_p sum: ambient dims differ");
  FpMatrix both(a.rref.rows + b.rref.rows, a.ambient);
  for (Index i = 0; i < a.rref.rows; ++i)
    for (Index j = 0; j < a.ambient; ++j) both(i, j) = a.rref(i, j);
  for (Index i = 0; i < b.rref.rows; ++i)
    for (Index j = 0; j < a.ambient; ++j) both(a.rref.rows + i, j) = b.rref(i, j);
  return span_rows(both, a.ambient);
}

PrimeFieldAlgebra::Space PrimeFieldAlgebra::intersect(const Space& a, const Space& b) const {
  if (a.ambient != b.ambient) throw DimensionMismatch("F_p intersect: ambient dims differ");
  return annihilator(sum(annihilator(a), annihilator(b)));
}

PrimeFieldAlgebra::Space PrimeFieldAlgebra::image(const Matrix& m, const Space& s) const {
  if (m.cols != s.ambient) throw DimensionMismatch("F_p image: width mismatch");
  if (s.rref.rows == 0) return zero(m.rows);
  FpMatrix cols(s.ambient, s.rref.rows);
  for (Index i = 0; i < s.rref.rows; ++i)
    for (Index j = 0; j < s.ambient; ++j) cols(j, i) = s.rref(i, j);
  return span_columns(multiply(m, cols));
}

PrimeFieldAlgebra::Space PrimeFieldAlgebra::preimage(const Matrix& m, const Space& t) const {
  if (m.rows != t.ambient) throw DimensionMismatch("F_p preimage: height mismatch");
  Space ann = annihilator(t);
  if (ann.rref.rows == 0) return full(m.cols);
  return kernel(multiply(ann.rref, m));
}

bool PrimeFieldAlgebra::contains(const Space& s, const std::vector<int>& v) const {
  FpMatrix row(1, s.ambient);
  for (Index j = 0; j < s.ambient; ++j) row(0, j) = v[static_cast<std::size_t>(j)];
  return sum(s, span_rows(row, s.ambient)).rref.rows == s.rref.rows;
}

}  // namespace bowlab::numerics
