#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "bowlab/error.hpp"

namespace bowlab::numerics {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

struct Tolerances {
  double rank_tol = 1e-9;      // relative singular-value cutoff
  double residual_tol = 1e-10;
  double fd_step = 1e-6;

  // throws InvalidArgument
  void validate() const;
};

// Throws InvalidArgument when m holds NaN or Inf.
void require_finite(const CMatrix& m, const char* what);

// Singular values above rank_tol * max(sigma_max, scale).
// With scale = 0 this is the plain relative rule.
Index rank(const CMatrix& m, const Tolerances& tol);
Index rank(const CMatrix& m, double rank_tol, double scale = 0.0);

class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(Index ambient_dim);  // zero subspace

  static Subspace zero(Index n) { return Subspace(n); }
  static Subspace full(Index n);
  // Column span of `vectors`, orthonormalised by SVD.
  static Subspace span(const CMatrix& vectors, double rank_tol, double scale = 0.0);
  // Adopts an already orthonormal basis.
  static Subspace from_orthonormal(CMatrix basis);

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.cols(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }
  const CMatrix& basis() const { return basis_; }

  CMatrix projector() const;
  // Largest column norm of (1 - P) v.
  double distance(const CMatrix& vectors) const;
  bool contains(const CMatrix& vectors, double tol) const;
  bool contains(const Subspace& other, double tol) const;
  bool same_as(const Subspace& other, double tol) const;

 private:
  Index ambient_ = 0;
  CMatrix basis_;
};

Subspace kernel_basis(const CMatrix& m, const Tolerances& tol);
Subspace image_basis(const CMatrix& m, const Tolerances& tol);
Subspace kernel_basis(const CMatrix& m, double rank_tol, double scale);
Subspace image_basis(const CMatrix& m, double rank_tol, double scale);

Subspace intersect(const Subspace& u, const Subspace& w, double rank_tol);
Subspace sum(const Subspace& u, const Subspace& w, double rank_tol);
Subspace image(const CMatrix& op, const Subspace& s, double rank_tol, double scale);
Subspace preimage(const CMatrix& op, const Subspace& t, double rank_tol, double scale);

// Largest singular value, 0 for empty matrices.
double spectral_norm(const CMatrix& m);

// Backend used by the templated invariant-subspace routines.
struct ComplexAlgebra {
  using Matrix = CMatrix;
  using Space = Subspace;

  double rank_tol = 1e-9;
  double scale = 0.0;  // magnitude of the surrounding data

  Space zero(Index n) const { return Subspace::zero(n); }
  Space full(Index n) const { return Subspace::full(n); }
  Space kernel(const Matrix& m) const { return kernel_basis(m, rank_tol, scale); }
  Space column_space(const Matrix& m) const { return image_basis(m, rank_tol, scale); }
  Space intersect(const Space& a, const Space& b) const { return numerics::intersect(a, b, rank_tol); }
  Space sum(const Space& a, const Space& b) const { return numerics::sum(a, b, rank_tol); }
  Space image(const Matrix& m, const Space& s) const { return numerics::image(m, s, rank_tol, scale); }
  Space preimage(const Matrix& m, const Space& t) const { return numerics::preimage(m, t, rank_tol, scale); }
  Index dim(const Space& s) const { return s.dim(); }
  Index ambient(const Space& s) const { return s.ambient_dim(); }
  Index rows(const Matrix& m) const { return m.rows(); }
  Index cols(const Matrix& m) const { return m.cols(); }
};

}  // namespace bowlab::numerics
