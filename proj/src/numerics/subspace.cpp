#include <algorithm>
#include <cmath>

#include "bowlab/numerics/invariant.hpp"
#include "bowlab/numerics/linalg.hpp"

namespace bowlab::numerics {

void Tolerances::validate() const {
  if (!(rank_tol > 0.0) || !(rank_tol < 1.0))
    throw InvalidArgument("rank_tol must lie in (0, 1)");
  if (!(residual_tol > 0.0)) throw InvalidArgument("residual_tol must be positive");
  if (!(fd_step > 0.0)) throw InvalidArgument("fd_step must be positive");
}

void require_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) throw InvalidArgument(std::string(what) + ": non-finite entry");
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

namespace {

double cutoff(const Eigen::VectorXd& sv, double rank_tol, double scale) {
  double top = sv.size() > 0 ? sv(0) : 0.0;
  return rank_tol * std::max(top, scale);
}

Index count_above(const Eigen::VectorXd& sv, double cut) {
  Index r = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

}  // namespace

Index rank(const CMatrix& m, double rank_tol, double scale) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0;
  return count_above(sv, cutoff(sv, rank_tol, scale));
}

Index rank(const CMatrix& m, const Tolerances& tol) { return rank(m, tol.rank_tol, 0.0); }

Subspace::Subspace(Index ambient_dim) : ambient_(ambient_dim), basis_(ambient_dim, 0) {}

Subspace Subspace::full(Index n) {
  Subspace s(n);
  s.basis_ = CMatrix::Identity(n, n);
  return s;
}

Subspace Subspace::from_orthonormal(CMatrix basis) {
  Subspace s(basis.rows());
  s.basis_ = std::move(basis);
  return s;
}

Subspace Subspace::span(const CMatrix& vectors, double rank_tol, double scale) {
  const Index n = vectors.rows();
  if (vectors.cols() == 0 || n == 0) return Subspace(n);
  Eigen::JacobiSVD<CMatrix> svd(vectors, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return Subspace(n);
  Index r = count_above(sv, cutoff(sv, rank_tol, scale));
  return from_orthonormal(svd.matrixU().leftCols(r));
}

CMatrix Subspace::projector() const { return basis_ * basis_.adjoint(); }

double Subspace::distance(const CMatrix& vectors) const {
  if (vectors.cols() == 0) return 0.0;
  if (vectors.rows() != ambient_) throw DimensionMismatch("vector length differs from ambient dim");
  CMatrix rest = vectors - basis_ * (basis_.adjoint() * vectors);
  return rest.colwise().norm().maxCoeff();
}

bool Subspace::contains(const CMatrix& vectors, double tol) const {
  return distance(vectors) <= tol;
}

bool Subspace::contains(const Subspace& other, double tol) const {
  return contains(other.basis(), tol);
}

bool Subspace::same_as(const Subspace& other, double tol) const {
  return ambient_ == other.ambient_ && dim() == other.dim() && contains(other, tol);
}

Subspace kernel_basis(const CMatrix& m, double rank_tol, double scale) {
  const Index n = m.cols();
  if (n == 0) return Subspace(0);
  if (m.rows() == 0) return Subspace::full(n);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Index r = sv(0) == 0.0 ? 0 : count_above(sv, cutoff(sv, rank_tol, scale));
  return Subspace::from_orthonormal(svd.matrixV().rightCols(n - r));
}

Subspace image_basis(const CMatrix& m, double rank_tol, double scale) {
  return Subspace::span(m, rank_tol, scale);
}

Subspace kernel_basis(const CMatrix& m, const Tolerances& tol) {
  return kernel_basis(m, tol.rank_tol, 0.0);
}

Subspace image_basis(const CMatrix& m, const Tolerances& tol) {
  return image_basis(m, tol.rank_tol, 0.0);
}

Subspace intersect(const Subspace& u, const Subspace& w, double rank_tol) {
  if (u.ambient_dim() != w.ambient_dim()) throw DimensionMismatch("intersect: ambient dims differ");
  if (u.is_zero() || w.is_full()) return u;
  if (w.is_zero() || u.is_full()) return w;
  // x in u with (1 - P_w) Q_u x = 0; singular values here are sines of angles
  CMatrix off = u.basis() - w.basis() * (w.basis().adjoint() * u.basis());
  Subspace coeffs = kernel_basis(off, rank_tol, 1.0);
  if (coeffs.is_zero()) return Subspace(u.ambient_dim());
  return Subspace::span(u.basis() * coeffs.basis(), rank_tol, 1.0);
}

Subspace sum(const Subspace& u, const Subspace& w, double rank_tol) {
  if (u.ambient_dim() != w.ambient_dim()) throw DimensionMismatch("sum: ambient dims differ");
  if (u.is_zero() || w.is_full()) return w;
  if (w.is_zero() || u.is_full()) return u;
  CMatrix both(u.ambient_dim(), u.dim() + w.dim());
  both << u.basis(), w.basis();
  return Subspace::span(both, rank_tol, 1.0);
}

Subspace image(const CMatrix& op, const Subspace& s, double rank_tol, double scale) {
  if (op.cols() != s.ambient_dim()) throw DimensionMismatch("image: operator width mismatch");
  if (s.is_zero()) return Subspace(op.rows());
  return Subspace::span(op * s.basis(), rank_tol, std::max(scale, spectral_norm(op)));
}

Subspace preimage(const CMatrix& op, const Subspace& t, double rank_tol, double scale) {
  if (op.rows() != t.ambient_dim()) throw DimensionMismatch("preimage: operator height mismatch");
  if (t.is_full()) return Subspace::full(op.cols());
  CMatrix off = op - t.basis() * (t.basis().adjoint() * op);
  return kernel_basis(off, rank_tol, std::max(scale, spectral_norm(op)));
}

namespace {

ComplexAlgebra algebra_for(std::span<const CMatrix> ops, const Tolerances& tol) {
  ComplexAlgebra alg;
  alg.rank_tol = tol.rank_tol;
  for (const auto& op : ops) alg.scale = std::max(alg.scale, spectral_norm(op));
  return alg;
}

}  // namespace

Subspace largest_invariant_inside(const Subspace& w, std::span<const CMatrix> ops,
                                  const Tolerances& tol) {
  return largest_invariant_inside<ComplexAlgebra>(algebra_for(ops, tol), w, ops);
}

Subspace smallest_invariant_containing(const Subspace& w, std::span<const CMatrix> ops,
                                       const Tolerances& tol) {
  return smallest_invariant_containing<ComplexAlgebra>(algebra_for(ops, tol), w, ops);
}

}  // namespace bowlab::numerics
