#include "bowlab/triangle/triangle.hpp"

namespace bowlab::triangle {

using numerics::spectral_norm;

namespace {

void expect_shape(const CMatrix& m, Index r, Index c, const char* what) {
  if (m.rows() != r || m.cols() != c)
    throw ShapeMismatch(std::string(what) + " has shape " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + ", expected " + std::to_string(r) + "x" +
                        std::to_string(c));
}

CMatrix checked_inverse(const CMatrix& g, Index n, const char* what) {
  expect_shape(g, n, n, what);
  if (numerics::rank(g, Tolerances{}) < n) throw SingularMatrix(std::string(what) + " is singular");
  return g.inverse();
}

}  // namespace

TriangleData TriangleData::zero(Index v1, Index v2) {
  return {CMatrix::Zero(v2, v1), CMatrix::Zero(v1, v1), CMatrix::Zero(v2, v2),
          CMatrix::Zero(1, v1), CMatrix::Zero(v2, 1)};
}

void TriangleData::validate() const {
  const Index n1 = B1.rows(), n2 = B2.rows();
  expect_shape(A, n2, n1, "A");
  expect_shape(B1, n1, n1, "B1");
  expect_shape(B2, n2, n2, "B2");
  expect_shape(b, 1, n1, "b");
  expect_shape(a, n2, 1, "a");
}

Index TriangleData::parameter_count() const {
  return A.size() + B1.size() + B2.size() + b.size() + a.size();
}

CVector TriangleData::flatten() const {
  CVector out(parameter_count());
  Index k = 0;
  for (const CMatrix* m : {&A, &B1, &B2, &b, &a})
    for (Index i = 0; i < m->rows(); ++i)
      for (Index j = 0; j < m->cols(); ++j) out(k++) = (*m)(i, j);
  return out;
}

TriangleData TriangleData::unflatten(const CVector& data) const {
  if (data.size() != parameter_count()) throw ShapeMismatch("flat triangle has the wrong length");
  TriangleData out = *this;
  Index k = 0;
  for (CMatrix* m : {&out.A, &out.B1, &out.B2, &out.b, &out.a})
    for (Index i = 0; i < m->rows(); ++i)
      for (Index j = 0; j < m->cols(); ++j) (*m)(i, j) = data(k++);
  return out;
}

double TriangleData::scale() const {
  double s = 0.0;
  for (const CMatrix* m : {&A, &B1, &B2, &b, &a}) s = std::max(s, spectral_norm(*m));
  return s;
}

TwoWayData TwoWayData::zero(Index vt, Index vh) {
  return {CMatrix::Zero(vh, vt), CMatrix::Zero(vt, vh)};
}

void TwoWayData::validate() const { expect_shape(D, C.cols(), C.rows(), "D"); }

double condition_a_residual(const TriangleData& t) {
  t.validate();
  return (t.B2 * t.A - t.A * t.B1 + t.a * t.b).norm();
}

ConditionCheck check_S1(const TriangleData& t, const Tolerances& tol) {
  t.validate();
  numerics::ComplexAlgebra alg{tol.rank_tol, t.scale()};
  Subspace bad = s1_obstruction(alg, t.A, t.B1, t.b);
  return {bad.is_zero(), bad};
}

ConditionCheck check_S2(const TriangleData& t, const Tolerances& tol) {
  t.validate();
  numerics::ComplexAlgebra alg{tol.rank_tol, t.scale()};
  Subspace closure = s2_closure(alg, t.A, t.B2, t.a);
  return {closure.is_full(), closure};
}

std::pair<CMatrix, CMatrix> triangle_moment(const TriangleData& t) {
  t.validate();
  return {t.B1, -t.B2};
}

TriangleData triangle_gauge_action(const CMatrix& g1, const CMatrix& g2, const TriangleData& t) {
  t.validate();
  CMatrix g1i = checked_inverse(g1, t.v1(), "g1");
  CMatrix g2i = checked_inverse(g2, t.v2(), "g2");
  return {g2 * t.A * g1i, g1 * t.B1 * g1i, g2 * t.B2 * g2i, t.b * g1i, g2 * t.a};
}

TriangleData triangle_action_vector(const CMatrix& xi1, const CMatrix& xi2, const TriangleData& t) {
  t.validate();
  expect_shape(xi1, t.v1(), t.v1(), "xi1");
  expect_shape(xi2, t.v2(), t.v2(), "xi2");
  return {xi2 * t.A - t.A * xi1, xi1 * t.B1 - t.B1 * xi1, xi2 * t.B2 - t.B2 * xi2, -t.b * xi1,
          xi2 * t.a};
}

std::pair<CMatrix, CMatrix> two_way_moment(const TwoWayData& d) {
  d.validate();
  return {-(d.D * d.C), d.C * d.D};
}

cplx two_way_symplectic_pairing(const TwoWayData& t1, const TwoWayData& t2) {
  t1.validate();
  t2.validate();
  if (t1.C.rows() != t2.C.rows() || t1.C.cols() != t2.C.cols())
    throw ShapeMismatch("two-way tangents of different shapes");
  return (t2.D * t1.C).trace() - (t1.D * t2.C).trace();
}

TwoWayData two_way_action_vector(const CMatrix& xi_t, const CMatrix& xi_h, const TwoWayData& d) {
  d.validate();
  expect_shape(xi_t, d.C.cols(), d.C.cols(), "xi_t");
  expect_shape(xi_h, d.C.rows(), d.C.rows(), "xi_h");
  return {xi_h * d.C - d.C * xi_t, xi_t * d.D - d.D * xi_h};
}

}  // namespace bowlab::triangle
