#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <utility>

#include "bowlab/numerics/invariant.hpp"
#include "bowlab/numerics/linalg.hpp"

namespace bowlab::triangle {

using numerics::CMatrix;
using numerics::cplx;
using numerics::CVector;
using numerics::Index;
using numerics::Subspace;
using numerics::Tolerances;

class ShapeMismatch : public DimensionMismatch {
 public:
  using DimensionMismatch::DimensionMismatch;
};
class SingularU : public SingularMatrix {
 public:
  using SingularMatrix::SingularMatrix;
};
class NotATriangle : public Error {
 public:
  using Error::Error;
};
class GaugeFixFailed : public Error {
 public:
  using Error::Error;
};
class FixedBlockViolation : public Error {
 public:
  using Error::Error;
};

// (A, B1, B2, b, a) with A : C^v1 -> C^v2. B1 and B2 are the B^- and B^+ maps.
// Tangent vectors use the same layout.
struct TriangleData {
  CMatrix A, B1, B2, b, a;

  static TriangleData zero(Index v1, Index v2);
  Index v1() const { return B1.rows(); }
  Index v2() const { return B2.rows(); }
  void validate() const;  // throws ShapeMismatch

  Index parameter_count() const;
  CVector flatten() const;
  TriangleData unflatten(const CVector& data) const;
  double scale() const;
};

// Hurtubise coordinates. With n = max(v1, v2), m = min, k = n - m - 1:
//   v1 == v2: (u, h, I, J) with h n x n, I n x 1, J 1 x n;
//   v1 != v2: (u, eta) where eta = [[h, 0, g], [f, 0, e0], [0, id_k, e]]
//             over row blocks m / 1 / k and column blocks m / k / 1.
// Only the free blocks are stored; tangent vectors use the same layout.
struct HurtubiseForm {
  Index v1 = 0, v2 = 0;
  CMatrix u;
  CMatrix h;
  CMatrix I, J;  // equal dims
  CMatrix f, g;  // unequal dims: 1 x m, m x 1
  cplx e0 = 0.0;
  CMatrix e;     // unequal dims: k x 1

  static HurtubiseForm zero(Index v1, Index v2);  // u = identity
  bool equal_dims() const { return v1 == v2; }
  Index n() const { return std::max(v1, v2); }
  Index m() const { return std::min(v1, v2); }
  Index k() const { return n() - m() - 1; }
  void validate() const;  // throws ShapeMismatch

  // Assembled eta (unequal dims), fixed blocks included unless `tangent`.
  CMatrix eta(bool tangent = false) const;
  // Reads the free blocks; throws FixedBlockViolation if a fixed block is off.
  static HurtubiseForm from_eta(Index v1, Index v2, const CMatrix& u, const CMatrix& eta,
                                bool tangent = false);

  Index parameter_count() const;
  CVector flatten() const;
  HurtubiseForm unflatten(const CVector& data) const;
};

struct TwoWayData {
  CMatrix C, D;  // C : V_t -> V_h, D : V_h -> V_t

  static TwoWayData zero(Index vt, Index vh);
  void validate() const;
};

double condition_a_residual(const TriangleData& t);

struct ConditionCheck {
  bool ok = true;
  Subspace witness;  // (S1): offending subspace of V1; (S2): proper invariant subspace of V2
};

// (S1): no nonzero B1-invariant subspace inside Ker A and Ker b.
ConditionCheck check_S1(const TriangleData& t, const Tolerances& tol);
// (S2): the B2-closure of Im A + Im a is all of V2.
ConditionCheck check_S2(const TriangleData& t, const Tolerances& tol);

// Field-generic forms of the two checks, returning the obstruction subspace
// (largest invariant inside, resp. the closure).
template <numerics::SubspaceAlgebra Alg>
typename Alg::Space s1_obstruction(const Alg& alg, const typename Alg::Matrix& A,
                                   const typename Alg::Matrix& B1, const typename Alg::Matrix& b) {
  auto w = alg.intersect(alg.kernel(A), alg.kernel(b));
  std::array<typename Alg::Matrix, 1> ops{B1};
  return numerics::largest_invariant_inside<Alg>(alg, std::move(w), ops);
}

template <numerics::SubspaceAlgebra Alg>
typename Alg::Space s2_closure(const Alg& alg, const typename Alg::Matrix& A,
                               const typename Alg::Matrix& B2, const typename Alg::Matrix& a) {
  auto w = alg.sum(alg.column_space(A), alg.column_space(a));
  std::array<typename Alg::Matrix, 1> ops{B2};
  return numerics::smallest_invariant_containing<Alg>(alg, std::move(w), ops);
}

TriangleData hurtubise_to_triangle(const HurtubiseForm& f, const Tolerances& tol = {});

// Derivative of hurtubise_to_triangle at f along the chart tangent df.
TriangleData hurtubise_tangent(const HurtubiseForm& f, const HurtubiseForm& df);

// Checks (a), (S1), (S2) first; throws NotATriangle or GaugeFixFailed.
HurtubiseForm triangle_to_hurtubise(const TriangleData& t, const Tolerances& tol = {});

// The same inversion formulas without the membership checks. Used to
// linearise the chart.
HurtubiseForm chart_coordinates(const TriangleData& t);

// (B1, -B2)
std::pair<CMatrix, CMatrix> triangle_moment(const TriangleData& t);

// (g2 A g1^-1, g1 B1 g1^-1, g2 B2 g2^-1, b g1^-1, g2 a)
TriangleData triangle_gauge_action(const CMatrix& g1, const CMatrix& g2, const TriangleData& t);
TriangleData triangle_action_vector(const CMatrix& xi1, const CMatrix& xi2, const TriangleData& t);

// Block action on the chart, matching triangle_gauge_action through hurtubise_to_triangle.
HurtubiseForm hurtubise_gauge_action(const CMatrix& g1, const CMatrix& g2, const HurtubiseForm& f);
HurtubiseForm hurtubise_action_vector(const CMatrix& xi1, const CMatrix& xi2,
                                      const HurtubiseForm& f);

// With X = du u^-1:
//   v1 != v2: tr(d eta ^ X + eta X ^ X)
//   v1 == v2: tr(dh ^ X + h X ^ X) + dI ^ dJ
cplx hurtubise_symplectic_pairing(const HurtubiseForm& f, const HurtubiseForm& t1,
                                  const HurtubiseForm& t2);

// Chart image of a tangent vector at t, by central differences.
HurtubiseForm triangle_tangent_to_chart(const TriangleData& t, const TriangleData& dt,
                                        double step = 1e-6);

// Symplectic pairing of two tangent vectors at t, through the chart.
cplx triangle_symplectic_pairing(const TriangleData& t, const TriangleData& dt1,
                                 const TriangleData& dt2, double step = 1e-6);

// (-DC, CD): values at the tail and head segments.
std::pair<CMatrix, CMatrix> two_way_moment(const TwoWayData& d);
// tr(D2 C1 - D1 C2)
cplx two_way_symplectic_pairing(const TwoWayData& t1, const TwoWayData& t2);
// (xi_h C - C xi_t, xi_t D - D xi_h)
TwoWayData two_way_action_vector(const CMatrix& xi_t, const CMatrix& xi_h, const TwoWayData& d);

}  // namespace bowlab::triangle
