#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bowlab/numerics/linalg.hpp"

namespace bowlab::quiver {

using numerics::CMatrix;
using numerics::cplx;
using numerics::CVector;
using numerics::Index;

struct Arrow {
  std::size_t tail = 0;
  std::size_t head = 0;
  bool operator==(const Arrow&) const = default;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;  // loops allowed

  void validate() const;  // throws InvalidArgument
  bool operator==(const Quiver&) const = default;
};

class ShapeMismatch : public DimensionMismatch {
 public:
  using DimensionMismatch::DimensionMismatch;
};

// Point of T*Rep(Q, v, w). Tangent vectors use the same layout.
struct QuiverRepPoint {
  Quiver quiver;
  std::vector<Index> v, w;
  std::vector<CMatrix> x, y;  // per arrow: x_e : V_t -> V_h, y_e : V_h -> V_t
  std::vector<CMatrix> I, J;  // per vertex: I_i : W_i -> V_i, J_i : V_i -> W_i

  static QuiverRepPoint zero(const Quiver& q, std::vector<Index> v, std::vector<Index> w);
  void validate() const;  // throws ShapeMismatch

  std::size_t parameter_count() const;
  CVector flatten() const;
  QuiverRepPoint unflatten(const CVector& data) const;  // same shapes as *this
  double scale() const;  // largest spectral norm among the maps
};

// Per-vertex values sum_{h(e)=i} x_e y_e - sum_{t(e)=i} y_e x_e + I_i J_i.
std::vector<CMatrix> rep_moment_map(const QuiverRepPoint& p);

// (g x g^-1, g y g^-1, g I, J g^-1); throws SingularMatrix.
QuiverRepPoint rep_gauge_action(const std::vector<CMatrix>& g, const QuiverRepPoint& p);

// Tangent vector of the infinitesimal action of xi (one matrix per vertex).
QuiverRepPoint rep_action_vector(const std::vector<CMatrix>& xi, const QuiverRepPoint& p);

// sum_e tr(y2 x1 - y1 x2) + sum_i tr(J2 I1 - J1 I2)
cplx rep_symplectic_pairing(const QuiverRepPoint& t1, const QuiverRepPoint& t2);

// sum_i tr(m_i xi_i)
cplx trace_pairing(const std::vector<CMatrix>& m, const std::vector<CMatrix>& xi);

}  // namespace bowlab::quiver
