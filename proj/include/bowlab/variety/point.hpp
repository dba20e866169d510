#pragma once

#include <vector>

#include "bowlab/bowmodel/diagram.hpp"
#include "bowlab/triangle/triangle.hpp"

namespace bowlab::variety {

using bowmodel::BowDiagram;
using numerics::CMatrix;
using numerics::cplx;
using numerics::CVector;
using numerics::Index;
using numerics::Tolerances;
using triangle::ShapeMismatch;
using triangle::TriangleData;
using triangle::TwoWayData;

// A point of the ambient space: one triangle per x-point (global x-point id)
// and one (C, D) pair per edge. Tangent vectors use the same type.
struct TotalSpacePoint {
  std::vector<TriangleData> triangles;
  std::vector<TwoWayData> edges;

  static TotalSpacePoint zero(const BowDiagram& d);
  void validate(const BowDiagram& d) const;  // throws ShapeMismatch

  // Triangles in x-point order (A, B1, B2, b, a), then edges (C, D); row-major.
  Index parameter_count() const;
  CVector flatten() const;
  TotalSpacePoint unflatten(const CVector& data) const;
  double scale() const;
};

// One matrix per segment (global segment id).
using SegmentMatrices = std::vector<CMatrix>;

TotalSpacePoint gauge_action(const BowDiagram& d, const SegmentMatrices& g,
                             const TotalSpacePoint& p);
TotalSpacePoint action_vector(const BowDiagram& d, const SegmentMatrices& xi,
                              const TotalSpacePoint& p);

Index gauge_group_dimension(const BowDiagram& d);

// Columns: Lie algebra basis E_kl per segment (row-major); rows: flattened point.
CMatrix action_differential(const BowDiagram& d, const TotalSpacePoint& p);

// Sum of the triangle forms (through the normal-form chart) and the two-way forms.
cplx total_symplectic_pairing(const BowDiagram& d, const TotalSpacePoint& p,
                              const TotalSpacePoint& t1, const TotalSpacePoint& t2,
                              double step = 1e-6);

// (S1) and (S2) at every x-point.
bool open_conditions_hold(const TotalSpacePoint& p, const Tolerances& tol);

}  // namespace bowlab::variety
