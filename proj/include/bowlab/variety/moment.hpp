#pragma once

#include "bowlab/variety/point.hpp"

namespace bowlab::variety {

// mu at each segment: sum of CD over edges ending there, minus DC over edges
// leaving, plus B- of the x-point on its right, minus B+ of the x-point on its left.
SegmentMatrices total_moment_map(const BowDiagram& d, const TotalSpacePoint& p);

// Condition (a) residual matrix at every x-point.
std::vector<CMatrix> mu1_residual(const BowDiagram& d, const TotalSpacePoint& p);

// Flattened (mu1, mu2 - nu id): x-point blocks then segment blocks, row-major.
CVector level_residual(const BowDiagram& d, const TotalSpacePoint& p, const std::vector<cplx>& nu);

// Analytic Jacobian of level_residual with respect to TotalSpacePoint::flatten.
CMatrix moment_jacobian(const BowDiagram& d, const TotalSpacePoint& p);

// Number of mu1 rows in moment_jacobian.
Index mu1_row_count(const BowDiagram& d);

}  // namespace bowlab::variety
