#pragma once

#include "bowlab/variety/point.hpp"

namespace bowlab::variety {

// Shifts B+ and B- at x-point i of each interval by the sum of nu over the
// segments to its right (B-bar = B + sum_{j >= i} nu_j id, i counted from 1).
// Maps the level set of nu to the level set of lambda_of_nu(nu) on first segments.
TotalSpacePoint translate_deformation(const BowDiagram& d, const TotalSpacePoint& p,
                                      const std::vector<cplx>& nu);

long long ambient_dimension(const BowDiagram& d);
long long expected_smooth_dimension(const BowDiagram& d);

struct LocalMapReport {
  std::size_t x_point = 0;
  int configuration = 1;  // 1: alpha at a first x-point, 2: beta at a last x-point
  Index v0 = 0;
  Index rank = 0;
  bool ok = false;  // alpha injective / beta surjective
};

// alpha = (A, b, D_e over edges into the interval) on the first segment;
// beta = A + a + sum D_e over edges out of the interval, onto the last segment.
std::vector<LocalMapReport> check_local_maps(const BowDiagram& d, const TotalSpacePoint& p,
                                             const Tolerances& tol);

Index stabilizer_dimension(const BowDiagram& d, const TotalSpacePoint& p, const Tolerances& tol);

}  // namespace bowlab::variety
