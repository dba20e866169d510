#pragma once

#include <string>

#include "bowlab/quiver/quiver.hpp"
#include "bowlab/quiver/stability.hpp"
#include "bowlab/variety/solve.hpp"

namespace bowlab::cobalanced {

using bowmodel::BowDiagram;
using numerics::CMatrix;
using numerics::cplx;
using numerics::Index;
using numerics::Tolerances;
using variety::TotalSpacePoint;

class SingularA : public SingularMatrix {
 public:
  using SingularMatrix::SingularMatrix;
};
class MuHNonzero : public Error {
 public:
  using Error::Error;
};

// A point with every A_x equal to the identity. I_tilde[x] = a_x, J_tilde[x] = b_x.
struct HReducedPoint {
  TotalSpacePoint point;
  std::vector<CMatrix> I_tilde, J_tilde;
};

// Norm of mu on all non-first segments.
double mu_H_norm(const BowDiagram& d, const TotalSpacePoint& p);

// Walks each wavy line from its first segment with g_0 = id, g_{i+1} = g_i A_i^-1.
// mu_H must vanish to tol.residual_tol * max(1, scale)^2.
// Throws NotCobalanced, SingularA, MuHNonzero.
HReducedPoint gauge_fix_H(const BowDiagram& d, const TotalSpacePoint& p, const Tolerances& tol = {});

// The H gauge used by gauge_fix_H (identity on first segments).
variety::SegmentMatrices H_gauge(const BowDiagram& d, const TotalSpacePoint& p,
                                 const Tolerances& tol = {});

// Phi: x = C, y = D; I_sigma = [a_x ...], J_sigma = [b_x; ...] in wavy-line order.
quiver::QuiverRepPoint to_quiver_point(const BowDiagram& d, const HReducedPoint& r);

// Phi^-1: A = id, B from the backward recursion
// B+_last = -sum_out DC, B-_x = B+_x + a_x b_x, B+_prev = B-_x.
HReducedPoint from_quiver_point(const BowDiagram& d, const quiver::QuiverRepPoint& q);

struct ReductionReport {
  bool solved = false;
  double residual_norm = 0.0;
  double mu_H = 0.0;
  double moment_transport_error = 0.0;  // max over vertices of |mu_rep - lambda id|
  std::string bow_verdict, quiver_verdict;
  bool verdicts_agree = false;
  bool exact = false;  // both verdicts from exact01
  bool passed = false;
  std::optional<quiver::QuiverRepPoint> quiver_point;
  std::optional<variety::InfeasibilityEvidence> evidence;
};

// Solve the bow fiber, gauge-fix, map by Phi, compare moments and verdicts.
ReductionReport verify_reduction(const BowDiagram& d, const std::vector<cplx>& lambda,
                                 const std::vector<long long>& theta,
                                 const variety::SolveConfig& cfg);

}  // namespace bowlab::cobalanced
