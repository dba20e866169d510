#pragma once

#include <functional>

#include "bowlab/numerics/linalg.hpp"

namespace bowlab::numerics {

// Maps are assumed holomorphic in their complex arguments: the Jacobian
// J satisfies f(x + d) = f(x) + J d + O(|d|^2) for complex d.
using VectorMap = std::function<CVector(const CVector&)>;
using JacobianMap = std::function<CMatrix(const CVector&)>;

// Central differences along each coordinate.
CMatrix finite_diff_jacobian(const VectorMap& f, const CVector& x, double step);

// Derivative of f at x along direction t, by central differences.
CVector finite_diff_directional(const VectorMap& f, const CVector& x, const CVector& t,
                                double step);

struct GaussNewtonConfig {
  int max_iters = 400;
  double initial_damping = 1e-3;
  double damping_up = 10.0;
  double damping_down = 0.5;
  double max_damping = 1e12;   // give up once steps stop helping
  double residual_tol = 1e-10;
  int polish_steps = 3;        // extra accepted steps after reaching residual_tol
};

enum class GaussNewtonStatus { Converged, MaxItersExceeded, Stalled };

struct GaussNewtonResult {
  CVector x;
  double residual_norm = 0.0;
  int iterations = 0;
  GaussNewtonStatus status = GaussNewtonStatus::MaxItersExceeded;

  bool converged() const { return status == GaussNewtonStatus::Converged; }
};

// Levenberg-damped Gauss-Newton. Failure is reported through `status`,
// with the last residual norm kept.
GaussNewtonResult gauss_newton(const VectorMap& residual, const JacobianMap& jacobian,
                               const CVector& x0, const GaussNewtonConfig& cfg);

GaussNewtonResult gauss_newton(const VectorMap& residual, const CVector& x0,
                               const GaussNewtonConfig& cfg, double fd_step = 1e-6);

const char* to_string(GaussNewtonStatus s);

}  // namespace bowlab::numerics
