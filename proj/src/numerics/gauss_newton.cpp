#include <algorithm>
#include <cmath>

#include "bowlab/numerics/optimize.hpp"

namespace bowlab::numerics {

namespace {

// Solves the damped normal equations through whichever Gram matrix is smaller.
CVector damped_step(const CMatrix& jac, const CVector& r, double mu) {
  if (jac.rows() <= jac.cols()) {
    CMatrix gram = jac * jac.adjoint();
    gram.diagonal().array() += mu;
    CVector z = gram.ldlt().solve(r);
    return -(jac.adjoint() * z);
  }
  CMatrix gram = jac.adjoint() * jac;
  gram.diagonal().array() += mu;
  return -gram.ldlt().solve(jac.adjoint() * r);
}

}  // namespace

GaussNewtonResult gauss_newton(const VectorMap& residual, const JacobianMap& jacobian,
                               const CVector& x0, const GaussNewtonConfig& cfg) {
  GaussNewtonResult out;
  out.x = x0;
  CVector r = residual(out.x);
  out.residual_norm = r.norm();
  if (!std::isfinite(out.residual_norm)) {
    out.status = GaussNewtonStatus::Stalled;
    return out;
  }
  if (r.size() == 0) {
    out.status = GaussNewtonStatus::Converged;
    return out;
  }
  double mu = cfg.initial_damping;
  int polish_left = -1;
  CMatrix jac = jacobian(out.x);
  while (true) {
    if (out.residual_norm < cfg.residual_tol) {
      if (polish_left < 0) polish_left = cfg.polish_steps;
      if (polish_left == 0) break;
    }
    if (out.iterations >= cfg.max_iters) break;
    ++out.iterations;
    CVector step = damped_step(jac, r, mu);
    CVector trial = out.x + step;
    CVector r_trial = residual(trial);
    double n_trial = r_trial.norm();
    if (std::isfinite(n_trial) && n_trial < out.residual_norm) {
      out.x = std::move(trial);
      r = std::move(r_trial);
      out.residual_norm = n_trial;
      mu = std::max(mu * cfg.damping_down, 1e-16);
      if (polish_left > 0) --polish_left;
      jac = jacobian(out.x);
    } else {
      if (polish_left >= 0) break;  // already below tolerance; polishing is optional
      mu *= cfg.damping_up;
      if (mu > cfg.max_damping) {
        out.status = GaussNewtonStatus::Stalled;
        return out;
      }
    }
  }
  out.status = out.residual_norm < cfg.residual_tol ? GaussNewtonStatus::Converged
                                                     : GaussNewtonStatus::MaxItersExceeded;
  return out;
}

GaussNewtonResult gauss_newton(const VectorMap& residual, const CVector& x0,
                               const GaussNewtonConfig& cfg, double fd_step) {
  return gauss_newton(
      residual, [&](const CVector& x) { return finite_diff_jacobian(residual, x, fd_step); }, x0,
      cfg);
}

const char* to_string(GaussNewtonStatus s) {
  switch (s) {
    case GaussNewtonStatus::Converged: return "converged";
    case GaussNewtonStatus::MaxItersExceeded: return "max_iters_exceeded";
    case GaussNewtonStatus::Stalled: return "stalled";
  }
  return "unknown";
}

}  // namespace bowlab::numerics
