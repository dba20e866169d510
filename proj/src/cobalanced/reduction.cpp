#include "bowlab/cobalanced/reduction.hpp"
#include "bowlab/variety/moment.hpp"
#include "bowlab/variety/stability.hpp"

namespace bowlab::cobalanced {

using bowmodel::NotCobalanced;

double mu_H_norm(const BowDiagram& d, const TotalSpacePoint& p) {
  auto mu = variety::total_moment_map(d, p);
  double s = 0.0;
  for (std::size_t z = 0; z < mu.size(); ++z)
    if (d.segment(z).index != 0) s += mu[z].squaredNorm();
  return std::sqrt(s);
}

variety::SegmentMatrices H_gauge(const BowDiagram& d, const TotalSpacePoint& p,
                                 const Tolerances& tol) {
  if (!bowmodel::is_cobalanced(d)) throw NotCobalanced("diagram is not cobalanced");
  p.validate(d);
  variety::SegmentMatrices g(d.segment_count());
  for (std::size_t s = 0; s < d.interval_count(); ++s) {
    const Index v = d.dim(d.first_segment(s));
    g[d.first_segment(s)] = CMatrix::Identity(v, v);
    for (std::size_t i = 0; i < d.x_point_count(s); ++i) {
      const std::size_t x = d.x_point_id(s, i);
      const CMatrix& A = p.triangles[x].A;
      if (numerics::rank(A, tol.rank_tol, p.scale()) < v)
        throw SingularA("A at x-point " + std::to_string(x) + " is not invertible");
      g[d.right_segment(x)] = g[d.left_segment(x)] * A.inverse();
    }
  }
  return g;
}

HReducedPoint gauge_fix_H(const BowDiagram& d, const TotalSpacePoint& p, const Tolerances& tol) {
  auto g = H_gauge(d, p, tol);
  const double s = std::max(1.0, p.scale());
  const double mu = mu_H_norm(d, p);
  if (mu > tol.residual_tol * s * s)
    throw MuHNonzero("mu on non-first segments is " + std::to_string(mu));
  HReducedPoint r;
  r.point = variety::gauge_action(d, g, p);
  for (auto& t : r.point.triangles) {
    t.A = CMatrix::Identity(t.v1(), t.v1());  // exact, not just to roundoff
    r.I_tilde.push_back(t.a);
    r.J_tilde.push_back(t.b);
  }
  return r;
}

quiver::QuiverRepPoint to_quiver_point(const BowDiagram& d, const HReducedPoint& r) {
  const auto dims = bowmodel::framed_dims_of_cobalanced(d);
  r.point.validate(d);
  auto q = quiver::QuiverRepPoint::zero(bowmodel::underlying_quiver(d.bow()), dims.v, dims.w);
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    q.x[e] = r.point.edges[e].C;
    q.y[e] = r.point.edges[e].D;
  }
  for (std::size_t s = 0; s < d.interval_count(); ++s)
    for (std::size_t i = 0; i < d.x_point_count(s); ++i) {
      const auto& t = r.point.triangles[d.x_point_id(s, i)];
      q.I[s].col(static_cast<Index>(i)) = t.a;
      q.J[s].row(static_cast<Index>(i)) = t.b;
    }
  return q;
}

HReducedPoint from_quiver_point(const BowDiagram& d, const quiver::QuiverRepPoint& q) {
  const auto dims = bowmodel::framed_dims_of_cobalanced(d);
  q.validate();
  if (q.v != dims.v || q.w != dims.w || !(q.quiver == bowmodel::underlying_quiver(d.bow())))
    throw quiver::ShapeMismatch("quiver point does not match the diagram");
  HReducedPoint r;
  r.point = TotalSpacePoint::zero(d);
  for (std::size_t e = 0; e < d.edge_count(); ++e) r.point.edges[e] = {q.x[e], q.y[e]};
  for (std::size_t s = 0; s < d.interval_count(); ++s) {
    const Index v = dims.v[s];
    CMatrix B = CMatrix::Zero(v, v);  // B+ of the last x-point
    for (std::size_t e = 0; e < d.edge_count(); ++e)
      if (d.edge(e).tail == s) B -= q.y[e] * q.x[e];
    for (std::size_t i = d.x_point_count(s); i-- > 0;) {
      auto& t = r.point.triangles[d.x_point_id(s, i)];
      t.A = CMatrix::Identity(v, v);
      t.a = q.I[s].col(static_cast<Index>(i));
      t.b = q.J[s].row(static_cast<Index>(i));
      t.B2 = B;
      t.B1 = B + t.a * t.b;
      B = t.B1;
    }
  }
  for (const auto& t : r.point.triangles) {
    r.I_tilde.push_back(t.a);
    r.J_tilde.push_back(t.b);
  }
  return r;
}

ReductionReport verify_reduction(const BowDiagram& d, const std::vector<cplx>& lambda,
                                 const std::vector<long long>& theta,
                                 const variety::SolveConfig& cfg) {
  if (!bowmodel::is_cobalanced(d)) throw NotCobalanced("diagram is not cobalanced");
  ReductionReport rep;
  auto out = variety::solve_fiber(d, lambda, cfg);
  if (!out.success()) {
    rep.evidence = out.evidence;
    return rep;
  }
  rep.solved = true;
  const auto& p = out.report->point;
  rep.residual_norm = out.report->residual_norm;
  rep.mu_H = mu_H_norm(d, p);
  const HReducedPoint r = gauge_fix_H(d, p, cfg.tol);
  const auto q = to_quiver_point(d, r);
  const auto mu = quiver::rep_moment_map(q);
  for (std::size_t s = 0; s < mu.size(); ++s)
    rep.moment_transport_error =
        std::max(rep.moment_transport_error,
                 (mu[s] - lambda[s] * CMatrix::Identity(mu[s].rows(), mu[s].cols())).norm());

  bool small = true;
  for (Index v : d.segment_dims()) small = small && v <= 1;
  const auto mode = small ? StabilityMode::Exact01 : StabilityMode::Heuristic;
  const auto bow = variety::check_semistable(d, p, theta, mode, cfg.tol);
  const auto rep_v = quiver::rep_semistable(q, theta, mode, cfg.tol);
  rep.bow_verdict = bow.label();
  rep.quiver_verdict = rep_v.label();
  rep.exact = bow.conclusive && rep_v.conclusive;
  rep.verdicts_agree = rep.bow_verdict == rep.quiver_verdict;
  const double s = std::max(1.0, p.scale());
  rep.passed = rep.moment_transport_error < 1e-9 * s * s && rep.verdicts_agree;
  rep.quiver_point = q;
  return rep;
}

}  // namespace bowlab::cobalanced
