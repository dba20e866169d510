#include <limits>

#include "bowlab/bowmodel/parameters.hpp"
#include "bowlab/numerics/random.hpp"
#include "bowlab/variety/moment.hpp"
#include "bowlab/variety/solve.hpp"

namespace bowlab::variety {

using triangle::HurtubiseForm;

namespace {

// Chart coordinates of every triangle followed by the edge entries.
struct ChartLayout {
  std::vector<HurtubiseForm> forms;  // shapes only
  TotalSpacePoint shape;
  Index chart_entries = 0;     // triangle coordinates in z
  Index triangle_entries = 0;  // triangle entries in the ambient vector
  Index edge_entries = 0;
  Index size = 0;

  explicit ChartLayout(const BowDiagram& d) : shape(TotalSpacePoint::zero(d)) {
    for (const auto& t : shape.triangles) {
      forms.push_back(HurtubiseForm::zero(t.v1(), t.v2()));
      chart_entries += forms.back().parameter_count();
      triangle_entries += t.parameter_count();
    }
    edge_entries = shape.parameter_count() - triangle_entries;
    size = chart_entries + edge_entries;
  }

  std::vector<HurtubiseForm> split(const CVector& z) const {
    std::vector<HurtubiseForm> out;
    Index k = 0;
    for (const auto& f : forms) {
      out.push_back(f.unflatten(z.segment(k, f.parameter_count())));
      k += f.parameter_count();
    }
    return out;
  }

  TotalSpacePoint point(const CVector& z) const {
    TotalSpacePoint p = shape;
    auto fs = split(z);
    for (std::size_t x = 0; x < fs.size(); ++x) p.triangles[x] = triangle::hurtubise_to_triangle(fs[x]);
    CVector flat = p.flatten();
    flat.tail(edge_entries) = z.tail(edge_entries);
    return p.unflatten(flat);
  }

  // d(point)/dz: ambient entries x chart coordinates.
  CMatrix tangent(const CVector& z) const {
    CMatrix T = CMatrix::Zero(shape.parameter_count(), size);
    auto fs = split(z);
    Index row = 0, col = 0;
    for (std::size_t x = 0; x < fs.size(); ++x) {
      const Index n = fs[x].parameter_count();
      for (Index j = 0; j < n; ++j) {
        CVector unit = CVector::Zero(n);
        unit(j) = 1.0;
        CVector dt = triangle::hurtubise_tangent(fs[x], fs[x].unflatten(unit)).flatten();
        T.block(row, col + j, dt.size(), 1) = dt;
      }
      row += shape.triangles[x].parameter_count();
      col += n;
    }
    T.bottomRightCorner(edge_entries, edge_entries) = CMatrix::Identity(edge_entries, edge_entries);
    return T;
  }
};

CVector random_chart_start(numerics::Rng& rng, const ChartLayout& layout, double scale) {
  CVector z(layout.size);
  Index k = 0;
  for (const auto& f : layout.forms) {
    HurtubiseForm g = f.unflatten(scale * rng.vector(f.parameter_count()));
    g.u = rng.invertible(g.n());
    z.segment(k, f.parameter_count()) = g.flatten();
    k += f.parameter_count();
  }
  z.tail(layout.edge_entries) = scale * rng.vector(layout.edge_entries);
  return z;
}

SolveOutcome run(const BowDiagram& d, const std::vector<cplx>& nu, const SolveConfig& cfg,
                 bool stop_at_success) {
  if (nu.size() != d.segment_count()) throw ShapeMismatch("nu needs one value per segment");
  if (cfg.n_starts == 0) throw InvalidArgument("at least one start is required");
  cfg.tol.validate();
  const ChartLayout layout(d);
  const TotalSpacePoint& shape = layout.shape;
  const Index mu1_rows = mu1_row_count(d);
  numerics::GaussNewtonConfig gn = cfg.gn;
  gn.residual_tol = cfg.tol.residual_tol;
  Tolerances open = cfg.tol;
  open.rank_tol = std::max(cfg.open_condition_tol, cfg.tol.rank_tol);

  numerics::VectorMap residual;
  numerics::JacobianMap jacobian;
  std::function<TotalSpacePoint(const CVector&)> to_point;
  if (cfg.space == SolveSpace::Ambient) {
    residual = [&](const CVector& x) { return level_residual(d, shape.unflatten(x), nu); };
    jacobian = [&](const CVector& x) { return moment_jacobian(d, shape.unflatten(x)); };
    to_point = [&](const CVector& x) { return shape.unflatten(x); };
  } else {
    to_point = [&](const CVector& z) { return layout.point(z); };
    residual = [&](const CVector& z) {
      CVector r = level_residual(d, layout.point(z), nu);
      return CVector(r.tail(r.size() - mu1_rows));
    };
    jacobian = [&](const CVector& z) {
      CMatrix j = moment_jacobian(d, layout.point(z));
      return CMatrix(j.bottomRows(j.rows() - mu1_rows) * layout.tangent(z));
    };
  }

  SolveOutcome out;
  out.evidence.best_residual = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < cfg.n_starts; ++s) {
    StartRecord rec;
    rec.seed = numerics::derive_seed(cfg.seed, s);
    numerics::Rng rng(rec.seed);
    const CVector x0 = cfg.space == SolveSpace::Ambient
                           ? CVector(cfg.start_scale * rng.vector(shape.parameter_count()))
                           : random_chart_start(rng, layout, cfg.start_scale);
    numerics::GaussNewtonResult r;
    TotalSpacePoint p;
    bool finite = true;
    try {
      r = numerics::gauss_newton(residual, jacobian, x0, gn);
      p = to_point(r.x);
    } catch (const SingularMatrix&) {
      finite = false;  // the chart left its domain (u lost invertibility)
    }
    if (finite) {
      rec.residual_norm = level_residual(d, p, nu).norm();
      rec.iterations = r.iterations;
      rec.status = r.status;
      rec.s1_ok = rec.s2_ok = true;
      for (const auto& t : p.triangles) {
        rec.s1_ok = rec.s1_ok && triangle::check_S1(t, open).ok;
        rec.s2_ok = rec.s2_ok && triangle::check_S2(t, open).ok;
      }
    } else {
      rec.residual_norm = std::numeric_limits<double>::infinity();
      rec.status = numerics::GaussNewtonStatus::Stalled;
    }
    const bool good = finite && r.converged() && rec.residual_norm < cfg.tol.residual_tol &&
                      rec.s1_ok && rec.s2_ok;
    out.evidence.records.push_back(rec);
    ++out.evidence.starts;
    out.evidence.best_residual = std::min(out.evidence.best_residual, rec.residual_norm);
    if (!good) {
      ++out.evidence.failed;
      continue;
    }
    if (!out.report)
      out.report = FiberSolveReport{p, rec.residual_norm, r.iterations, true, rec.seed, s};
    if (stop_at_success) break;
  }
  return out;
}

}  // namespace

SolveOutcome solve_level_set(const BowDiagram& d, const std::vector<cplx>& nu,
                             const SolveConfig& cfg) {
  return run(d, nu, cfg, true);
}

SolveOutcome solve_all_starts(const BowDiagram& d, const std::vector<cplx>& nu,
                              const SolveConfig& cfg) {
  return run(d, nu, cfg, false);
}

SolveOutcome solve_fiber(const BowDiagram& d, const std::vector<cplx>& lambda,
                         const SolveConfig& cfg) {
  if (lambda.size() != d.interval_count()) throw ShapeMismatch("lambda needs one value per interval");
  return solve_level_set(d, bowmodel::embed_deformation(d, lambda), cfg);
}

}  // namespace bowlab::variety
