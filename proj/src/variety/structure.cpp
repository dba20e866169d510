#include "bowlab/variety/structure.hpp"

namespace bowlab::variety {

TotalSpacePoint translate_deformation(const BowDiagram& d, const TotalSpacePoint& p,
                                      const std::vector<cplx>& nu) {
  p.validate(d);
  if (nu.size() != d.segment_count()) throw ShapeMismatch("nu needs one value per segment");
  TotalSpacePoint out = p;
  for (std::size_t s = 0; s < d.interval_count(); ++s) {
    const std::size_t w = d.x_point_count(s);
    cplx tail = 0.0;  // sum of nu over segments i..w
    for (std::size_t i = w; i >= 1; --i) {
      tail += nu[d.segment_id(s, i)];
      auto& t = out.triangles[d.x_point_id(s, i - 1)];
      t.B1 += tail * CMatrix::Identity(t.v1(), t.v1());
      t.B2 += tail * CMatrix::Identity(t.v2(), t.v2());
    }
  }
  return out;
}

long long ambient_dimension(const BowDiagram& d) {
  long long n = 0;
  for (std::size_t x = 0; x < d.x_point_count(); ++x) {
    const long long vm = d.dim(d.left_segment(x)), vp = d.dim(d.right_segment(x));
    n += vm * vp + vm * vm + vp * vp + vm + vp;
  }
  for (std::size_t e = 0; e < d.edge_count(); ++e)
    n += 2LL * d.dim(d.tail_segment(e)) * d.dim(d.head_segment(e));
  return n;
}

long long expected_smooth_dimension(const BowDiagram& d) {
  long long n = ambient_dimension(d);
  for (std::size_t x = 0; x < d.x_point_count(); ++x)
    n -= static_cast<long long>(d.dim(d.left_segment(x))) * d.dim(d.right_segment(x));
  for (Index v : d.segment_dims()) n -= 2LL * v * v;
  return n;
}

std::vector<LocalMapReport> check_local_maps(const BowDiagram& d, const TotalSpacePoint& p,
                                             const Tolerances& tol) {
  p.validate(d);
  const double scale = p.scale();
  std::vector<LocalMapReport> out;
  for (std::size_t s = 0; s < d.interval_count(); ++s) {
    const std::size_t w = d.x_point_count(s);
    if (w == 0) continue;

    // alpha on the first segment
    {
      const std::size_t x = d.x_point_id(s, 0);
      const auto& t = p.triangles[x];
      std::vector<const CMatrix*> blocks{&t.A, &t.b};
      for (std::size_t e = 0; e < d.edge_count(); ++e)
        if (d.edge(e).head == s) blocks.push_back(&p.edges[e].D);
      Index rows = 0;
      for (auto* b : blocks) rows += b->rows();
      CMatrix alpha(rows, t.v1());
      Index r = 0;
      for (auto* b : blocks) {
        alpha.middleRows(r, b->rows()) = *b;
        r += b->rows();
      }
      LocalMapReport rep{x, 1, t.v1(), numerics::rank(alpha, tol.rank_tol, scale), false};
      rep.ok = rep.rank == rep.v0;
      out.push_back(rep);
    }
    // beta onto the last segment
    {
      const std::size_t x = d.x_point_id(s, w - 1);
      const auto& t = p.triangles[x];
      std::vector<const CMatrix*> blocks{&t.A, &t.a};
      for (std::size_t e = 0; e < d.edge_count(); ++e)
        if (d.edge(e).tail == s) blocks.push_back(&p.edges[e].D);
      Index cols = 0;
      for (auto* b : blocks) cols += b->cols();
      CMatrix beta(t.v2(), cols);
      Index c = 0;
      for (auto* b : blocks) {
        beta.middleCols(c, b->cols()) = *b;
        c += b->cols();
      }
      LocalMapReport rep{x, 2, t.v2(), numerics::rank(beta, tol.rank_tol, scale), false};
      rep.ok = rep.rank == rep.v0;
      out.push_back(rep);
    }
  }
  return out;
}

Index stabilizer_dimension(const BowDiagram& d, const TotalSpacePoint& p, const Tolerances& tol) {
  return gauge_group_dimension(d) -
         numerics::rank(action_differential(d, p), tol.rank_tol, p.scale());
}

}  // namespace bowlab::variety
