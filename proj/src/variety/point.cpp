#include "bowlab/variety/point.hpp"

namespace bowlab::variety {

namespace {

void expect_shape(const CMatrix& m, Index r, Index c, const std::string& what) {
  if (m.rows() != r || m.cols() != c)
    throw ShapeMismatch(what + " has shape " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + ", expected " + std::to_string(r) + "x" +
                        std::to_string(c));
}

void check_group(const BowDiagram& d, const SegmentMatrices& g, const char* what) {
  if (g.size() != d.segment_count()) throw ShapeMismatch(std::string("one ") + what + " per segment");
  for (std::size_t z = 0; z < g.size(); ++z) expect_shape(g[z], d.dim(z), d.dim(z), what);
}

}  // namespace

TotalSpacePoint TotalSpacePoint::zero(const BowDiagram& d) {
  TotalSpacePoint p;
  for (std::size_t x = 0; x < d.x_point_count(); ++x)
    p.triangles.push_back(TriangleData::zero(d.dim(d.left_segment(x)), d.dim(d.right_segment(x))));
  for (std::size_t e = 0; e < d.edge_count(); ++e)
    p.edges.push_back(TwoWayData::zero(d.dim(d.tail_segment(e)), d.dim(d.head_segment(e))));
  return p;
}

void TotalSpacePoint::validate(const BowDiagram& d) const {
  if (triangles.size() != d.x_point_count()) throw ShapeMismatch("one triangle per x-point expected");
  if (edges.size() != d.edge_count()) throw ShapeMismatch("one (C, D) pair per edge expected");
  for (std::size_t x = 0; x < triangles.size(); ++x) {
    triangles[x].validate();
    if (triangles[x].v1() != d.dim(d.left_segment(x)) || triangles[x].v2() != d.dim(d.right_segment(x)))
      throw ShapeMismatch("triangle " + std::to_string(x) + " does not match the segment dims");
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    edges[e].validate();
    expect_shape(edges[e].C, d.dim(d.head_segment(e)), d.dim(d.tail_segment(e)),
                 "C of edge " + std::to_string(e));
  }
}

Index TotalSpacePoint::parameter_count() const {
  Index n = 0;
  for (const auto& t : triangles) n += t.parameter_count();
  for (const auto& e : edges) n += e.C.size() + e.D.size();
  return n;
}

CVector TotalSpacePoint::flatten() const {
  CVector out(parameter_count());
  Index k = 0;
  for (const auto& t : triangles) {
    CVector v = t.flatten();
    out.segment(k, v.size()) = v;
    k += v.size();
  }
  for (const auto& e : edges)
    for (const CMatrix* m : {&e.C, &e.D})
      for (Index i = 0; i < m->rows(); ++i)
        for (Index j = 0; j < m->cols(); ++j) out(k++) = (*m)(i, j);
  return out;
}

TotalSpacePoint TotalSpacePoint::unflatten(const CVector& data) const {
  if (data.size() != parameter_count()) throw ShapeMismatch("flat point has the wrong length");
  TotalSpacePoint out = *this;
  Index k = 0;
  for (auto& t : out.triangles) {
    const Index n = t.parameter_count();
    t = t.unflatten(data.segment(k, n));
    k += n;
  }
  for (auto& e : out.edges)
    for (CMatrix* m : {&e.C, &e.D})
      for (Index i = 0; i < m->rows(); ++i)
        for (Index j = 0; j < m->cols(); ++j) (*m)(i, j) = data(k++);
  return out;
}

double TotalSpacePoint::scale() const {
  double s = 0.0;
  for (const auto& t : triangles) s = std::max(s, t.scale());
  for (const auto& e : edges)
    s = std::max({s, numerics::spectral_norm(e.C), numerics::spectral_norm(e.D)});
  return s;
}

TotalSpacePoint gauge_action(const BowDiagram& d, const SegmentMatrices& g,
                             const TotalSpacePoint& p) {
  p.validate(d);
  check_group(d, g, "group element");
  SegmentMatrices gi;
  for (std::size_t z = 0; z < g.size(); ++z) {
    if (numerics::rank(g[z], Tolerances{}) < d.dim(z))
      throw SingularMatrix("group element at segment " + std::to_string(z) + " is singular");
    gi.push_back(g[z].inverse());
  }
  TotalSpacePoint out = p;
  for (std::size_t x = 0; x < p.triangles.size(); ++x)
    out.triangles[x] =
        triangle::triangle_gauge_action(g[d.left_segment(x)], g[d.right_segment(x)], p.triangles[x]);
  for (std::size_t e = 0; e < p.edges.size(); ++e) {
    const std::size_t t = d.tail_segment(e), h = d.head_segment(e);
    out.edges[e].C = g[h] * p.edges[e].C * gi[t];
    out.edges[e].D = g[t] * p.edges[e].D * gi[h];
  }
  return out;
}

TotalSpacePoint action_vector(const BowDiagram& d, const SegmentMatrices& xi,
                              const TotalSpacePoint& p) {
  p.validate(d);
  check_group(d, xi, "Lie algebra element");
  TotalSpacePoint out = p;
  for (std::size_t x = 0; x < p.triangles.size(); ++x)
    out.triangles[x] = triangle::triangle_action_vector(xi[d.left_segment(x)],
                                                        xi[d.right_segment(x)], p.triangles[x]);
  for (std::size_t e = 0; e < p.edges.size(); ++e)
    out.edges[e] = triangle::two_way_action_vector(xi[d.tail_segment(e)], xi[d.head_segment(e)],
                                                   p.edges[e]);
  return out;
}

Index gauge_group_dimension(const BowDiagram& d) {
  Index n = 0;
  for (Index v : d.segment_dims()) n += v * v;
  return n;
}

CMatrix action_differential(const BowDiagram& d, const TotalSpacePoint& p) {
  p.validate(d);
  CMatrix out(p.parameter_count(), gauge_group_dimension(d));
  SegmentMatrices xi;
  for (std::size_t z = 0; z < d.segment_count(); ++z) xi.push_back(CMatrix::Zero(d.dim(z), d.dim(z)));
  Index col = 0;
  for (std::size_t z = 0; z < d.segment_count(); ++z)
    for (Index k = 0; k < d.dim(z); ++k)
      for (Index l = 0; l < d.dim(z); ++l) {
        xi[z](k, l) = 1.0;
        out.col(col++) = action_vector(d, xi, p).flatten();
        xi[z](k, l) = 0.0;
      }
  return out;
}

cplx total_symplectic_pairing(const BowDiagram& d, const TotalSpacePoint& p,
                              const TotalSpacePoint& t1, const TotalSpacePoint& t2, double step) {
  p.validate(d);
  t1.validate(d);
  t2.validate(d);
  cplx s = 0.0;
  for (std::size_t x = 0; x < p.triangles.size(); ++x)
    s += triangle::triangle_symplectic_pairing(p.triangles[x], t1.triangles[x], t2.triangles[x],
                                               step);
  for (std::size_t e = 0; e < p.edges.size(); ++e)
    s += triangle::two_way_symplectic_pairing(t1.edges[e], t2.edges[e]);
  return s;
}

bool open_conditions_hold(const TotalSpacePoint& p, const Tolerances& tol) {
  for (const auto& t : p.triangles)
    if (!triangle::check_S1(t, tol).ok || !triangle::check_S2(t, tol).ok) return false;
  return true;
}

}  // namespace bowlab::variety
