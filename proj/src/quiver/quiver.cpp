#include <algorithm>
#include <set>

#include "bowlab/quiver/quiver.hpp"

namespace bowlab::quiver {

using numerics::spectral_norm;

void Quiver::validate() const {
  std::set<std::string> seen;
  for (const auto& name : vertices)
    if (!seen.insert(name).second) throw InvalidArgument("duplicate vertex '" + name + "'");
  for (const auto& a : arrows)
    if (a.tail >= vertices.size() || a.head >= vertices.size())
      throw InvalidArgument("arrow references a missing vertex");
}

QuiverRepPoint QuiverRepPoint::zero(const Quiver& q, std::vector<Index> v, std::vector<Index> w) {
  q.validate();
  if (v.size() != q.vertices.size() || w.size() != q.vertices.size())
    throw ShapeMismatch("dimension vectors must have one entry per vertex");
  QuiverRepPoint p;
  p.quiver = q;
  p.v = std::move(v);
  p.w = std::move(w);
  for (const auto& a : q.arrows) {
    p.x.push_back(CMatrix::Zero(p.v[a.head], p.v[a.tail]));
    p.y.push_back(CMatrix::Zero(p.v[a.tail], p.v[a.head]));
  }
  for (std::size_t i = 0; i < q.vertices.size(); ++i) {
    if (p.v[i] < 0 || p.w[i] < 0) throw ShapeMismatch("negative dimension");
    p.I.push_back(CMatrix::Zero(p.v[i], p.w[i]));
    p.J.push_back(CMatrix::Zero(p.w[i], p.v[i]));
  }
  return p;
}

namespace {

void expect_shape(const CMatrix& m, Index r, Index c, const char* what) {
  if (m.rows() != r || m.cols() != c)
    throw ShapeMismatch(std::string(what) + " has shape " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + ", expected " + std::to_string(r) + "x" +
                        std::to_string(c));
}

}  // namespace

void QuiverRepPoint::validate() const {
  quiver.validate();
  const std::size_t nv = quiver.vertices.size();
  if (v.size() != nv || w.size() != nv || I.size() != nv || J.size() != nv)
    throw ShapeMismatch("per-vertex data has the wrong length");
  if (x.size() != quiver.arrows.size() || y.size() != quiver.arrows.size())
    throw ShapeMismatch("per-arrow data has the wrong length");
  for (std::size_t e = 0; e < quiver.arrows.size(); ++e) {
    const auto& a = quiver.arrows[e];
    expect_shape(x[e], v[a.head], v[a.tail], "x");
    expect_shape(y[e], v[a.tail], v[a.head], "y");
  }
  for (std::size_t i = 0; i < nv; ++i) {
    expect_shape(I[i], v[i], w[i], "I");
    expect_shape(J[i], w[i], v[i], "J");
  }
}

std::size_t QuiverRepPoint::parameter_count() const {
  std::size_t n = 0;
  for (const auto* group : {&x, &y, &I, &J})
    for (const auto& m : *group) n += static_cast<std::size_t>(m.size());
  return n;
}

CVector QuiverRepPoint::flatten() const {
  CVector out(static_cast<Index>(parameter_count()));
  Index k = 0;
  for (const auto* group : {&x, &y, &I, &J})
    for (const auto& m : *group)
      for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) out(k++) = m(i, j);
  return out;
}

QuiverRepPoint QuiverRepPoint::unflatten(const CVector& data) const {
  if (data.size() != static_cast<Index>(parameter_count()))
    throw ShapeMismatch("flat vector has the wrong length");
  QuiverRepPoint out = *this;
  Index k = 0;
  for (auto* group : {&out.x, &out.y, &out.I, &out.J})
    for (auto& m : *group)
      for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) m(i, j) = data(k++);
  return out;
}

double QuiverRepPoint::scale() const {
  double s = 0.0;
  for (const auto* group : {&x, &y, &I, &J})
    for (const auto& m : *group) s = std::max(s, spectral_norm(m));
  return s;
}

std::vector<CMatrix> rep_moment_map(const QuiverRepPoint& p) {
  p.validate();
  std::vector<CMatrix> mu;
  for (std::size_t i = 0; i < p.v.size(); ++i) mu.push_back(p.I[i] * p.J[i]);
  for (std::size_t e = 0; e < p.quiver.arrows.size(); ++e) {
    const auto& a = p.quiver.arrows[e];
    mu[a.head] += p.x[e] * p.y[e];
    mu[a.tail] -= p.y[e] * p.x[e];
  }
  return mu;
}

namespace {

std::vector<CMatrix> inverses(const std::vector<CMatrix>& g, const QuiverRepPoint& p) {
  if (g.size() != p.v.size()) throw ShapeMismatch("one group element per vertex expected");
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    expect_shape(g[i], p.v[i], p.v[i], "g");
    if (numerics::rank(g[i], numerics::Tolerances{}) < p.v[i])
      throw SingularMatrix("group element at vertex " + std::to_string(i) + " is singular");
    out.push_back(g[i].inverse());
  }
  return out;
}

}  // namespace

QuiverRepPoint rep_gauge_action(const std::vector<CMatrix>& g, const QuiverRepPoint& p) {
  p.validate();
  auto gi = inverses(g, p);
  QuiverRepPoint out = p;
  for (std::size_t e = 0; e < p.quiver.arrows.size(); ++e) {
    const auto& a = p.quiver.arrows[e];
    out.x[e] = g[a.head] * p.x[e] * gi[a.tail];
    out.y[e] = g[a.tail] * p.y[e] * gi[a.head];
  }
  for (std::size_t i = 0; i < p.v.size(); ++i) {
    out.I[i] = g[i] * p.I[i];
    out.J[i] = p.J[i] * gi[i];
  }
  return out;
}

QuiverRepPoint rep_action_vector(const std::vector<CMatrix>& xi, const QuiverRepPoint& p) {
  p.validate();
  if (xi.size() != p.v.size()) throw ShapeMismatch("one Lie algebra element per vertex expected");
  for (std::size_t i = 0; i < xi.size(); ++i) expect_shape(xi[i], p.v[i], p.v[i], "xi");
  QuiverRepPoint out = p;
  for (std::size_t e = 0; e < p.quiver.arrows.size(); ++e) {
    const auto& a = p.quiver.arrows[e];
    out.x[e] = xi[a.head] * p.x[e] - p.x[e] * xi[a.tail];
    out.y[e] = xi[a.tail] * p.y[e] - p.y[e] * xi[a.head];
  }
  for (std::size_t i = 0; i < p.v.size(); ++i) {
    out.I[i] = xi[i] * p.I[i];
    out.J[i] = -p.J[i] * xi[i];
  }
  return out;
}

cplx rep_symplectic_pairing(const QuiverRepPoint& t1, const QuiverRepPoint& t2) {
  t1.validate();
  t2.validate();
  if (t1.v != t2.v || t1.w != t2.w || !(t1.quiver == t2.quiver))
    throw ShapeMismatch("tangent vectors live over different shapes");
  cplx s = 0.0;
  for (std::size_t e = 0; e < t1.x.size(); ++e)
    s += (t2.y[e] * t1.x[e]).trace() - (t1.y[e] * t2.x[e]).trace();
  for (std::size_t i = 0; i < t1.I.size(); ++i)
    s += (t2.J[i] * t1.I[i]).trace() - (t1.J[i] * t2.I[i]).trace();
  return s;
}

cplx trace_pairing(const std::vector<CMatrix>& m, const std::vector<CMatrix>& xi) {
  if (m.size() != xi.size()) throw ShapeMismatch("trace pairing: length mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].rows() != xi[i].cols() || m[i].cols() != xi[i].rows())
      throw ShapeMismatch("trace pairing: shape mismatch");
    s += (m[i] * xi[i]).trace();
  }
  return s;
}

}  // namespace bowlab::quiver
