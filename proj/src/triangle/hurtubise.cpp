#include <Eigen/LU>

#include "bowlab/triangle/triangle.hpp"

namespace bowlab::triangle {

namespace {

void expect_shape(const CMatrix& m, Index r, Index c, const char* what) {
  if (m.rows() != r || m.cols() != c)
    throw ShapeMismatch(std::string(what) + " has shape " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + ", expected " + std::to_string(r) + "x" +
                        std::to_string(c));
}

CMatrix empty() { return CMatrix(0, 0); }

// Inverse of a basis matrix built by the gauge fix; throws if it degenerates.
CMatrix basis_inverse(const CMatrix& m, const char* what) {
  if (numerics::rank(m, Tolerances{}) < m.rows())
    throw GaugeFixFailed(std::string(what) + " is singular");
  return m.inverse();
}

CMatrix block_diag(const CMatrix& g, Index n) {
  CMatrix out = CMatrix::Identity(n, n);
  out.topLeftCorner(g.rows(), g.cols()) = g;
  return out;
}

}  // namespace

HurtubiseForm HurtubiseForm::zero(Index v1, Index v2) {
  if (v1 < 0 || v2 < 0) throw ShapeMismatch("negative dimension");
  HurtubiseForm f;
  f.v1 = v1;
  f.v2 = v2;
  const Index n = f.n(), m = f.m();
  f.u = CMatrix::Identity(n, n);
  f.I = f.J = f.f = f.g = f.e = empty();
  if (v1 == v2) {
    f.h = CMatrix::Zero(n, n);
    f.I = CMatrix::Zero(n, 1);
    f.J = CMatrix::Zero(1, n);
  } else {
    f.h = CMatrix::Zero(m, m);
    f.f = CMatrix::Zero(1, m);
    f.g = CMatrix::Zero(m, 1);
    f.e = CMatrix::Zero(f.k(), 1);
  }
  return f;
}

void HurtubiseForm::validate() const {
  if (v1 < 0 || v2 < 0) throw ShapeMismatch("negative dimension");
  const Index n_ = n(), m_ = m();
  expect_shape(u, n_, n_, "u");
  if (equal_dims()) {
    expect_shape(h, n_, n_, "h");
    expect_shape(I, n_, 1, "I");
    expect_shape(J, 1, n_, "J");
  } else {
    expect_shape(h, m_, m_, "h");
    expect_shape(f, 1, m_, "f");
    expect_shape(g, m_, 1, "g");
    expect_shape(e, k(), 1, "e");
  }
}

CMatrix HurtubiseForm::eta(bool tangent) const {
  validate();
  if (equal_dims()) throw InvalidArgument("eta is defined only for unequal dimensions");
  const Index n_ = n(), m_ = m(), k_ = k();
  CMatrix out = CMatrix::Zero(n_, n_);
  out.topLeftCorner(m_, m_) = h;
  out.block(0, n_ - 1, m_, 1) = g;
  out.block(m_, 0, 1, m_) = f;
  out(m_, n_ - 1) = e0;
  if (!tangent) out.block(m_ + 1, m_, k_, k_) = CMatrix::Identity(k_, k_);
  out.block(m_ + 1, n_ - 1, k_, 1) = e;
  return out;
}

HurtubiseForm HurtubiseForm::from_eta(Index v1, Index v2, const CMatrix& u, const CMatrix& eta,
                                      bool tangent) {
  HurtubiseForm out = zero(v1, v2);
  if (out.equal_dims()) throw InvalidArgument("eta is defined only for unequal dimensions");
  const Index n_ = out.n(), m_ = out.m(), k_ = out.k();
  expect_shape(eta, n_, n_, "eta");
  out.u = u;
  out.h = eta.topLeftCorner(m_, m_);
  out.g = eta.block(0, n_ - 1, m_, 1);
  out.f = eta.block(m_, 0, 1, m_);
  out.e0 = eta(m_, n_ - 1);
  out.e = eta.block(m_ + 1, n_ - 1, k_, 1);
  CMatrix rebuilt = out.eta(tangent);
  const double tol = 1e-9 * std::max(1.0, eta.norm());
  if ((rebuilt - eta).norm() > tol)
    throw FixedBlockViolation("eta does not have the required block shape");
  return out;
}

Index HurtubiseForm::parameter_count() const {
  return u.size() + h.size() + I.size() + J.size() + f.size() + g.size() +
         (equal_dims() ? 0 : 1) + e.size();
}

CVector HurtubiseForm::flatten() const {
  validate();
  CVector out(parameter_count());
  Index k_ = 0;
  auto put = [&](const CMatrix& m) {
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) out(k_++) = m(i, j);
  };
  put(u);
  put(h);
  put(I);
  put(J);
  put(f);
  put(g);
  if (!equal_dims()) out(k_++) = e0;
  put(e);
  return out;
}

HurtubiseForm HurtubiseForm::unflatten(const CVector& data) const {
  validate();
  if (data.size() != parameter_count()) throw ShapeMismatch("flat chart point has the wrong length");
  HurtubiseForm out = *this;
  Index k_ = 0;
  auto get = [&](CMatrix& m) {
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) m(i, j) = data(k_++);
  };
  get(out.u);
  get(out.h);
  get(out.I);
  get(out.J);
  get(out.f);
  get(out.g);
  if (!equal_dims()) out.e0 = data(k_++);
  get(out.e);
  return out;
}

TriangleData hurtubise_to_triangle(const HurtubiseForm& f, const Tolerances& tol) {
  f.validate();
  tol.validate();
  const Index n = f.n(), m = f.m();
  if (numerics::rank(f.u, tol.rank_tol, 1.0) < n) throw SingularU("u is not invertible");
  const CMatrix ui = f.u.inverse();
  TriangleData t;
  if (f.equal_dims()) {
    t.A = f.u;
    t.B1 = ui * f.h * f.u;
    t.B2 = f.h - f.I * f.J;
    t.a = f.I;
    t.b = f.J * f.u;
  } else if (f.v1 > f.v2) {
    t.A = f.u.topRows(m);
    t.B1 = ui * f.eta() * f.u;
    t.B2 = f.h;
    t.a = f.g;
    t.b = f.u.bottomRows(1);
  } else {
    t.A = -ui.leftCols(m);
    t.B1 = -f.h;
    t.B2 = -ui * f.eta() * f.u;
    t.a = ui.col(m);
    t.b = -f.f;
  }
  return t;
}

TriangleData hurtubise_tangent(const HurtubiseForm& f, const HurtubiseForm& df) {
  f.validate();
  df.validate();
  if (df.v1 != f.v1 || df.v2 != f.v2) throw ShapeMismatch("chart tangent of the wrong shape");
  const Index m = f.m();
  const CMatrix ui = f.u.inverse();
  const CMatrix X = ui * df.u;  // u^-1 du
  TriangleData dt;
  if (f.equal_dims()) {
    const CMatrix B1 = ui * f.h * f.u;
    dt.A = df.u;
    dt.B1 = ui * (df.h * f.u + f.h * df.u) - X * B1;
    dt.B2 = df.h - df.I * f.J - f.I * df.J;
    dt.a = df.I;
    dt.b = df.J * f.u + f.J * df.u;
    return dt;
  }
  const CMatrix eta = f.eta(), deta = df.eta(true);
  const CMatrix N = ui * eta * f.u;
  const CMatrix dN = ui * (deta * f.u + eta * df.u) - X * N;
  if (f.v1 > f.v2) {
    dt.A = df.u.topRows(m);
    dt.B1 = dN;
    dt.B2 = df.h;
    dt.a = df.g;
    dt.b = df.u.bottomRows(1);
  } else {
    const CMatrix dui = -X * ui;
    dt.A = -dui.leftCols(m);
    dt.B1 = -df.h;
    dt.B2 = -dN;
    dt.a = dui.col(m);
    dt.b = -df.f;
  }
  return dt;
}

HurtubiseForm chart_coordinates(const TriangleData& t) {
  t.validate();
  HurtubiseForm f = HurtubiseForm::zero(t.v1(), t.v2());
  const Index n = f.n(), m = f.m(), k = f.k();
  if (f.equal_dims()) {
    const CMatrix ai = basis_inverse(t.A, "A");
    f.u = t.A;
    f.h = t.A * t.B1 * ai;
    f.I = t.a;
    f.J = t.b * ai;
    return f;
  }
  CVector c;
  if (t.v1() > t.v2()) {
    // rows A, b, bB1, ..., bB1^k; expand bB1^(k+1) in them
    CMatrix R(n, n);
    R.topRows(m) = t.A;
    CMatrix row = t.b;
    for (Index j = 0; j <= k; ++j) {
      R.row(m + j) = row;
      row = row * t.B1;
    }
    c = (row * basis_inverse(R, "row basis")).transpose();
    f.h = t.B2;
    f.g = t.a;
    f.f = c.head(m).transpose();
    f.e0 = c(m);
    f.e = c.segment(m + 1, k);
    CMatrix u(n, n);
    u.topRows(m) = t.A;
    u.row(n - 1) = t.b;
    for (Index j = k - 1; j >= 0; --j) u.row(m + j) = u.row(m + 1 + j) * t.B1 - f.e(j) * t.b;
    f.u = u;
  } else {
    const CMatrix N = -t.B2;
    CMatrix U(n, n);
    U.leftCols(m) = -t.A;
    CMatrix col = t.a;
    for (Index j = 0; j <= k; ++j) {
      U.col(m + j) = col;
      col = N * col;
    }
    f.u = basis_inverse(U, "column basis");
    c = f.u * col;
    f.h = -t.B1;
    f.f = -t.b;
    f.g = c.head(m);
    f.e0 = c(m);
    f.e = c.segment(m + 1, k);
  }
  return f;
}

HurtubiseForm triangle_to_hurtubise(const TriangleData& t, const Tolerances& tol) {
  t.validate();
  tol.validate();
  const double s = std::max(1.0, t.scale());
  if (condition_a_residual(t) > tol.residual_tol * s * s)
    throw NotATriangle("condition (a) fails: residual " + std::to_string(condition_a_residual(t)));
  if (!check_S1(t, tol).ok) throw NotATriangle("condition (S1) fails");
  if (!check_S2(t, tol).ok) throw NotATriangle("condition (S2) fails");
  return chart_coordinates(t);
}

HurtubiseForm hurtubise_gauge_action(const CMatrix& g1, const CMatrix& g2, const HurtubiseForm& f) {
  f.validate();
  expect_shape(g1, f.v1, f.v1, "g1");
  expect_shape(g2, f.v2, f.v2, "g2");
  Tolerances tol;
  if (numerics::rank(g1, tol) < f.v1) throw SingularMatrix("g1 is singular");
  if (numerics::rank(g2, tol) < f.v2) throw SingularMatrix("g2 is singular");
  HurtubiseForm out = f;
  if (f.equal_dims()) {
    const CMatrix g2i = g2.inverse();
    out.u = g2 * f.u * g1.inverse();
    out.h = g2 * f.h * g2i;
    out.I = g2 * f.I;
    out.J = f.J * g2i;
    return out;
  }
  const CMatrix& gn = f.v1 > f.v2 ? g1 : g2;
  const CMatrix& gm = f.v1 > f.v2 ? g2 : g1;
  const CMatrix gmi = gm.inverse();
  out.u = block_diag(gm, f.n()) * f.u * gn.inverse();
  out.h = gm * f.h * gmi;
  out.g = gm * f.g;
  out.f = f.f * gmi;
  return out;
}

HurtubiseForm hurtubise_action_vector(const CMatrix& xi1, const CMatrix& xi2,
                                      const HurtubiseForm& f) {
  f.validate();
  expect_shape(xi1, f.v1, f.v1, "xi1");
  expect_shape(xi2, f.v2, f.v2, "xi2");
  HurtubiseForm out = HurtubiseForm::zero(f.v1, f.v2);
  if (f.equal_dims()) {
    out.u = xi2 * f.u - f.u * xi1;
    out.h = xi2 * f.h - f.h * xi2;
    out.I = xi2 * f.I;
    out.J = -f.J * xi2;
    return out;
  }
  const CMatrix& xn = f.v1 > f.v2 ? xi1 : xi2;
  const CMatrix& xm = f.v1 > f.v2 ? xi2 : xi1;
  CMatrix D = CMatrix::Zero(f.n(), f.n());
  D.topLeftCorner(f.m(), f.m()) = xm;
  out.u = D * f.u - f.u * xn;
  out.h = xm * f.h - f.h * xm;
  out.g = xm * f.g;
  out.f = -f.f * xm;
  return out;
}

cplx hurtubise_symplectic_pairing(const HurtubiseForm& f, const HurtubiseForm& t1,
                                  const HurtubiseForm& t2) {
  f.validate();
  t1.validate();
  t2.validate();
  if (t1.v1 != f.v1 || t1.v2 != f.v2 || t2.v1 != f.v1 || t2.v2 != f.v2)
    throw ShapeMismatch("chart tangents over different dimensions");
  const CMatrix ui = f.u.inverse();
  const CMatrix X1 = t1.u * ui, X2 = t2.u * ui;
  const CMatrix bracket = X1 * X2 - X2 * X1;
  if (f.equal_dims())
    return (t1.h * X2 - t2.h * X1 + f.h * bracket).trace() + (t2.J * t1.I)(0, 0) -
           (t1.J * t2.I)(0, 0);
  return (t1.eta(true) * X2 - t2.eta(true) * X1 + f.eta() * bracket).trace();
}

HurtubiseForm triangle_tangent_to_chart(const TriangleData& t, const TriangleData& dt,
                                        double step) {
  t.validate();
  dt.validate();
  if (dt.v1() != t.v1() || dt.v2() != t.v2()) throw ShapeMismatch("tangent of the wrong shape");
  if (!(step > 0.0)) throw InvalidArgument("step must be positive");
  const CVector x = t.flatten(), d = dt.flatten();
  const CVector plus = chart_coordinates(t.unflatten(x + step * d)).flatten();
  const CVector minus = chart_coordinates(t.unflatten(x - step * d)).flatten();
  return HurtubiseForm::zero(t.v1(), t.v2()).unflatten((plus - minus) / (2.0 * step));
}

cplx triangle_symplectic_pairing(const TriangleData& t, const TriangleData& dt1,
                                 const TriangleData& dt2, double step) {
  const HurtubiseForm f = chart_coordinates(t);
  return hurtubise_symplectic_pairing(f, triangle_tangent_to_chart(t, dt1, step),
                                      triangle_tangent_to_chart(t, dt2, step));
}

}  // namespace bowlab::triangle
