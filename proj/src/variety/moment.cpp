#include "bowlab/variety/moment.hpp"

namespace bowlab::variety {

SegmentMatrices total_moment_map(const BowDiagram& d, const TotalSpacePoint& p) {
  p.validate(d);
  SegmentMatrices mu;
  for (std::size_t z = 0; z < d.segment_count(); ++z) mu.push_back(CMatrix::Zero(d.dim(z), d.dim(z)));
  for (std::size_t x = 0; x < p.triangles.size(); ++x) {
    mu[d.left_segment(x)] += p.triangles[x].B1;
    mu[d.right_segment(x)] -= p.triangles[x].B2;
  }
  for (std::size_t e = 0; e < p.edges.size(); ++e) {
    const auto& c = p.edges[e];
    mu[d.head_segment(e)] += c.C * c.D;
    mu[d.tail_segment(e)] -= c.D * c.C;
  }
  return mu;
}

std::vector<CMatrix> mu1_residual(const BowDiagram& d, const TotalSpacePoint& p) {
  p.validate(d);
  std::vector<CMatrix> out;
  for (const auto& t : p.triangles) out.push_back(t.B2 * t.A - t.A * t.B1 + t.a * t.b);
  return out;
}

Index mu1_row_count(const BowDiagram& d) {
  Index n = 0;
  for (std::size_t x = 0; x < d.x_point_count(); ++x)
    n += d.dim(d.left_segment(x)) * d.dim(d.right_segment(x));
  return n;
}

CVector level_residual(const BowDiagram& d, const TotalSpacePoint& p, const std::vector<cplx>& nu) {
  if (nu.size() != d.segment_count()) throw ShapeMismatch("nu needs one value per segment");
  auto mu1 = mu1_residual(d, p);
  auto mu2 = total_moment_map(d, p);
  Index n = 0;
  for (const auto& m : mu1) n += m.size();
  for (const auto& m : mu2) n += m.size();
  CVector out(n);
  Index k = 0;
  auto put = [&](const CMatrix& m) {
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) out(k++) = m(i, j);
  };
  for (const auto& m : mu1) put(m);
  for (std::size_t z = 0; z < mu2.size(); ++z)
    put(mu2[z] - nu[z] * CMatrix::Identity(mu2[z].rows(), mu2[z].cols()));
  return out;
}

namespace {

// Adds the derivative of X -> sign * L X R, where X is the r x c block
// starting at column `col` and the output block starts at row `row`.
void add_sandwich(CMatrix& jac, Index row, Index col, const CMatrix& L, const CMatrix& R,
                  cplx sign = 1.0) {
  const Index oc = R.cols(), ic = R.rows();
  for (Index i = 0; i < L.rows(); ++i)
    for (Index j = 0; j < oc; ++j)
      for (Index k = 0; k < L.cols(); ++k) {
        const cplx lik = sign * L(i, k);
        if (lik == cplx(0.0)) continue;
        for (Index l = 0; l < ic; ++l) jac(row + i * oc + j, col + k * ic + l) += lik * R(l, j);
      }
}

CMatrix id(Index n) { return CMatrix::Identity(n, n); }

}  // namespace

CMatrix moment_jacobian(const BowDiagram& d, const TotalSpacePoint& p) {
  p.validate(d);
  std::vector<Index> seg_row;
  Index rows = mu1_row_count(d);
  for (std::size_t z = 0; z < d.segment_count(); ++z) {
    seg_row.push_back(rows);
    rows += d.dim(z) * d.dim(z);
  }
  CMatrix jac = CMatrix::Zero(rows, p.parameter_count());

  Index col = 0, row = 0;
  for (std::size_t x = 0; x < p.triangles.size(); ++x) {
    const auto& t = p.triangles[x];
    const Index vm = t.v1(), vp = t.v2();
    const Index cA = col, cB1 = cA + t.A.size(), cB2 = cB1 + t.B1.size(), cb = cB2 + t.B2.size(),
                ca = cb + t.b.size();
    // mu1 = B2 A - A B1 + a b
    add_sandwich(jac, row, cA, t.B2, id(vm));
    add_sandwich(jac, row, cA, id(vp), t.B1, -1.0);
    add_sandwich(jac, row, cB1, t.A, id(vm), -1.0);
    add_sandwich(jac, row, cB2, id(vp), t.A);
    add_sandwich(jac, row, cb, t.a, id(vm));
    add_sandwich(jac, row, ca, id(vp), t.b);
    // mu2: +B1 on the left segment, -B2 on the right one
    add_sandwich(jac, seg_row[d.left_segment(x)], cB1, id(vm), id(vm));
    add_sandwich(jac, seg_row[d.right_segment(x)], cB2, id(vp), id(vp), -1.0);
    row += vp * vm;
    col += t.parameter_count();
  }
  for (std::size_t e = 0; e < p.edges.size(); ++e) {
    const auto& c = p.edges[e];
    const Index vt = c.C.cols(), vh = c.C.rows();
    const Index cC = col, cD = col + c.C.size();
    const Index rh = seg_row[d.head_segment(e)], rt = seg_row[d.tail_segment(e)];
    add_sandwich(jac, rh, cC, id(vh), c.D);
    add_sandwich(jac, rh, cD, c.C, id(vh));
    add_sandwich(jac, rt, cD, id(vt), c.C, -1.0);
    add_sandwich(jac, rt, cC, c.D, id(vt), -1.0);
    col += c.C.size() + c.D.size();
  }
  return jac;
}

}  // namespace bowlab::variety
