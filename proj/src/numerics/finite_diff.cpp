#include "bowlab/numerics/optimize.hpp"

namespace bowlab::numerics {

CMatrix finite_diff_jacobian(const VectorMap& f, const CVector& x, double step) {
  if (!(step > 0.0)) throw InvalidArgument("finite difference step must be positive");
  CVector probe = x;
  CMatrix jac;
  for (Index k = 0; k < x.size(); ++k) {
    probe(k) = x(k) + step;
    CVector up = f(probe);
    probe(k) = x(k) - step;
    CVector down = f(probe);
    probe(k) = x(k);
    if (k == 0) jac.resize(up.size(), x.size());
    jac.col(k) = (up - down) / (2.0 * step);
  }
  if (x.size() == 0) jac.resize(f(x).size(), 0);
  return jac;
}

CVector finite_diff_directional(const VectorMap& f, const CVector& x, const CVector& t,
                                double step) {
  if (!(step > 0.0)) throw InvalidArgument("finite difference step must be positive");
  return (f(x + step * t) - f(x - step * t)) / (2.0 * step);
}

}  // namespace bowlab::numerics
