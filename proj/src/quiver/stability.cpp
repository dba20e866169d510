#include <algorithm>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "bowlab/quiver/stability.hpp"

namespace bowlab {

using numerics::CGradedMap;
using numerics::CMatrix;
using numerics::ComplexAlgebra;
using numerics::GradedSubspace;
using numerics::Index;
using numerics::Subspace;

std::string StabilityResult::label() const {
  switch (verdict) {
    case Verdict::Satisfied: return notion == Notion::Semistable ? "semistable" : "stable";
    case Verdict::Violated: return notion == Notion::Semistable ? "unstable" : "not_stable";
    case Verdict::NotFalsified: return "not_falsified";
  }
  return "unknown";
}

std::vector<long long> integer_theta(const std::vector<Rational>& theta) {
  long long l = 1;
  for (const auto& q : theta) {
    if (q.den == 0) throw InvalidArgument("zero denominator in theta");
    l = std::lcm(l, q.den < 0 ? -q.den : q.den);
  }
  std::vector<long long> out;
  for (const auto& q : theta) out.push_back(q.num * (l / q.den));
  return out;
}

namespace {

bool same_graded(const GradedSubspace& a, const GradedSubspace& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].same_as(b[i], 1e-6)) return false;
  return true;
}

GradedSubspace graded_zero(const std::vector<Index>& dims) {
  GradedSubspace s;
  for (Index d : dims) s.push_back(Subspace::zero(d));
  return s;
}

GradedSubspace graded_full(const std::vector<Index>& dims) {
  GradedSubspace s;
  for (Index d : dims) s.push_back(Subspace::full(d));
  return s;
}

}  // namespace

std::vector<GradedSubspace> invariant_lattice(const std::vector<Index>& dims,
                                              std::span<const CGradedMap> maps,
                                              const std::vector<GradedSubspace>& seeds,
                                              const ComplexAlgebra& alg,
                                              const LatticeConfig& cfg) {
  std::vector<GradedSubspace> out;
  auto add = [&](GradedSubspace s) {
    if (out.size() >= cfg.max_candidates) return;
    for (const auto& t : out)
      if (same_graded(s, t)) return;
    out.push_back(std::move(s));
  };
  auto closure = [&](GradedSubspace s) {
    return numerics::graded_smallest_invariant_containing<ComplexAlgebra>(alg, std::move(s), maps);
  };
  auto interior = [&](GradedSubspace s) {
    return numerics::graded_largest_invariant_inside<ComplexAlgebra>(alg, std::move(s), maps);
  };

  add(graded_zero(dims));
  add(graded_full(dims));
  for (const auto& seed : seeds) {
    add(closure(seed));
    add(interior(seed));
  }

  std::size_t done = 0;
  for (int round = 0; round < cfg.depth; ++round) {
    const std::size_t n = out.size();
    if (done == n) break;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = std::max(done, i + 1); j < n; ++j) {
        GradedSubspace meet, join;
        for (std::size_t k = 0; k < dims.size(); ++k) {
          meet.push_back(alg.intersect(out[i][k], out[j][k]));
          join.push_back(alg.sum(out[i][k], out[j][k]));
        }
        add(std::move(meet));
        add(std::move(join));
      }
    }
    for (std::size_t i = done; i < n; ++i) {
      for (const auto& f : maps) {
        GradedSubspace img = graded_zero(dims);
        img[f.target] = alg.image(*f.matrix, out[i][f.source]);
        add(closure(std::move(img)));
        GradedSubspace pre = graded_full(dims);
        pre[f.source] = alg.preimage(*f.matrix, out[i][f.target]);
        add(interior(std::move(pre)));
      }
    }
    done = n;
  }
  return out;
}

std::vector<Subspace> generalized_eigenspaces(const CMatrix& m, double tol) {
  std::vector<Subspace> out;
  const Index n = m.rows();
  if (n == 0) return out;
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  auto ev = es.eigenvalues();
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  const double spread = tol * std::max(1.0, numerics::spectral_norm(m));
  for (Index i = 0; i < n; ++i) {
    if (used[static_cast<std::size_t>(i)]) continue;
    numerics::cplx centre = 0.0;
    Index count = 0;
    for (Index j = i; j < n; ++j) {
      if (!used[static_cast<std::size_t>(j)] && std::abs(ev(j) - ev(i)) <= spread) {
        used[static_cast<std::size_t>(j)] = true;
        centre += ev(j);
        ++count;
      }
    }
    centre /= static_cast<double>(count);
    CMatrix shifted = m - centre * CMatrix::Identity(n, n);
    CMatrix power = CMatrix::Identity(n, n);
    for (Index k = 0; k < count; ++k) power = power * shifted;
    out.push_back(numerics::kernel_basis(power, 1e-6, 0.0));
    out.push_back(numerics::kernel_basis(shifted, 1e-6, 0.0));
  }
  return out;
}

std::vector<GradedSubspace> all_supports(const std::vector<Index>& dims) {
  std::vector<std::size_t> ones;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] > 1) throw Exact01Unavailable("a piece has dimension above 1");
    if (dims[i] == 1) ones.push_back(i);
  }
  std::vector<GradedSubspace> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << ones.size()); ++mask) {
    GradedSubspace s = graded_zero(dims);
    for (std::size_t b = 0; b < ones.size(); ++b)
      if (mask & (std::size_t{1} << b)) s[ones[b]] = Subspace::full(1);
    out.push_back(std::move(s));
  }
  return out;
}

bool is_invariant(const GradedSubspace& s, std::span<const CGradedMap> maps, double tol) {
  for (const auto& f : maps) {
    if (s[f.source].is_zero()) continue;
    if (s[f.target].distance(*f.matrix * s[f.source].basis()) > tol) return false;
  }
  return true;
}

namespace quiver {

std::vector<CGradedMap> double_quiver_maps(const QuiverRepPoint& p) {
  std::vector<CGradedMap> maps;
  for (std::size_t e = 0; e < p.quiver.arrows.size(); ++e) {
    const auto& a = p.quiver.arrows[e];
    maps.push_back({a.tail, a.head, &p.x[e]});
    maps.push_back({a.head, a.tail, &p.y[e]});
  }
  return maps;
}

StabilityResult rep_semistable(const QuiverRepPoint& p, const std::vector<long long>& theta,
                               StabilityMode mode, const numerics::Tolerances& tol,
                               Notion notion) {
  p.validate();
  tol.validate();
  if (theta.size() != p.v.size()) throw ShapeMismatch("theta needs one entry per vertex");
  const std::size_t nv = p.v.size();
  const double scale = p.scale();
  const double thr = tol.rank_tol * scale;
  auto maps = double_quiver_maps(p);

  std::vector<GradedSubspace> candidates;
  if (mode == StabilityMode::Exact01) {
    for (auto& s : all_supports(p.v))
      if (is_invariant(s, maps, thr)) candidates.push_back(std::move(s));
  } else {
    ComplexAlgebra alg{tol.rank_tol, scale};
    std::vector<GradedSubspace> seeds;
    GradedSubspace ker_j, im_i;
    for (std::size_t i = 0; i < nv; ++i) {
      ker_j.push_back(alg.kernel(p.J[i]));
      im_i.push_back(alg.column_space(p.I[i]));
    }
    seeds.push_back(ker_j);
    seeds.push_back(im_i);
    auto local = [&](std::size_t i, const Subspace& u) {
      GradedSubspace lo = graded_zero(p.v), hi = graded_full(p.v);
      lo[i] = u;
      hi[i] = u;
      seeds.push_back(std::move(lo));
      seeds.push_back(std::move(hi));
    };
    for (std::size_t i = 0; i < nv; ++i) {
      local(i, ker_j[i]);
      local(i, im_i[i]);
    }
    for (std::size_t e = 0; e < p.quiver.arrows.size(); ++e) {
      const auto& a = p.quiver.arrows[e];
      std::vector<std::pair<std::size_t, CMatrix>> loops{{a.head, p.x[e] * p.y[e]},
                                                        {a.tail, p.y[e] * p.x[e]}};
      if (a.head == a.tail) {
        loops.emplace_back(a.head, p.x[e]);
        loops.emplace_back(a.head, p.y[e]);
      }
      for (const auto& [i, m] : loops)
        for (const auto& u : generalized_eigenspaces(m, 1e-6)) local(i, u);
    }
    candidates = invariant_lattice(p.v, maps, seeds, alg, LatticeConfig{});
  }

  StabilityResult result;
  result.notion = notion;
  result.candidates = candidates.size();
  for (const auto& s : candidates) {
    long long dim_w = 0, codim_w = 0;
    bool zero = true, full = true, in_ker = true, has_im = true;
    for (std::size_t i = 0; i < nv; ++i) {
      dim_w += theta[i] * s[i].dim();
      codim_w += theta[i] * (p.v[i] - s[i].dim());
      zero = zero && s[i].is_zero();
      full = full && s[i].is_full();
      if (!s[i].is_zero() && (p.J[i] * s[i].basis()).norm() > thr) in_ker = false;
      if (s[i].distance(p.I[i]) > thr) has_im = false;
    }
    bool bad1 = in_ker && (notion == Notion::Semistable ? dim_w > 0 : (!zero && dim_w >= 0));
    bool bad2 = has_im && (notion == Notion::Semistable ? codim_w < 0 : (!full && codim_w <= 0));
    if (bad1 || bad2) {
      result.verdict = Verdict::Violated;
      result.witness = StabilityWitness{bad1 ? 1 : 2, s, bad1 ? dim_w : codim_w};
      return result;
    }
  }
  bool vacuous = notion == Notion::Semistable &&
                 std::all_of(theta.begin(), theta.end(), [](long long t) { return t == 0; });
  if (mode == StabilityMode::Exact01 || vacuous) {
    result.verdict = Verdict::Satisfied;
    result.conclusive = true;
  } else {
    result.verdict = Verdict::NotFalsified;
    result.conclusive = false;
  }
  return result;
}

}  // namespace quiver
}  // namespace bowlab
