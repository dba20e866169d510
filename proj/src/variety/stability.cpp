#include "bowlab/bowmodel/parameters.hpp"
#include "bowlab/variety/stability.hpp"

namespace bowlab::variety {

using numerics::CGradedMap;
using numerics::ComplexAlgebra;
using numerics::GradedSubspace;
using numerics::Subspace;

std::vector<CGradedMap> bow_maps(const BowDiagram& d, const TotalSpacePoint& p) {
  std::vector<CGradedMap> maps;
  for (std::size_t x = 0; x < p.triangles.size(); ++x) {
    const auto& t = p.triangles[x];
    const std::size_t l = d.left_segment(x), r = d.right_segment(x);
    maps.push_back({l, r, &t.A});
    maps.push_back({l, l, &t.B1});
    maps.push_back({r, r, &t.B2});
  }
  for (std::size_t e = 0; e < p.edges.size(); ++e) {
    const std::size_t t = d.tail_segment(e), h = d.head_segment(e);
    maps.push_back({t, h, &p.edges[e].C});
    maps.push_back({h, t, &p.edges[e].D});
  }
  return maps;
}

bool nu1_admissible(const BowDiagram& d, const TotalSpacePoint& p, const GradedSubspace& s,
                    const Tolerances& tol) {
  const double scale = p.scale();
  const double thr = tol.rank_tol * scale;
  for (std::size_t x = 0; x < p.triangles.size(); ++x) {
    const auto& t = p.triangles[x];
    const Subspace& lo = s[d.left_segment(x)];
    const Subspace& hi = s[d.right_segment(x)];
    if (lo.dim() != hi.dim()) return false;
    if (lo.is_zero()) continue;
    if ((t.b * lo.basis()).norm() > thr) return false;
    if (numerics::rank(t.A * lo.basis(), tol.rank_tol, scale) < lo.dim()) return false;
  }
  return true;
}

bool nu2_admissible(const BowDiagram& d, const TotalSpacePoint& p, const GradedSubspace& s,
                    const Tolerances& tol) {
  const double scale = p.scale();
  const double thr = tol.rank_tol * scale;
  for (std::size_t x = 0; x < p.triangles.size(); ++x) {
    const auto& t = p.triangles[x];
    const Subspace& lo = s[d.left_segment(x)];
    const Subspace& hi = s[d.right_segment(x)];
    if (t.v1() - lo.dim() != t.v2() - hi.dim()) return false;
    if (hi.distance(t.a) > thr) return false;
    CMatrix both(t.v2(), t.v1() + hi.dim());
    both << t.A, hi.basis();
    if (numerics::rank(both, tol.rank_tol, scale) < t.v2()) return false;
  }
  return true;
}

namespace {

GradedSubspace graded(const std::vector<Index>& dims, bool full) {
  GradedSubspace s;
  for (Index v : dims) s.push_back(full ? Subspace::full(v) : Subspace::zero(v));
  return s;
}

std::vector<GradedSubspace> heuristic_candidates(const BowDiagram& d, const TotalSpacePoint& p,
                                                 std::span<const CGradedMap> maps,
                                                 const Tolerances& tol) {
  const auto dims = d.segment_dims();
  ComplexAlgebra alg{tol.rank_tol, p.scale()};
  std::vector<GradedSubspace> seeds;
  GradedSubspace ker_b = graded(dims, true), im_a = graded(dims, false);
  for (std::size_t x = 0; x < p.triangles.size(); ++x) {
    const auto& t = p.triangles[x];
    ker_b[d.left_segment(x)] = alg.intersect(ker_b[d.left_segment(x)], alg.kernel(t.b));
    im_a[d.right_segment(x)] = alg.sum(im_a[d.right_segment(x)], alg.column_space(t.a));
  }
  seeds.push_back(ker_b);
  seeds.push_back(im_a);
  auto local = [&](std::size_t z, const Subspace& u) {
    GradedSubspace lo = graded(dims, false), hi = graded(dims, true);
    lo[z] = u;
    hi[z] = u;
    seeds.push_back(std::move(lo));
    seeds.push_back(std::move(hi));
  };
  for (std::size_t x = 0; x < p.triangles.size(); ++x) {
    const auto& t = p.triangles[x];
    const std::size_t l = d.left_segment(x), r = d.right_segment(x);
    local(l, alg.kernel(t.b));
    local(l, alg.kernel(t.A));
    local(r, alg.column_space(t.a));
    local(r, alg.column_space(t.A));
    for (const auto& u : generalized_eigenspaces(t.B1, 1e-6)) local(l, u);
    for (const auto& u : generalized_eigenspaces(t.B2, 1e-6)) local(r, u);
  }
  for (std::size_t e = 0; e < p.edges.size(); ++e) {
    const auto& c = p.edges[e];
    for (const auto& u : generalized_eigenspaces(c.C * c.D, 1e-6)) local(d.head_segment(e), u);
    for (const auto& u : generalized_eigenspaces(c.D * c.C, 1e-6)) local(d.tail_segment(e), u);
  }
  return invariant_lattice(dims, maps, seeds, alg, LatticeConfig{});
}

}  // namespace

StabilityResult check_semistable(const BowDiagram& d, const TotalSpacePoint& p,
                                 const std::vector<long long>& theta, StabilityMode mode,
                                 const Tolerances& tol, Notion notion) {
  p.validate(d);
  tol.validate();
  if (theta.size() != d.interval_count()) throw ShapeMismatch("theta needs one entry per interval");
  const auto nu = bowmodel::embed_stability(d, theta);
  const auto dims = d.segment_dims();
  const auto maps = bow_maps(d, p);
  const double thr = tol.rank_tol * p.scale();

  std::vector<GradedSubspace> candidates;
  if (mode == StabilityMode::Exact01) {
    for (auto& s : all_supports(dims))
      if (is_invariant(s, maps, thr)) candidates.push_back(std::move(s));
  } else {
    candidates = heuristic_candidates(d, p, maps, tol);
  }

  StabilityResult result;
  result.notion = notion;
  result.candidates = candidates.size();
  for (const auto& s : candidates) {
    long long dim_w = 0, codim_w = 0;
    bool zero = true, full = true;
    for (std::size_t z = 0; z < dims.size(); ++z) {
      dim_w += nu[z] * s[z].dim();
      codim_w += nu[z] * (dims[z] - s[z].dim());
      zero = zero && s[z].is_zero();
      full = full && s[z].is_full();
    }
    const bool strict = notion == Notion::Stable;
    const bool bad1 = (strict ? (!zero && dim_w >= 0) : dim_w > 0) && nu1_admissible(d, p, s, tol);
    const bool bad2 =
        (strict ? (!full && codim_w <= 0) : codim_w < 0) && nu2_admissible(d, p, s, tol);
    if (bad1 || bad2) {
      result.verdict = Verdict::Violated;
      result.witness = StabilityWitness{bad1 ? 1 : 2, s, bad1 ? dim_w : codim_w};
      return result;
    }
  }
  const bool vacuous = notion == Notion::Semistable &&
                       std::all_of(theta.begin(), theta.end(), [](long long t) { return t == 0; });
  result.conclusive = mode == StabilityMode::Exact01 || vacuous;
  result.verdict = result.conclusive ? Verdict::Satisfied : Verdict::NotFalsified;
  return result;
}

}  // namespace bowlab::variety
