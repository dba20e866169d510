// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.

#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "bowlab/bowmodel/dsl.hpp"
#include "bowlab/bowmodel/parameters.hpp"
#include "bowlab/cobalanced/reduction.hpp"
#include "bowlab/io/json_io.hpp"
#include "bowlab/numerics/optimize.hpp"
#include "bowlab/numerics/prime_field.hpp"
#include "bowlab/numerics/random.hpp"
#include "bowlab/variety/moment.hpp"
#include "bowlab/variety/variety.hpp"
#include "support/fp_enum.hpp"
#include "support/stability_oracle.hpp"

using namespace bowlab;
using namespace bowlab::variety;
using bowmodel::parse_bow_diagram;
using numerics::Rng;
using quiver::QuiverRepPoint;
using triangle::HurtubiseForm;
using triangle::TriangleData;

namespace {

// Collects the first few failure messages of a criterion.
struct Check {
  std::vector<std::string> failures;
  std::string summary;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  bool passed() const { return failures.empty(); }
};

double rel(double err, double ref) { return err / std::max(1.0, ref); }

std::string num(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

const char* kTP1 = "bow { wavy s [1, 1, 1]; }";
const char* k252 = "bow { wavy a [2]; wavy b [5, 2]; edge a -> b; }";

// 1 -------------------------------------------------------------------------
void tp1_end_to_end(Check& c) {
  auto d = parse_bow_diagram(kTP1);
  c.expect(expected_smooth_dimension(d) == 2, "expected_smooth_dimension != 2");
  int solved = 0, agree = 0, stable = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    SolveConfig cfg;
    cfg.seed = seed;
    auto rep = cobalanced::verify_reduction(d, {0.0}, {1}, cfg);
    if (!rep.solved) continue;
    ++solved;
    worst = std::max(worst, rep.residual_norm);
    c.expect(rep.residual_norm < 1e-10, "residual " + num(rep.residual_norm));
    const auto& q = *rep.quiver_point;
    c.expect((q.I[0] * q.J[0]).norm() < 1e-9, "IJ != 0");
    c.expect(rep.exact, "verdict not from exact01");
    if (rep.verdicts_agree) ++agree;
    if (rep.quiver_verdict == "semistable") {
      ++stable;
      c.expect(q.J[0].norm() > 1e-6, "J = 0 on a stable point");
    }
  }
  c.expect(agree >= 20, "only " + std::to_string(agree) + " agreeing verdicts");
  c.expect(solved == agree, "verdicts disagree on some solved point");
  c.expect(stable > 0, "no stable point seen");
  c.summary = std::to_string(solved) + " solved, " + std::to_string(agree) + " agree, " +
              std::to_string(stable) + " stable, worst residual " + num(worst);
}

// 2 -------------------------------------------------------------------------
void two_five_two(Check& c) {
  auto d = parse_bow_diagram(k252);
  c.expect(bowmodel::local_emptiness_check(d).empty(), "local condition reported a violation");
  // the middle segment: 5 <= 2 + 2 + 1
  c.expect(d.dim(d.first_segment(1)) <= d.dim(d.last_segment(1)) + d.dim(d.first_segment(0)) + 1,
           "5 <= 5 arithmetic");
  SolveConfig cfg;
  cfg.seed = 419;
  cfg.n_starts = 100;
  auto out = solve_all_starts(d, bowmodel::embed_deformation(d, {0.0, 0.0}), cfg);
  int reached = 0;
  for (const auto& r : out.evidence.records)
    if (r.residual_norm < 1e-8 && r.s1_ok && r.s2_ok) ++reached;
  c.expect(out.evidence.records.size() == 100, "not 100 start records");
  c.expect(reached == 0, std::to_string(reached) + " starts reached a valid point");
  c.expect(out.evidence.failed == 100, "evidence.failed != 100");
  const auto j = io::to_json(out.evidence);
  c.expect(j["label"] == "evidence, not proof", "missing label");
  c.summary = "local test passes (5 <= 5); " + std::to_string(out.evidence.failed) +
              "/100 starts failed, best residual " + num(out.evidence.best_residual) +
              "; labelled \"" + j["label"].get<std::string>() + "\"";
}

// 3 -------------------------------------------------------------------------
void hurtubise_round_trips(Check& c) {
  Rng rng(313);
  double worst_rt = 0.0, worst_a = 0.0;
  for (auto [v1, v2] : std::vector<std::pair<Index, Index>>{{1, 1}, {2, 2}, {1, 3}, {3, 1}, {2, 3}, {3, 2}}) {
    for (int k = 0; k < 100; ++k) {
      auto f = HurtubiseForm::zero(v1, v2);
      f = f.unflatten(rng.vector(f.parameter_count()));
      f.u = rng.invertible(f.n());
      auto t = triangle::hurtubise_to_triangle(f);
      const double a = triangle::condition_a_residual(t);
      worst_a = std::max(worst_a, rel(a, t.scale() * t.scale()));
      c.expect(rel(a, t.scale() * t.scale()) < 1e-10, "condition (a) " + num(a));
      c.expect(triangle::check_S1(t, {}).ok, "S1 fails");
      c.expect(triangle::check_S2(t, {}).ok, "S2 fails");
      // A has full rank min(v1, v2)
      c.expect(numerics::rank(t.A, Tolerances{}) == std::min(v1, v2), "A not of full rank");
      auto back = triangle::triangle_to_hurtubise(t);
      const double e = rel((back.flatten() - f.flatten()).norm(), f.flatten().norm());
      worst_rt = std::max(worst_rt, e);
      c.expect(e < 1e-9, "round trip " + num(e));
    }
  }
  c.summary = "600 forms, worst round trip " + num(worst_rt) + ", worst (a) " + num(worst_a);
}

// 4 -------------------------------------------------------------------------
void moment_calculus(Check& c) {
  const std::vector<std::string> shapes{
      "bow { wavy a [2, 3]; wavy b [1, 2]; edge a -> b; }",
      "bow { wavy a [2, 1]; edge a -> a; }",                               // self-edge
      "bow { wavy a [1, 2]; wavy b [2, 1]; edge a -> b; edge b -> a; }",  // affine A cycle
      "bow { wavy a [2]; wavy b [3, 2]; edge a -> b; }",
      "bow { wavy s [1, 2, 3, 1]; }",
  };
  Rng rng(414);
  double worst_j = 0.0, worst_eq = 0.0;
  for (int k = 0; k < 50; ++k) {
    auto d = parse_bow_diagram(shapes[k % shapes.size()]);
    auto p = TotalSpacePoint::zero(d);
    p = p.unflatten(rng.vector(p.parameter_count()));
    std::vector<cplx> nu(d.segment_count());
    for (auto& v : nu) v = rng.complex_normal();
    CMatrix analytic = moment_jacobian(d, p);
    CMatrix fd = numerics::finite_diff_jacobian(
        [&](const CVector& x) { return level_residual(d, p.unflatten(x), nu); }, p.flatten(), 1e-6);
    const double e = (analytic - fd).norm() / analytic.norm();
    worst_j = std::max(worst_j, e);
    c.expect(e < 1e-6, "jacobian " + num(e));

    SegmentMatrices g;
    for (std::size_t z = 0; z < d.segment_count(); ++z) g.push_back(rng.invertible(d.dim(z)));
    auto mu = total_moment_map(d, p);
    auto mu_g = total_moment_map(d, gauge_action(d, g, p));
    for (std::size_t z = 0; z < mu.size(); ++z) {
      const CMatrix conj = g[z] * mu[z] * g[z].inverse();
      const double err = rel((mu_g[z] - conj).norm(), conj.norm());
      worst_eq = std::max(worst_eq, err);
      c.expect(err < 1e-10, "equivariance " + num(err));
    }
  }
  c.summary = "50 points over 5 shapes, worst jacobian " + num(worst_j) + ", worst equivariance " +
              num(worst_eq);
}

// 5 -------------------------------------------------------------------------
BowDiagram random_small_diagram(Rng& rng) {
  while (true) {
    bowmodel::Bow bow;
    std::vector<std::vector<Index>> dims;
    const int n = rng.uniform_int(1, 2);
    for (int i = 0; i < n; ++i) {
      bow.intervals.push_back("w" + std::to_string(i));
      std::vector<Index> list;
      for (int j = rng.uniform_int(1, 3); j > 0; --j) list.push_back(rng.uniform_int(1, 3));
      dims.push_back(list);
    }
    for (int e = rng.uniform_int(0, 1); e > 0; --e)
      bow.edges.push_back({static_cast<std::size_t>(rng.uniform_int(0, n - 1)),
                           static_cast<std::size_t>(rng.uniform_int(0, n - 1))});
    BowDiagram d(bow, dims);
    if (bowmodel::local_emptiness_check(d).empty()) return d;
  }
}

void translation(Check& c) {
  Rng rng(515);
  int done = 0, attempts = 0;
  double worst_in = 0.0, worst_back = 0.0;
  while (done < 20 && attempts < 200) {
    ++attempts;
    auto d = random_small_diagram(rng);
    std::vector<cplx> nu(d.segment_count());
    for (auto& v : nu) v = rng.complex_normal();
    SolveConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(attempts);
    cfg.n_starts = 4;
    auto out = solve_level_set(d, nu, cfg);
    if (!out.success()) continue;
    ++done;
    const auto& p = out.report->point;
    auto tp = translate_deformation(d, p, nu);
    auto lam = bowmodel::embed_deformation(d, bowmodel::lambda_of_nu(d, nu));
    const double in = level_residual(d, tp, lam).norm();
    std::vector<cplx> neg;
    for (auto v : nu) neg.push_back(-v);
    const double back = (translate_deformation(d, tp, neg).flatten() - p.flatten()).norm();
    worst_in = std::max(worst_in, in);
    worst_back = std::max(worst_back, back);
    c.expect(in < 1e-9, "translated residual " + num(in));
    c.expect(back < 1e-10, "return error " + num(back));
  }
  c.expect(done == 20, "only " + std::to_string(done) + " solved instances");
  c.summary = std::to_string(done) + " instances (" + std::to_string(attempts) +
              " draws), worst residual " + num(worst_in) + ", worst return " + num(worst_back);
}

// 6 -------------------------------------------------------------------------
void rank_properties(Check& c) {
  const std::vector<std::string> shapes{
      kTP1,
      "bow { wavy s [1, 1]; wavy t [1, 1]; edge s -> t; }",
      "bow { wavy s [1, 1]; edge s -> s; }",
      "bow { wavy s [1, 1, 1, 1]; }",
  };
  Tolerances tol;  // rank_tol = 1e-9
  int done = 0;
  for (const auto& text : shapes) {
    auto d = parse_bow_diagram(text);
    std::vector<long long> theta(d.interval_count(), 1);
    int here = 0;
    for (std::uint64_t seed = 1; seed <= 40 && here < 5; ++seed) {
      SolveConfig cfg;
      cfg.seed = seed;
      auto out = solve_fiber(d, std::vector<cplx>(d.interval_count(), 0.0), cfg);
      if (!out.success()) continue;
      const auto& p = out.report->point;
      auto st = check_semistable(d, p, theta, StabilityMode::Exact01, tol, Notion::Stable);
      if (st.verdict != Verdict::Satisfied) continue;
      ++here;
      const double s = p.scale();
      c.expect(numerics::rank(action_differential(d, p), tol.rank_tol, s) == gauge_group_dimension(d),
               "action differential rank deficient on " + text);
      CMatrix j = moment_jacobian(d, p);
      const Index mu1 = mu1_row_count(d);
      c.expect(numerics::rank(j.topRows(mu1), tol.rank_tol, s) == mu1, "mu1 block rank deficient");
      c.expect(numerics::rank(j, tol.rank_tol, s) == j.rows(), "full jacobian rank deficient");
    }
    c.expect(here == 5, "only " + std::to_string(here) + " stable points on " + text);
    done += here;
  }
  c.summary = std::to_string(done) + " stable points on 4 diagrams, all three ranks full";
}

// 7 -------------------------------------------------------------------------
void hamiltonian(Check& c) {
  Rng rng(717);
  double worst = 0.0;
  auto record = [&](cplx lhs, cplx rhs, const std::string& what) {
    const double e = rel(std::abs(lhs - rhs), std::abs(rhs));
    worst = std::max(worst, e);
    c.expect(e < 1e-6, what + " " + num(e));
  };
  for (auto [v1, v2] : std::vector<std::pair<Index, Index>>{{1, 1}, {2, 2}, {1, 2}}) {
    for (int k = 0; k < 50; ++k) {
      auto f = HurtubiseForm::zero(v1, v2);
      f = f.unflatten(rng.vector(f.parameter_count()));
      f.u = rng.invertible(f.n());
      auto t = triangle::hurtubise_to_triangle(f);
      auto df = HurtubiseForm::zero(v1, v2);
      df = df.unflatten(rng.vector(df.parameter_count()));
      auto dt = triangle::hurtubise_tangent(f, df);
      CMatrix x1 = rng.matrix(v1, v1), x2 = rng.matrix(v2, v2);
      // d<mu, xi> along dt by central differences
      const double h = 1e-5;
      auto pair_at = [&](double s) {
        auto [m1, m2] = triangle::triangle_moment(t.unflatten(t.flatten() + s * dt.flatten()));
        return (m1 * x1).trace() + (m2 * x2).trace();
      };
      record((pair_at(h) - pair_at(-h)) / (2 * h),
             triangle::triangle_symplectic_pairing(t, triangle::triangle_action_vector(x1, x2, t), dt),
             "triangle");
    }
  }
  for (int k = 0; k < 50; ++k) {
    const Index vt = rng.uniform_int(1, 3), vh = rng.uniform_int(1, 3);
    triangle::TwoWayData d{rng.matrix(vh, vt), rng.matrix(vt, vh)};
    triangle::TwoWayData t{rng.matrix(vh, vt), rng.matrix(vt, vh)};
    CMatrix xt = rng.matrix(vt, vt), xh = rng.matrix(vh, vh);
    const double h = 1e-5;
    auto pair_at = [&](double s) {
      auto [mt, mh] = triangle::two_way_moment({d.C + s * t.C, d.D + s * t.D});
      return (mt * xt).trace() + (mh * xh).trace();
    };
    record((pair_at(h) - pair_at(-h)) / (2 * h),
           triangle::two_way_symplectic_pairing(triangle::two_way_action_vector(xt, xh, d), t),
           "two-way");
  }
  for (int k = 0; k < 50; ++k) {
    quiver::Quiver q{{"a", "b"}, {{0, 1}, {1, 1}}};
    auto p = QuiverRepPoint::zero(q, {rng.uniform_int(1, 3), rng.uniform_int(1, 3)},
                                  {rng.uniform_int(0, 2), rng.uniform_int(0, 2)});
    p = p.unflatten(rng.vector(static_cast<Index>(p.parameter_count())));
    auto t = p.unflatten(rng.vector(static_cast<Index>(p.parameter_count())));
    std::vector<CMatrix> xi;
    for (Index v : p.v) xi.push_back(rng.matrix(v, v));
    const double h = 1e-5;
    auto pair_at = [&](double s) {
      return quiver::trace_pairing(quiver::rep_moment_map(p.unflatten(p.flatten() + s * t.flatten())), xi);
    };
    record((pair_at(h) - pair_at(-h)) / (2 * h),
           quiver::rep_symplectic_pairing(quiver::rep_action_vector(xi, p), t), "quiver");
  }
  c.summary = "150 triangle, 50 two-way, 50 quiver draws, worst relative error " + num(worst);
}

// 8 -------------------------------------------------------------------------
void oracles(Check& c) {
  Rng rng(818);
  int triangle_cases = 0;
  for (int p : {2, 3}) {
    numerics::PrimeFieldAlgebra alg(p);
    std::vector<std::vector<std::set<testsupport::FpVec>>> subspaces;
    for (int d = 0; d <= 3; ++d) subspaces.push_back(testsupport::all_subspaces(p, d));
    auto size_of = [&](Index dim) {
      std::size_t s = 1;
      for (Index i = 0; i < dim; ++i) s *= static_cast<std::size_t>(p);
      return s;
    };
    for (int k = 0; k < 200; ++k) {
      const Index v1 = rng.uniform_int(0, 3), v2 = rng.uniform_int(0, 3);
      auto rnd = [&](Index r, Index cc) {
        numerics::FpMatrix m(r, cc);
        for (auto& x : m.data) x = rng.uniform_int(0, 2) == 0 ? rng.uniform_int(0, p - 1) : 0;
        return m;
      };
      auto A = rnd(v2, v1), B1 = rnd(v1, v1), B2 = rnd(v2, v2), b = rnd(1, v1), a = rnd(v2, 1);
      std::size_t largest = 1, smallest = 0;
      for (const auto& s : subspaces[v1]) {
        bool good = true;
        for (const auto& v : s)
          good = good && testsupport::is_zero(testsupport::apply(p, A, v)) &&
                 testsupport::is_zero(testsupport::apply(p, b, v)) &&
                 s.count(testsupport::apply(p, B1, v));
        if (good) largest = std::max(largest, s.size());
      }
      for (const auto& s : subspaces[v2]) {
        bool good = s.count(testsupport::column(a, 0)) > 0;
        for (Index j = 0; j < A.cols; ++j) good = good && s.count(testsupport::column(A, j));
        for (const auto& v : s) good = good && s.count(testsupport::apply(p, B2, v));
        if (good && (smallest == 0 || s.size() < smallest)) smallest = s.size();
      }
      c.expect(size_of(alg.dim(triangle::s1_obstruction(alg, A, B1, b))) == largest, "S1 oracle");
      c.expect(size_of(alg.dim(triangle::s2_closure(alg, A, B2, a))) == smallest, "S2 oracle");
      ++triangle_cases;
    }
  }

  // Every 0/1 dimension pattern with <= 6 segments in <= 3 intervals, with no
  // edge or any single edge, plus random two-edge sets; one sparse point each.
  int diagrams = 0;
  for (int total = 1; total <= 6; ++total) {
    for (int n = 1; n <= std::min(total, 3); ++n) {
      // compositions of total into n positive parts
      std::vector<std::vector<int>> comps;
      std::function<void(std::vector<int>, int)> rec = [&](std::vector<int> cur, int left) {
        if (static_cast<int>(cur.size()) == n - 1) {
          cur.push_back(left);
          comps.push_back(cur);
          return;
        }
        for (int x = 1; x <= left - (n - 1 - static_cast<int>(cur.size())); ++x) {
          auto next = cur;
          next.push_back(x);
          rec(next, left - x);
        }
      };
      rec({}, total);
      for (const auto& comp : comps) {
        for (int mask = 0; mask < (1 << total); ++mask) {
          std::vector<std::vector<Index>> dims;
          int bit = 0;
          for (int len : comp) {
            std::vector<Index> list;
            for (int j = 0; j < len; ++j) list.push_back((mask >> bit++) & 1);
            dims.push_back(list);
          }
          std::vector<std::vector<bowmodel::Edge>> edge_sets{{}};
          for (int t = 0; t < n; ++t)
            for (int h = 0; h < n; ++h)
              edge_sets.push_back({{static_cast<std::size_t>(t), static_cast<std::size_t>(h)}});
          std::vector<bowmodel::Edge> two;
          for (int e = 0; e < 2; ++e)
            two.push_back({static_cast<std::size_t>(rng.uniform_int(0, n - 1)),
                           static_cast<std::size_t>(rng.uniform_int(0, n - 1))});
          edge_sets.push_back(two);
          for (const auto& edges : edge_sets) {
            bowmodel::Bow bow;
            for (int i = 0; i < n; ++i) bow.intervals.push_back("w" + std::to_string(i));
            bow.edges = edges;
            BowDiagram d(bow, dims);
            auto p = testsupport::sparse_point(rng, d);
            std::vector<long long> theta;
            for (int i = 0; i < n; ++i) theta.push_back(rng.uniform_int(-2, 2));
            testsupport::Oracle oracle{d, p, std::vector<long long>(d.segment_count(), 0)};
            for (int i = 0; i < n; ++i) oracle.w[d.first_segment(i)] = theta[i];
            for (Notion notion : {Notion::Semistable, Notion::Stable}) {
              auto r = check_semistable(d, p, theta, StabilityMode::Exact01, {}, notion);
              c.expect(r.conclusive && (r.verdict == Verdict::Violated) ==
                                           oracle.violated(notion == Notion::Stable),
                       "exact01 disagrees with enumeration");
            }
            ++diagrams;
          }
        }
      }
    }
  }
  c.summary = std::to_string(triangle_cases) + " F2/F3 triangle instances; " +
              std::to_string(diagrams) + " 0/1 diagrams x 2 notions";
}

// 9 -------------------------------------------------------------------------
void cobalanced_transport(Check& c) {
  Rng rng(919);
  Tolerances lenient;
  lenient.residual_tol = 1e-4;
  double worst_mu = 0.0, worst_omega = 0.0;
  for (int k = 0; k < 30; ++k) {
    quiver::Quiver q;
    bowmodel::FramedDims dims;
    const int nv = rng.uniform_int(1, 3);
    for (int i = 0; i < nv; ++i) {
      q.vertices.push_back("v" + std::to_string(i));
      dims.v.push_back(rng.uniform_int(1, 2));
      dims.w.push_back(rng.uniform_int(0, 2));
    }
    for (int e = rng.uniform_int(0, 3); e > 0; --e)
      q.arrows.push_back({static_cast<std::size_t>(rng.uniform_int(0, nv - 1)),
                          static_cast<std::size_t>(rng.uniform_int(0, nv - 1))});
    auto d = bowmodel::cobalanced_diagram(q, dims);
    auto rand_rep = [&] {
      auto r = QuiverRepPoint::zero(q, dims.v, dims.w);
      return r.unflatten(rng.vector(static_cast<Index>(r.parameter_count())));
    };
    SegmentMatrices gH, xiH;
    for (std::size_t z = 0; z < d.segment_count(); ++z) {
      const bool first = d.segment(z).index == 0;
      gH.push_back(first ? CMatrix::Identity(d.dim(z), d.dim(z)) : rng.invertible(d.dim(z)));
    }
    auto qp = rand_rep();
    auto lift = [&](const QuiverRepPoint& x) {
      return gauge_action(d, gH, cobalanced::from_quiver_point(d, x).point);
    };
    auto p = lift(qp);

    // moment transport at a generic point of mu_H = 0
    auto mu = total_moment_map(d, p);
    auto mu_q = quiver::rep_moment_map(cobalanced::to_quiver_point(d, cobalanced::gauge_fix_H(d, p)));
    for (std::size_t i = 0; i < d.interval_count(); ++i) {
      const double e = (mu[d.first_segment(i)] - mu_q[i]).norm();
      worst_mu = std::max(worst_mu, e);
      c.expect(e < 1e-9 * std::max(1.0, p.scale() * p.scale()), "moment transport " + num(e));
    }

    // tangents: lift of a quiver direction plus an H-orbit direction
    const double h = 1e-5;
    auto tangent = [&](const QuiverRepPoint& dq) {
      auto shift = [&](double s) { return lift(qp.unflatten(qp.flatten() + s * dq.flatten())).flatten(); };
      SegmentMatrices xi;
      for (std::size_t z = 0; z < d.segment_count(); ++z)
        xi.push_back(d.segment(z).index == 0 ? CMatrix::Zero(d.dim(z), d.dim(z))
                                             : rng.matrix(d.dim(z), d.dim(z)));
      return p.unflatten((shift(h) - shift(-h)) / (2 * h) + action_vector(d, xi, p).flatten());
    };
    auto phi_lin = [&](const TotalSpacePoint& t) {
      auto f = [&](double s) {
        return cobalanced::to_quiver_point(
                   d, cobalanced::gauge_fix_H(d, p.unflatten(p.flatten() + s * t.flatten()), lenient))
            .flatten();
      };
      return qp.unflatten((f(h) - f(-h)) / (2 * h));
    };
    auto t1 = tangent(rand_rep()), t2 = tangent(rand_rep());
    const cplx bow = total_symplectic_pairing(d, p, t1, t2);
    const cplx rep = quiver::rep_symplectic_pairing(phi_lin(t1), phi_lin(t2));
    const double e = rel(std::abs(bow - rep), std::abs(rep));
    worst_omega = std::max(worst_omega, e);
    c.expect(e < 1e-6, "symplectic transport " + num(e));
  }
  c.summary = "30 instances, worst moment error " + num(worst_mu) + ", worst symplectic " + num(worst_omega);
}

// 10 ------------------------------------------------------------------------
std::string run_cli(const std::string& args, int& code) {
  const std::string cmd = std::string(BOWLAB_CLI) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    code = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  code = WEXITSTATUS(pclose(pipe));
  return out;
}

void determinism(Check& c) {
  const std::string dir = std::string(BOWLAB_TMP);
  auto write = [&](const std::string& name, const std::string& text) {
    const std::string path = dir + "/" + name;
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs(text.c_str(), f);
    std::fclose(f);
    return path;
  };
  const auto tp1 = write("tp1.bow", kTP1);
  const auto j252 = write("252.bow", k252);
  int code1 = 0, code2 = 0;
  const auto solved = run_cli("solve " + tp1 + " --seed 10", code1);
  const auto point = write("tp1_point.json", solved);
  int commands = 0;
  for (const std::string& args :
       {"parse " + tp1, "dim " + tp1, "solve " + tp1 + " --seed 10", "solve " + j252 + " --seed 3 --starts 3",
        "stability " + tp1 + " " + point + " --theta 1 --mode exact01",
        "stability " + tp1 + " " + point + " --theta 1 --mode heuristic", "reduce " + tp1 + " " + point,
        "reduce " + tp1 + " --theta 1 --seed 4", "check-empty " + j252 + " --starts 3 --seed 8"}) {
    const auto a = run_cli(args, code1), b = run_cli(args, code2);
    c.expect(code1 == 0 && code2 == 0, "nonzero exit: " + args);
    c.expect(!a.empty() && a == b, "output differs between runs: " + args);
    ++commands;
  }

  Rng rng(1010);
  int dsl = 0, json = 0;
  for (int k = 0; k < 50; ++k) {
    auto d = testsupport::random_01_diagram(rng);
    const auto text = bowmodel::serialize(d);
    c.expect(bowmodel::serialize(parse_bow_diagram(text)) == text, "DSL round trip");
    c.expect(io::to_json(io::diagram_from_json(io::parse(io::to_json(d).dump()))) == io::to_json(d),
             "diagram JSON round trip");
    auto p = TotalSpacePoint::zero(d);
    p = p.unflatten(rng.vector(p.parameter_count()));
    c.expect(io::point_from_json(d, io::parse(io::to_json(p).dump())).flatten() == p.flatten(),
             "point JSON round trip");
    dsl += 1;
    json += 2;
  }
  for (auto [v1, v2] : std::vector<std::pair<Index, Index>>{{1, 1}, {2, 3}, {3, 1}}) {
    auto f = HurtubiseForm::zero(v1, v2);
    f = f.unflatten(rng.vector(f.parameter_count()));
    c.expect(io::hurtubise_from_json(io::parse(io::to_json(f).dump())).flatten() == f.flatten(),
             "Hurtubise JSON round trip");
    auto t = triangle::TriangleData::zero(v1, v2);
    t = t.unflatten(rng.vector(t.parameter_count()));
    c.expect(io::triangle_from_json(io::parse(io::to_json(t).dump())).flatten() == t.flatten(),
             "triangle JSON round trip");
    json += 2;
  }
  auto q = QuiverRepPoint::zero({{"a", "b"}, {{0, 1}, {1, 1}}}, {2, 1}, {1, 2});
  q = q.unflatten(rng.vector(static_cast<Index>(q.parameter_count())));
  c.expect(io::rep_point_from_json(io::parse(io::to_json(q).dump())).flatten() == q.flatten(),
           "quiver point JSON round trip");
  ++json;
  c.summary = std::to_string(commands) + " CLI commands byte-identical across runs; " +
              std::to_string(dsl) + " DSL and " + std::to_string(json) + " JSON round trips exact";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, void (*)(Check&)>> criteria{
      {"T*P1 end to end", tp1_end_to_end},
      {"2-5-2 emptiness evidence", two_five_two},
      {"normal form round trips", hurtubise_round_trips},
      {"moment map calculus", moment_calculus},
      {"parameter translation", translation},
      {"rank properties at stable points", rank_properties},
      {"Hamiltonian identities", hamiltonian},
      {"finite-field and 0/1 oracles", oracles},
      {"cobalanced transport", cobalanced_transport},
      {"determinism and serialization", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (c.passed() ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": "
              << criteria[i].first;
    if (!c.summary.empty()) std::cout << " (" << c.summary << ")";
    std::cout << "\n";
    for (std::size_t k = 0; k < std::min<std::size_t>(c.failures.size(), 5); ++k)
      std::cout << "    " << c.failures[k] << "\n";
    if (c.failures.size() > 5) std::cout << "    ... " << c.failures.size() - 5 << " more\n";
    std::cout.flush();
    failed += c.passed() ? 0 : 1;
  }
  return failed ? 1 : 0;
}
