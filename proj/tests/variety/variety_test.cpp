#include <gtest/gtest.h>

#include "bowlab/bowmodel/dsl.hpp"
#include "bowlab/bowmodel/parameters.hpp"
#include "bowlab/numerics/optimize.hpp"
#include "bowlab/numerics/random.hpp"
#include "bowlab/variety/variety.hpp"

using namespace bowlab;
using namespace bowlab::variety;
using bowmodel::parse_bow_diagram;
using numerics::Rng;

namespace {

BowDiagram tp1() { return parse_bow_diagram("bow { wavy s [1, 1, 1]; }"); }
BowDiagram two_five_two() { return parse_bow_diagram("bow { wavy a [2]; wavy b [5, 2]; edge a -> b; }"); }

const std::vector<std::string> kShapes{
    "bow { wavy a [2, 3]; wavy b [1, 2]; edge a -> b; }",
    "bow { wavy a [2, 1]; edge a -> a; }",                                // self-edge
    "bow { wavy a [1, 2]; wavy b [2, 1]; edge a -> b; edge b -> a; }",   // affine A cycle
    "bow { wavy a [2]; wavy b [5, 2]; edge a -> b; }",
    "bow { wavy s [1, 2, 3, 1]; }",
};

TotalSpacePoint random_point(Rng& rng, const BowDiagram& d) {
  TotalSpacePoint p = TotalSpacePoint::zero(d);
  return p.unflatten(rng.vector(p.parameter_count()));
}

SegmentMatrices random_group(Rng& rng, const BowDiagram& d) {
  SegmentMatrices g;
  for (std::size_t z = 0; z < d.segment_count(); ++z) g.push_back(rng.invertible(d.dim(z)));
  return g;
}

SegmentMatrices random_algebra(Rng& rng, const BowDiagram& d) {
  SegmentMatrices g;
  for (std::size_t z = 0; z < d.segment_count(); ++z) g.push_back(rng.matrix(d.dim(z), d.dim(z)));
  return g;
}

std::vector<cplx> zeros(std::size_t n) { return std::vector<cplx>(n, cplx{}); }

TotalSpacePoint solved_tp1(std::uint64_t seed) {
  SolveConfig cfg;
  cfg.seed = seed;
  auto out = solve_fiber(tp1(), {0.0}, cfg);
  EXPECT_TRUE(out.success());
  return out.report->point;
}

}  // namespace

TEST(MomentMap, ZeroPoint) {
  for (const auto& text : kShapes) {
    auto d = parse_bow_diagram(text);
    for (const auto& m : total_moment_map(d, TotalSpacePoint::zero(d))) EXPECT_EQ(m.norm(), 0.0);
  }
}

// The 2-5-2 layout: segments (a, b0, b1) carry (-DC, CD + B-, -B+).
TEST(MomentMap, TwoFiveTwoCases) {
  Rng rng(1);
  auto d = two_five_two();
  auto p = random_point(rng, d);
  auto mu = total_moment_map(d, p);
  const auto& t = p.triangles[0];
  const auto& e = p.edges[0];
  EXPECT_LT((mu[0] + e.D * e.C).norm(), 1e-13);
  EXPECT_LT((mu[1] - e.C * e.D - t.B1).norm(), 1e-13);
  EXPECT_LT((mu[2] + t.B2).norm(), 1e-13);
}

TEST(MomentMap, MiddleSegmentCase) {
  Rng rng(2);
  auto d = tp1();
  auto p = random_point(rng, d);
  auto mu = total_moment_map(d, p);
  EXPECT_LT((mu[0] - p.triangles[0].B1).norm(), 1e-14);  // first segment: B0-
  EXPECT_LT((mu[1] - (p.triangles[1].B1 - p.triangles[0].B2)).norm(), 1e-14);
  EXPECT_LT((mu[2] + p.triangles[1].B2).norm(), 1e-14);
}

TEST(MomentMap, EdgeOnlyInterval) {
  Rng rng(3);
  auto d = parse_bow_diagram("bow { wavy a [2]; wavy b [3]; wavy c [1]; edge a -> b; edge b -> c; }");
  auto p = random_point(rng, d);
  auto mu = total_moment_map(d, p);
  const auto& in = p.edges[0];
  const auto& out = p.edges[1];
  EXPECT_LT((mu[1] - (in.C * in.D - out.D * out.C)).norm(), 1e-13);
  EXPECT_LT((mu[0] + in.D * in.C).norm(), 1e-13);
  EXPECT_LT((mu[2] - out.C * out.D).norm(), 1e-13);
}

TEST(MomentMap, SelfEdgeOnOneSegment) {
  Rng rng(4);
  auto d = parse_bow_diagram("bow { wavy a [2]; edge a -> a; }");
  auto p = random_point(rng, d);
  const auto& e = p.edges[0];
  EXPECT_LT((total_moment_map(d, p)[0] - (e.C * e.D - e.D * e.C)).norm(), 1e-13);
}

TEST(MomentMap, Mu1MatchesConditionA) {
  Rng rng(5);
  auto d = parse_bow_diagram(kShapes[4]);
  auto p = random_point(rng, d);
  auto mu1 = mu1_residual(d, p);
  for (std::size_t x = 0; x < p.triangles.size(); ++x)
    EXPECT_NEAR(mu1[x].norm(), triangle::condition_a_residual(p.triangles[x]), 1e-12);
  p.triangles[0] = triangle::TriangleData::zero(1, 2);
  EXPECT_EQ(mu1_residual(d, p)[0].norm(), 0.0);
}

TEST(MomentJacobian, MatchesFiniteDifferences) {
  Rng rng(6);
  for (const auto& text : kShapes) {
    auto d = parse_bow_diagram(text);
    auto nu = zeros(d.segment_count());
    for (int trial = 0; trial < 10; ++trial) {
      auto p = random_point(rng, d);
      CMatrix analytic = moment_jacobian(d, p);
      CMatrix fd = numerics::finite_diff_jacobian(
          [&](const CVector& x) { return level_residual(d, p.unflatten(x), nu); }, p.flatten(), 1e-6);
      EXPECT_LT((analytic - fd).norm() / analytic.norm(), 1e-6) << text;
    }
  }
}

TEST(MomentJacobian, LinearPartAtZero) {
  auto d = tp1();
  auto p = TotalSpacePoint::zero(d);
  CMatrix j = moment_jacobian(d, p);
  // at 0 only the B entries enter mu2, each with coefficient +-1
  const Index mu1 = mu1_row_count(d);
  EXPECT_EQ(j.topRows(mu1).norm(), 0.0);
  CMatrix m2 = j.bottomRows(j.rows() - mu1);
  for (Index r = 0; r < m2.rows(); ++r) {
    double s = 0.0;
    for (Index c = 0; c < m2.cols(); ++c) s += std::abs(m2(r, c));
    EXPECT_EQ(s, r == 1 ? 2.0 : 1.0);  // the middle segment sees B0+ and B1-
  }
}

TEST(GaugeAction, IdentityAndScalars) {
  Rng rng(7);
  auto d = tp1();
  auto p = random_point(rng, d);
  SegmentMatrices id(3, CMatrix::Identity(1, 1));
  EXPECT_EQ(gauge_action(d, id, p).flatten(), p.flatten());
  SegmentMatrices c(3, CMatrix::Constant(1, 1, 2.0));
  auto q = gauge_action(d, c, p);
  for (std::size_t x = 0; x < 2; ++x) {
    EXPECT_LT((q.triangles[x].A - p.triangles[x].A).norm(), 1e-15);
    EXPECT_LT((q.triangles[x].B1 - p.triangles[x].B1).norm(), 1e-15);
    EXPECT_LT((q.triangles[x].a - 2.0 * p.triangles[x].a).norm(), 1e-15);
    EXPECT_LT((q.triangles[x].b - 0.5 * p.triangles[x].b).norm(), 1e-15);
  }
}

TEST(GaugeAction, MomentEquivariance) {
  Rng rng(8);
  for (const auto& text : kShapes) {
    auto d = parse_bow_diagram(text);
    for (int trial = 0; trial < 10; ++trial) {
      auto p = random_point(rng, d);
      auto g = random_group(rng, d);
      auto mu = total_moment_map(d, p);
      auto mg = total_moment_map(d, gauge_action(d, g, p));
      for (std::size_t z = 0; z < mu.size(); ++z)
        EXPECT_LT((mg[z] - g[z] * mu[z] * g[z].inverse()).norm(), 1e-10 * std::max(1.0, mu[z].norm()));
      auto r1 = mu1_residual(d, p);
      auto r2 = mu1_residual(d, gauge_action(d, g, p));
      for (std::size_t x = 0; x < r1.size(); ++x)
        EXPECT_LT((r2[x] - g[d.right_segment(x)] * r1[x] * g[d.left_segment(x)].inverse()).norm(),
                  1e-10 * std::max(1.0, r1[x].norm()));
    }
  }
}

TEST(ActionDifferential, Basics) {
  auto d = tp1();
  EXPECT_EQ(numerics::rank(action_differential(d, TotalSpacePoint::zero(d)), 1e-9, 1.0), 0);
  Rng rng(9);
  auto p = random_point(rng, d);
  // xi = 1 on every segment leaves A fixed
  SegmentMatrices one(3, CMatrix::Identity(1, 1));
  auto v = action_vector(d, one, p);
  for (const auto& t : v.triangles) EXPECT_EQ(t.A.norm(), 0.0);
  // matches the derivative of the group action
  auto xi = random_algebra(rng, d);
  const double s = 1e-6;
  auto moved = [&](double sign) {
    SegmentMatrices g;
    for (const auto& m : xi) g.push_back(CMatrix::Identity(m.rows(), m.cols()) + sign * s * m);
    return gauge_action(d, g, p).flatten();
  };
  CVector fd = (moved(1) - moved(-1)) / (2 * s);
  EXPECT_LT((fd - action_vector(d, xi, p).flatten()).norm(), 1e-6 * fd.norm());
}

TEST(ActionDifferential, MomentPairingHamiltonian) {
  // <d mu(t), xi> = omega(xi_M, t) for tangents t to the mu1 = 0 locus
  Rng rng(10);
  auto d = parse_bow_diagram("bow { wavy a [1, 2]; wavy b [2, 1]; edge a -> b; edge b -> a; }");
  for (int trial = 0; trial < 10; ++trial) {
    TotalSpacePoint p = TotalSpacePoint::zero(d);
    TotalSpacePoint dp = p;
    // build p and t from chart data so that mu1 = 0 along t
    std::vector<triangle::HurtubiseForm> forms, dforms;
    for (auto& t : p.triangles) {
      auto f = triangle::HurtubiseForm::zero(t.v1(), t.v2());
      f = f.unflatten(rng.vector(f.parameter_count()));
      f.u = rng.invertible(f.n());
      forms.push_back(f);
      dforms.push_back(f.unflatten(rng.vector(f.parameter_count())));
    }
    const double s = 1e-6;
    auto at = [&](double sign) {
      TotalSpacePoint q = p;
      for (std::size_t x = 0; x < q.triangles.size(); ++x)
        q.triangles[x] = triangle::hurtubise_to_triangle(
            forms[x].unflatten(forms[x].flatten() + sign * s * dforms[x].flatten()));
      return q;
    };
    p = at(0);
    for (auto& e : p.edges) e = {rng.matrix(e.C.rows(), e.C.cols()), rng.matrix(e.D.rows(), e.D.cols())};
    TotalSpacePoint plus = at(1), minus = at(-1);
    for (std::size_t e = 0; e < p.edges.size(); ++e) plus.edges[e] = minus.edges[e] = p.edges[e];
    dp = p.unflatten((plus.flatten() - minus.flatten()) / (2 * s));
    for (auto& e : dp.edges) e = {rng.matrix(e.C.rows(), e.C.cols()), rng.matrix(e.D.rows(), e.D.cols())};

    auto xi = random_algebra(rng, d);
    auto h = [&](double sign) {
      auto mu = total_moment_map(d, p.unflatten(p.flatten() + sign * s * dp.flatten()));
      cplx v = 0.0;
      for (std::size_t z = 0; z < mu.size(); ++z) v += (mu[z] * xi[z]).trace();
      return v;
    };
    const cplx lhs = (h(1) - h(-1)) / (2 * s);
    const cplx rhs = total_symplectic_pairing(d, p, action_vector(d, xi, p), dp);
    EXPECT_LT(std::abs(lhs - rhs), 1e-5 * std::max(1.0, std::abs(rhs)));
  }
}

TEST(Solve, TStarP1) {
  auto d = tp1();
  SolveConfig cfg;
  cfg.seed = 42;
  auto out = solve_fiber(d, {0.0}, cfg);
  ASSERT_TRUE(out.success());
  const auto& r = *out.report;
  EXPECT_LT(r.residual_norm, 1e-10);
  EXPECT_TRUE(r.open_conditions_ok);
  EXPECT_LT(level_residual(d, r.point, zeros(3)).norm(), 1e-10);
  // with A = 1 this is B0- = a0 b0 + a1 b1
  const auto& t0 = r.point.triangles[0];
  const auto& t1 = r.point.triangles[1];
  const cplx expected = t0.a(0, 0) * t0.b(0, 0) / t0.A(0, 0) + t1.a(0, 0) * t1.b(0, 0) / t1.A(0, 0);
  EXPECT_LT(std::abs(t0.B1(0, 0) - expected), 1e-9);
}

TEST(Solve, Deterministic) {
  SolveConfig cfg;
  cfg.seed = 7;
  auto a = solve_fiber(tp1(), {0.5}, cfg);
  auto b = solve_fiber(tp1(), {0.5}, cfg);
  ASSERT_TRUE(a.success());
  EXPECT_EQ(a.report->point.flatten(), b.report->point.flatten());
  EXPECT_EQ(a.report->seed, b.report->seed);
}

TEST(Solve, TwoFiveTwoFailsAsEvidence) {
  SolveConfig cfg;
  cfg.seed = 1;
  cfg.n_starts = 20;
  auto out = solve_fiber(two_five_two(), {0.0, 0.0}, cfg);
  EXPECT_FALSE(out.success());
  EXPECT_EQ(out.evidence.failed, 20u);
  EXPECT_EQ(out.evidence.records.size(), 20u);
  EXPECT_STREQ(InfeasibilityEvidence::kLabel, "evidence, not proof");
}

// Deformation on a zero-dimensional first segment does not matter.
TEST(Solve, ZeroSegmentIndependence) {
  for (const char* text : {"bow { wavy s [0, 1, 0]; }", "bow { wavy s [0, 2, 0]; }",
                           "bow { wavy s [0, 2, 1]; }"}) {
    auto d = parse_bow_diagram(text);
    SolveConfig cfg;
    cfg.seed = 3;
    const bool at0 = solve_fiber(d, {0.0}, cfg).success();
    const bool at1 = solve_fiber(d, {cplx(3.7, -1.0)}, cfg).success();
    EXPECT_EQ(at0, at1) << text;
  }
}

TEST(Stability, TStarP1Verdicts) {
  auto d = tp1();
  auto p = solved_tp1(11);
  auto r = check_semistable(d, p, {1}, StabilityMode::Exact01, {});
  EXPECT_EQ(r.verdict, Verdict::Satisfied);
  EXPECT_TRUE(r.conclusive);
  EXPECT_EQ(check_semistable(d, p, {0}, StabilityMode::Exact01, {}).label(), "semistable");

  // b = 0 everywhere: A-iso chain through both x-points inside Ker b
  TotalSpacePoint q = TotalSpacePoint::zero(d);
  for (auto& t : q.triangles) {
    t.A(0, 0) = 1.0;
    t.a(0, 0) = 1.0;
  }
  EXPECT_LT(level_residual(d, q, zeros(3)).norm(), 1e-15);
  auto u = check_semistable(d, q, {1}, StabilityMode::Exact01, {});
  EXPECT_EQ(u.label(), "unstable");
  ASSERT_TRUE(u.witness.has_value());
  EXPECT_EQ(u.witness->clause, 1);
  for (const auto& s : u.witness->subspace) EXPECT_TRUE(s.is_full());
  EXPECT_EQ(check_semistable(d, q, {0}, StabilityMode::Exact01, {}).label(), "semistable");
  // heuristic mode finds the same witness
  EXPECT_EQ(check_semistable(d, q, {1}, StabilityMode::Heuristic, {}).label(), "unstable");
  EXPECT_EQ(check_semistable(d, p, {1}, StabilityMode::Heuristic, {}).label(), "not_falsified");
}

TEST(Stability, Exact01Unavailable) {
  auto d = two_five_two();
  Rng rng(12);
  EXPECT_THROW(check_semistable(d, random_point(rng, d), {1, 1}, StabilityMode::Exact01, {}),
               Exact01Unavailable);
}

TEST(Structure, ExpectedDimension) {
  EXPECT_EQ(expected_smooth_dimension(tp1()), 2);
  EXPECT_EQ(ambient_dimension(tp1()), 10);
  EXPECT_EQ(expected_smooth_dimension(parse_bow_diagram("bow { wavy a [2]; wavy b [1]; }")), -10);
  EXPECT_EQ(expected_smooth_dimension(parse_bow_diagram("bow { wavy a [0, 0, 0]; }")), 0);
}

TEST(Structure, TranslateExamples) {
  Rng rng(13);
  auto d = tp1();
  auto p = random_point(rng, d);
  EXPECT_EQ(translate_deformation(d, p, zeros(3)).flatten(), p.flatten());

  auto d2 = parse_bow_diagram("bow { wavy s [1, 1]; }");
  auto q = random_point(rng, d2);
  const cplx n0(0.3, 0.1), n1(-1.2, 0.4);
  auto tq = translate_deformation(d2, q, {n0, n1});
  EXPECT_LT(std::abs(tq.triangles[0].B1(0, 0) - q.triangles[0].B1(0, 0) - n1), 1e-15);
  EXPECT_LT(std::abs(tq.triangles[0].B2(0, 0) - q.triangles[0].B2(0, 0) - n1), 1e-15);
}

TEST(Structure, TranslateSolvedPoints) {
  Rng rng(14);
  for (const char* text : {"bow { wavy s [1, 1, 1]; }", "bow { wavy s [1, 1]; wavy t [1, 1]; edge s -> t; }",
                           "bow { wavy s [1, 1]; edge s -> s; }", "bow { wavy s [2, 2, 2]; }"}) {
    auto d = parse_bow_diagram(text);
    std::vector<cplx> nu;
    for (std::size_t z = 0; z < d.segment_count(); ++z) nu.push_back(rng.complex_normal());
    SolveConfig cfg;
    cfg.seed = 5;
    auto out = solve_level_set(d, nu, cfg);
    ASSERT_TRUE(out.success()) << text;
    const auto& p = out.report->point;
    auto tp = translate_deformation(d, p, nu);
    auto lam = bowmodel::embed_deformation(d, bowmodel::lambda_of_nu(d, nu));
    EXPECT_LT(level_residual(d, tp, lam).norm(), 1e-9) << text;
    EXPECT_TRUE(open_conditions_hold(tp, {}));
    std::vector<cplx> neg;
    for (auto v : nu) neg.push_back(-v);
    EXPECT_LT((translate_deformation(d, tp, neg).flatten() - p.flatten()).norm(), 1e-10);
    // equivariance
    auto g = random_group(rng, d);
    EXPECT_LT((translate_deformation(d, gauge_action(d, g, p), nu).flatten() -
               gauge_action(d, g, tp).flatten()).norm(),
              1e-9 * std::max(1.0, tp.flatten().norm()));
  }
}

TEST(Structure, LocalMaps) {
  Rng rng(15);
  auto d = two_five_two();
  auto reps = check_local_maps(d, random_point(rng, d), {});
  ASSERT_EQ(reps.size(), 2u);
  EXPECT_EQ(reps[0].configuration, 1);
  EXPECT_EQ(reps[0].v0, 5);
  EXPECT_EQ(reps[0].rank, 5);
  EXPECT_TRUE(reps[0].ok);
  EXPECT_EQ(reps[1].configuration, 2);
  EXPECT_EQ(reps[1].v0, 2);

  auto p = solved_tp1(16);
  for (const auto& r : check_local_maps(tp1(), p, {})) EXPECT_TRUE(r.ok);
  // alpha loses injectivity when A and b vanish
  auto z = TotalSpacePoint::zero(tp1());
  EXPECT_FALSE(check_local_maps(tp1(), z, {})[0].ok);
}

TEST(Structure, StabilizerAndRanks) {
  auto d = tp1();
  auto p = solved_tp1(17);
  Tolerances tol;
  EXPECT_EQ(stabilizer_dimension(d, p, tol), 0);
  EXPECT_EQ(numerics::rank(action_differential(d, p), tol.rank_tol, p.scale()), 3);
  CMatrix j = moment_jacobian(d, p);
  const Index mu1 = mu1_row_count(d);
  EXPECT_EQ(numerics::rank(j.topRows(mu1), tol.rank_tol, p.scale()), mu1);
  EXPECT_EQ(numerics::rank(j, tol.rank_tol, p.scale()), j.rows());

  auto one = parse_bow_diagram("bow { wavy s [1]; }");
  EXPECT_EQ(stabilizer_dimension(one, TotalSpacePoint::zero(one), tol), 1);
}

TEST(Point, FlattenRoundTripAndShapes) {
  Rng rng(18);
  auto d = parse_bow_diagram(kShapes[2]);
  auto p = random_point(rng, d);
  EXPECT_EQ(p.unflatten(p.flatten()).flatten(), p.flatten());
  auto bad = p;
  bad.edges[0].C = CMatrix::Zero(3, 3);
  EXPECT_THROW(bad.validate(d), ShapeMismatch);
  bad = p;
  bad.triangles.pop_back();
  EXPECT_THROW(total_moment_map(d, bad), ShapeMismatch);
}
