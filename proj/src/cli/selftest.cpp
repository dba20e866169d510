#include <functional>
#include <ostream>

#include "bowlab/bowmodel/dsl.hpp"
#include "bowlab/bowmodel/parameters.hpp"
#include "bowlab/cli/cli.hpp"
#include "bowlab/cobalanced/reduction.hpp"
#include "bowlab/numerics/random.hpp"
#include "bowlab/variety/variety.hpp"

namespace bowlab::cli {

namespace {

using bowmodel::parse_bow_diagram;
using numerics::Index;

constexpr const char* kTP1 = "bow { wavy s [1, 1, 1]; }";
constexpr const char* k252 = "bow { wavy a [2]; wavy b [5, 2]; edge a -> b; }";

bool tp1_dimension(std::uint64_t) {
  return variety::expected_smooth_dimension(parse_bow_diagram(kTP1)) == 2;
}

bool tp1_solve(std::uint64_t seed) {
  variety::SolveConfig cfg;
  cfg.seed = seed;
  auto out = variety::solve_fiber(parse_bow_diagram(kTP1), {0.0}, cfg);
  return out.success() && out.report->residual_norm < 1e-10;
}

bool tp1_reduce(std::uint64_t seed) {
  variety::SolveConfig cfg;
  cfg.seed = seed;
  auto rep = cobalanced::verify_reduction(parse_bow_diagram(kTP1), {0.0}, {1}, cfg);
  if (!rep.solved || !rep.passed) return false;
  const auto& q = *rep.quiver_point;
  const bool stable = rep.quiver_verdict == "semistable";
  return (q.I[0] * q.J[0]).norm() < 1e-9 && (!stable || q.J[0].norm() > 1e-6);
}

bool local_252(std::uint64_t) {
  return bowmodel::local_emptiness_check(parse_bow_diagram(k252)).empty();
}

bool evidence_252(std::uint64_t seed) {
  auto d = parse_bow_diagram(k252);
  variety::SolveConfig cfg;
  cfg.seed = seed;
  cfg.n_starts = 10;
  auto out = variety::solve_all_starts(d, bowmodel::embed_deformation(d, {0.0, 0.0}), cfg);
  return !out.success() && out.evidence.failed == out.evidence.starts && out.evidence.starts == 10;
}

bool hurtubise_round_trips(std::uint64_t seed) {
  numerics::Rng rng(seed);
  for (auto [v1, v2] : {std::pair<Index, Index>{1, 1}, {2, 2}, {1, 3}, {3, 1}, {2, 3}, {3, 2}}) {
    for (int k = 0; k < 10; ++k) {
      auto f = triangle::HurtubiseForm::zero(v1, v2);
      f = f.unflatten(rng.vector(f.parameter_count()));
      f.u = rng.invertible(f.n());
      auto t = triangle::hurtubise_to_triangle(f);
      auto g = triangle::triangle_to_hurtubise(t);
      if ((g.flatten() - f.flatten()).norm() > 1e-9 * std::max(1.0, f.flatten().norm())) return false;
    }
  }
  return true;
}

bool dsl_round_trip(std::uint64_t) {
  for (const char* text : {kTP1, k252, "bow { wavy a [2, 1]; edge a -> a; }"}) {
    const auto once = bowmodel::serialize(parse_bow_diagram(text));
    if (bowmodel::serialize(parse_bow_diagram(once)) != once) return false;
  }
  return true;
}

}  // namespace

int selftest(std::uint64_t seed, std::ostream& out) {
  const std::vector<std::pair<const char*, std::function<bool(std::uint64_t)>>> checks{
      {"tp1_dimension_is_2", tp1_dimension},
      {"tp1_fiber_solves", tp1_solve},
      {"tp1_reduction_transports", tp1_reduce},
      {"two_five_two_local_condition_holds", local_252},
      {"two_five_two_solver_finds_nothing", evidence_252},
      {"normal_form_round_trips", hurtubise_round_trips},
      {"dsl_round_trips", dsl_round_trip},
  };
  int failed = 0;
  for (const auto& [name, check] : checks) {
    bool ok = false;
    try {
      ok = check(seed);
    } catch (const Error&) {
      ok = false;
    }
    out << (ok ? "PASS " : "FAIL ") << name << "\n";
    failed += ok ? 0 : 1;
  }
  out << (failed ? "selftest: " + std::to_string(failed) + " failed" : std::string("selftest: all passed"))
      << "\n";
  return failed ? kDomainError : kOk;
}

}  // namespace bowlab::cli
