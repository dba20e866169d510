#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bowlab/numerics/optimize.hpp"
#include "bowlab/variety/point.hpp"

namespace bowlab::variety {

// Chart: unknowns are normal-form coordinates of each triangle plus the edge
// maps, so condition (a) holds identically and only mu2 is solved.
// Ambient: unknowns are all entries of the total space, solving (mu1, mu2).
// Either way (S1)/(S2) are re-checked on the result.
enum class SolveSpace { Chart, Ambient };

struct SolveConfig {
  std::uint64_t seed = 0;
  SolveSpace space = SolveSpace::Chart;
  std::size_t n_starts = 8;
  double start_scale = 1.0;
  Tolerances tol;
  // Open conditions are judged at this relative tolerance, looser than rank_tol,
  // so points sitting numerically on the boundary do not count as solutions.
  double open_condition_tol = 1e-6;
  numerics::GaussNewtonConfig gn;
};

struct StartRecord {
  std::uint64_t seed = 0;
  double residual_norm = 0.0;
  int iterations = 0;
  numerics::GaussNewtonStatus status = numerics::GaussNewtonStatus::MaxItersExceeded;
  bool s1_ok = false;
  bool s2_ok = false;
};

struct FiberSolveReport {
  TotalSpacePoint point;
  double residual_norm = 0.0;
  int iterations = 0;
  bool open_conditions_ok = false;
  std::uint64_t seed = 0;
  std::size_t start_index = 0;
};

// What the solver saw when no start succeeded. A failed search is not a
// certificate of emptiness.
struct InfeasibilityEvidence {
  std::size_t starts = 0;
  std::size_t failed = 0;
  double best_residual = 0.0;
  std::vector<StartRecord> records;
  static constexpr const char* kLabel = "evidence, not proof";
};

struct SolveOutcome {
  std::optional<FiberSolveReport> report;
  InfeasibilityEvidence evidence;  // every start tried so far
  bool success() const { return report.has_value(); }
};

// Gauss-Newton on (mu1, mu2 - nu) from seeded random starts; stops at the first
// start that converges with (S1)/(S2) holding. nu is one value per segment.
SolveOutcome solve_level_set(const BowDiagram& d, const std::vector<cplx>& nu,
                             const SolveConfig& cfg);

// lambda per interval, embedded on first segments.
SolveOutcome solve_fiber(const BowDiagram& d, const std::vector<cplx>& lambda,
                         const SolveConfig& cfg);

// Runs every start, even after a success.
SolveOutcome solve_all_starts(const BowDiagram& d, const std::vector<cplx>& nu,
                              const SolveConfig& cfg);

}  // namespace bowlab::variety
