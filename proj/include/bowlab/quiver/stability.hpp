#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bowlab/numerics/invariant.hpp"
#include "bowlab/quiver/quiver.hpp"

namespace bowlab {

// Decision modes shared by the quiver and bow checkers.
enum class StabilityMode { Exact01, Heuristic };
enum class Notion { Semistable, Stable };
enum class Verdict { Satisfied, Violated, NotFalsified };

class Exact01Unavailable : public Error {
 public:
  using Error::Error;
};

struct StabilityWitness {
  int clause = 0;  // 1: subspace inside the kernel side, 2: subspace containing the image side
  numerics::GradedSubspace subspace;
  long long weight = 0;  // theta . dim for clause 1, theta . codim for clause 2
};

struct StabilityResult {
  Notion notion = Notion::Semistable;
  Verdict verdict = Verdict::Satisfied;
  bool conclusive = true;
  std::optional<StabilityWitness> witness;
  std::size_t candidates = 0;

  // "semistable", "unstable", "stable", "not_stable" or "not_falsified"
  std::string label() const;
};

struct Rational {
  long long num = 0;
  long long den = 1;
};

// Multiplies through by the lcm of the denominators.
std::vector<long long> integer_theta(const std::vector<Rational>& theta);

// Candidate lattice for the heuristic mode.
struct LatticeConfig {
  int depth = 3;
  std::size_t max_candidates = 400;
};

// Invariant graded subspaces built from seeds: every seed contributes the
// smallest invariant subspace containing it and the largest one inside it,
// then the set is closed under sums, intersections and map images/preimages
// for `depth` rounds.
std::vector<numerics::GradedSubspace> invariant_lattice(
    const std::vector<numerics::Index>& dims, std::span<const numerics::CGradedMap> maps,
    const std::vector<numerics::GradedSubspace>& seeds, const numerics::ComplexAlgebra& alg,
    const LatticeConfig& cfg);

// Generalized eigenspaces of a square matrix, eigenvalues clustered at `tol`.
std::vector<numerics::Subspace> generalized_eigenspaces(const numerics::CMatrix& m, double tol);

// All 0/1 graded supports over pieces of dim <= 1 (others zero).
std::vector<numerics::GradedSubspace> all_supports(const std::vector<numerics::Index>& dims);

bool is_invariant(const numerics::GradedSubspace& s, std::span<const numerics::CGradedMap> maps,
                  double tol);

namespace quiver {

// King-type criterion on Ker J / Im I. Exact01 needs every v_i <= 1.
StabilityResult rep_semistable(const QuiverRepPoint& p, const std::vector<long long>& theta,
                               StabilityMode mode, const numerics::Tolerances& tol,
                               Notion notion = Notion::Semistable);

std::vector<numerics::CGradedMap> double_quiver_maps(const QuiverRepPoint& p);

}  // namespace quiver
}  // namespace bowlab
