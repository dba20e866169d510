#pragma once

#include "bowlab/quiver/stability.hpp"
#include "bowlab/variety/point.hpp"

namespace bowlab::variety {

// Maps of the bow representation as graded maps over segments:
// A, B-, B+ per x-point, then C, D per edge.
std::vector<numerics::CGradedMap> bow_maps(const BowDiagram& d, const TotalSpacePoint& p);

// Clause checks for a graded subspace already known to be invariant.
// nu1: b(S) = 0 and A maps S- isomorphically onto S+ at every x-point.
bool nu1_admissible(const BowDiagram& d, const TotalSpacePoint& p,
                    const numerics::GradedSubspace& s, const Tolerances& tol);
// nu2: Im a inside T+ and A induces isomorphisms V-/T- -> V+/T+.
bool nu2_admissible(const BowDiagram& d, const TotalSpacePoint& p,
                    const numerics::GradedSubspace& t, const Tolerances& tol);

// theta per interval. Exact01 needs every segment dim <= 1.
StabilityResult check_semistable(const BowDiagram& d, const TotalSpacePoint& p,
                                 const std::vector<long long>& theta, StabilityMode mode,
                                 const Tolerances& tol, Notion notion = Notion::Semistable);

}  // namespace bowlab::variety
