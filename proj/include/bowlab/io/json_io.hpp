#pragma once

#include <json.hpp>

#include "bowlab/cobalanced/reduction.hpp"
#include "bowlab/variety/structure.hpp"

namespace bowlab::io {

using Json = nlohmann::ordered_json;
using bowmodel::BowDiagram;
using numerics::CMatrix;
using numerics::cplx;
using numerics::Index;

class JsonError : public Error {
 public:
  using Error::Error;
};

// [re, im]
Json to_json(cplx z);
cplx complex_from_json(const Json& j);

// Row-major nested arrays. Reading checks the expected shape, so empty
// matrices keep their dimensions.
Json to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, Index rows, Index cols);

Json to_json(const BowDiagram& d);
BowDiagram diagram_from_json(const Json& j);

Json to_json(const quiver::QuiverRepPoint& p);
quiver::QuiverRepPoint rep_point_from_json(const Json& j);

Json to_json(const triangle::TriangleData& t);
triangle::TriangleData triangle_from_json(const Json& j);

Json to_json(const triangle::HurtubiseForm& f);
triangle::HurtubiseForm hurtubise_from_json(const Json& j);

Json to_json(const variety::TotalSpacePoint& p);
variety::TotalSpacePoint point_from_json(const BowDiagram& d, const Json& j);

Json to_json(const variety::FiberSolveReport& r);
Json to_json(const variety::InfeasibilityEvidence& e);
Json to_json(const variety::SolveOutcome& o);

Json to_json(const cobalanced::HReducedPoint& r);
cobalanced::HReducedPoint reduced_point_from_json(const BowDiagram& d, const Json& j);

Json to_json(const StabilityResult& r);
Json to_json(const cobalanced::ReductionReport& r);
Json to_json(const std::vector<bowmodel::LocalViolation>& v);
Json to_json(const std::vector<variety::LocalMapReport>& v);

// Parses text; wraps parse failures in JsonError.
Json parse(const std::string& text);

}  // namespace bowlab::io
