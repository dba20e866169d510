#pragma once

#include <optional>
#include <vector>

#include "bowlab/bowmodel/diagram.hpp"

namespace bowlab::bowmodel {

using numerics::cplx;

// Value on the first segment of each interval, zero elsewhere.
std::vector<cplx> embed_deformation(const BowDiagram& d, const std::vector<cplx>& lambda);
std::vector<long long> embed_stability(const BowDiagram& d, const std::vector<long long>& theta);

// Per-interval sums over segments.
std::vector<cplx> lambda_of_nu(const BowDiagram& d, const std::vector<cplx>& nu);
std::vector<long long> theta_of_nu(const BowDiagram& d, const std::vector<long long>& nu);

// Deformation and stability data, each given at exactly one granularity.
class ParameterSet {
 public:
  void set_lambda(std::vector<cplx> by_interval);
  void set_nu(std::vector<cplx> by_segment);
  void set_theta(std::vector<long long> by_interval);
  void set_nu_theta(std::vector<long long> by_segment);

  bool has_deformation() const { return lambda_ || nu_; }
  bool has_stability() const { return theta_ || nu_theta_; }

  // Interval-granular values; segment data is summed per interval.
  std::vector<cplx> lambda(const BowDiagram& d) const;
  std::vector<long long> theta(const BowDiagram& d) const;
  // Segment-granular deformation: nu as given, or the embedded lambda.
  std::vector<cplx> nu(const BowDiagram& d) const;

 private:
  std::optional<std::vector<cplx>> lambda_, nu_;
  std::optional<std::vector<long long>> theta_, nu_theta_;
};

}  // namespace bowlab::bowmodel
