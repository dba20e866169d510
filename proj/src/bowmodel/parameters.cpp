#include "bowlab/bowmodel/parameters.hpp"

namespace bowlab::bowmodel {

namespace {

template <class T>
std::vector<T> embed(const BowDiagram& d, const std::vector<T>& by_interval) {
  if (by_interval.size() != d.interval_count())
    throw InvalidArgument("one parameter per interval expected");
  std::vector<T> out(d.segment_count(), T{});
  for (std::size_t s = 0; s < d.interval_count(); ++s) out[d.first_segment(s)] = by_interval[s];
  return out;
}

template <class T>
std::vector<T> per_interval_sum(const BowDiagram& d, const std::vector<T>& by_segment) {
  if (by_segment.size() != d.segment_count())
    throw InvalidArgument("one parameter per segment expected");
  std::vector<T> out(d.interval_count(), T{});
  for (std::size_t z = 0; z < d.segment_count(); ++z) out[d.segment(z).interval] += by_segment[z];
  return out;
}

}  // namespace

std::vector<cplx> embed_deformation(const BowDiagram& d, const std::vector<cplx>& lambda) {
  return embed(d, lambda);
}

std::vector<long long> embed_stability(const BowDiagram& d, const std::vector<long long>& theta) {
  return embed(d, theta);
}

std::vector<cplx> lambda_of_nu(const BowDiagram& d, const std::vector<cplx>& nu) {
  return per_interval_sum(d, nu);
}

std::vector<long long> theta_of_nu(const BowDiagram& d, const std::vector<long long>& nu) {
  return per_interval_sum(d, nu);
}

void ParameterSet::set_lambda(std::vector<cplx> by_interval) {
  lambda_ = std::move(by_interval);
  nu_.reset();
}

void ParameterSet::set_nu(std::vector<cplx> by_segment) {
  nu_ = std::move(by_segment);
  lambda_.reset();
}

void ParameterSet::set_theta(std::vector<long long> by_interval) {
  theta_ = std::move(by_interval);
  nu_theta_.reset();
}

void ParameterSet::set_nu_theta(std::vector<long long> by_segment) {
  nu_theta_ = std::move(by_segment);
  theta_.reset();
}

std::vector<cplx> ParameterSet::lambda(const BowDiagram& d) const {
  if (lambda_) {
    if (lambda_->size() != d.interval_count()) throw InvalidArgument("lambda has the wrong length");
    return *lambda_;
  }
  if (nu_) return lambda_of_nu(d, *nu_);
  return std::vector<cplx>(d.interval_count(), cplx{});
}

std::vector<long long> ParameterSet::theta(const BowDiagram& d) const {
  if (theta_) {
    if (theta_->size() != d.interval_count()) throw InvalidArgument("theta has the wrong length");
    return *theta_;
  }
  if (nu_theta_) return theta_of_nu(d, *nu_theta_);
  return std::vector<long long>(d.interval_count(), 0);
}

std::vector<cplx> ParameterSet::nu(const BowDiagram& d) const {
  if (nu_) {
    if (nu_->size() != d.segment_count()) throw InvalidArgument("nu has the wrong length");
    return *nu_;
  }
  return embed_deformation(d, lambda(d));
}

}  // namespace bowlab::bowmodel
