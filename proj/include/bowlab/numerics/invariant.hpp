#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bowlab/error.hpp"
#include "bowlab/numerics/linalg.hpp"

namespace bowlab::numerics {

template <class Alg>
concept SubspaceAlgebra = requires(const Alg& alg, const typename Alg::Space& s,
                                   const typename Alg::Matrix& m, Index n) {
  { alg.zero(n) } -> std::same_as<typename Alg::Space>;
  { alg.full(n) } -> std::same_as<typename Alg::Space>;
  { alg.kernel(m) } -> std::same_as<typename Alg::Space>;
  { alg.column_space(m) } -> std::same_as<typename Alg::Space>;
  { alg.intersect(s, s) } -> std::same_as<typename Alg::Space>;
  { alg.sum(s, s) } -> std::same_as<typename Alg::Space>;
  { alg.image(m, s) } -> std::same_as<typename Alg::Space>;
  { alg.preimage(m, s) } -> std::same_as<typename Alg::Space>;
  { alg.dim(s) } -> std::convertible_to<Index>;
  { alg.ambient(s) } -> std::convertible_to<Index>;
  { alg.rows(m) } -> std::convertible_to<Index>;
  { alg.cols(m) } -> std::convertible_to<Index>;
};

// A linear map between two graded pieces (source may equal target).
template <class Matrix>
struct GradedMap {
  std::size_t source = 0;
  std::size_t target = 0;
  const Matrix* matrix = nullptr;
};

namespace detail {

template <SubspaceAlgebra Alg>
void check_maps(const Alg& alg, const std::vector<typename Alg::Space>& pieces,
                std::span<const GradedMap<typename Alg::Matrix>> maps) {
  for (const auto& f : maps) {
    if (f.source >= pieces.size() || f.target >= pieces.size() || f.matrix == nullptr)
      throw DimensionMismatch("graded map references a missing piece");
    if (alg.cols(*f.matrix) != alg.ambient(pieces[f.source]) ||
        alg.rows(*f.matrix) != alg.ambient(pieces[f.target]))
      throw DimensionMismatch("graded map shape does not match the ambient dims");
  }
}

}  // namespace detail

// Largest graded subspace inside W that every map sends into itself.
// Each pass shrinks some piece or stops, so the loop ends after at most
// sum(dim W) passes.
template <SubspaceAlgebra Alg>
std::vector<typename Alg::Space> graded_largest_invariant_inside(
    const Alg& alg, std::vector<typename Alg::Space> w,
    std::span<const GradedMap<typename Alg::Matrix>> maps) {
  detail::check_maps(alg, w, maps);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& f : maps) {
      auto& src = w[f.source];
      if (alg.dim(src) == 0) continue;
      auto next = alg.intersect(src, alg.preimage(*f.matrix, w[f.target]));
      if (alg.dim(next) < alg.dim(src)) {
        src = std::move(next);
        changed = true;
      }
    }
  }
  return w;
}

// Smallest graded subspace containing W that every map sends into itself.
template <SubspaceAlgebra Alg>
std::vector<typename Alg::Space> graded_smallest_invariant_containing(
    const Alg& alg, std::vector<typename Alg::Space> w,
    std::span<const GradedMap<typename Alg::Matrix>> maps) {
  detail::check_maps(alg, w, maps);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& f : maps) {
      auto& dst = w[f.target];
      if (alg.dim(dst) == alg.ambient(dst)) continue;
      auto next = alg.sum(dst, alg.image(*f.matrix, w[f.source]));
      if (alg.dim(next) > alg.dim(dst)) {
        dst = std::move(next);
        changed = true;
      }
    }
  }
  return w;
}

template <SubspaceAlgebra Alg>
typename Alg::Space largest_invariant_inside(const Alg& alg, typename Alg::Space w,
                                             std::span<const typename Alg::Matrix> ops) {
  std::vector<GradedMap<typename Alg::Matrix>> maps;
  for (const auto& op : ops) maps.push_back({0, 0, &op});
  std::vector<typename Alg::Space> pieces{std::move(w)};
  return graded_largest_invariant_inside<Alg>(alg, std::move(pieces), maps).front();
}

template <SubspaceAlgebra Alg>
typename Alg::Space smallest_invariant_containing(const Alg& alg, typename Alg::Space w,
                                                  std::span<const typename Alg::Matrix> ops) {
  std::vector<GradedMap<typename Alg::Matrix>> maps;
  for (const auto& op : ops) maps.push_back({0, 0, &op});
  std::vector<typename Alg::Space> pieces{std::move(w)};
  return graded_smallest_invariant_containing<Alg>(alg, std::move(pieces), maps).front();
}

// Complex entry points; scale defaults to the largest operator norm.
Subspace largest_invariant_inside(const Subspace& w, std::span<const CMatrix> ops,
                                  const Tolerances& tol);
Subspace smallest_invariant_containing(const Subspace& w, std::span<const CMatrix> ops,
                                       const Tolerances& tol);

using GradedSubspace = std::vector<Subspace>;
using CGradedMap = GradedMap<CMatrix>;

}  // namespace bowlab::numerics
