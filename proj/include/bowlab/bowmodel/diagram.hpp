#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bowlab/numerics/linalg.hpp"
#include "bowlab/quiver/quiver.hpp"

namespace bowlab::bowmodel {

using numerics::Index;

class DuplicateInterval : public Error {
 public:
  using Error::Error;
};
class UnknownIntervalInEdge : public Error {
 public:
  using Error::Error;
};
class EmptySegmentList : public Error {
 public:
  using Error::Error;
};
class NotCobalanced : public Error {
 public:
  using Error::Error;
};

// An edge runs from the end of `tail` to the beginning of `head`.
struct Edge {
  std::size_t tail = 0;
  std::size_t head = 0;
  bool operator==(const Edge&) const = default;
};

struct Bow {
  std::vector<std::string> intervals;
  std::vector<Edge> edges;

  void validate() const;
  bool operator==(const Bow&) const = default;
};

struct SegmentRef {
  std::size_t interval = 0;
  std::size_t index = 0;  // 0 is the first segment
  bool operator==(const SegmentRef&) const = default;
};

// x-point `index` of an interval separates segments index and index + 1.
struct XPointRef {
  std::size_t interval = 0;
  std::size_t index = 0;
  bool operator==(const XPointRef&) const = default;
};

// Segments and x-points also get global ids: intervals in declaration
// order, positions in wavy-line order within each interval.
class BowDiagram {
 public:
  BowDiagram() = default;
  BowDiagram(Bow bow, std::vector<std::vector<Index>> seg_dims);

  const Bow& bow() const { return bow_; }
  const std::vector<std::vector<Index>>& seg_dims() const { return dims_; }
  const std::string& interval_name(std::size_t s) const { return bow_.intervals[s]; }
  std::size_t interval_count() const { return bow_.intervals.size(); }
  std::size_t edge_count() const { return bow_.edges.size(); }
  const Edge& edge(std::size_t e) const { return bow_.edges[e]; }
  std::size_t interval_index(const std::string& name) const;  // throws InvalidArgument

  std::size_t segment_count() const { return seg_refs_.size(); }
  std::size_t x_point_count() const { return x_refs_.size(); }
  std::size_t x_point_count(std::size_t interval) const { return dims_[interval].size() - 1; }

  std::size_t segment_id(std::size_t interval, std::size_t index) const;
  std::size_t x_point_id(std::size_t interval, std::size_t index) const;
  std::size_t first_segment(std::size_t interval) const { return segment_id(interval, 0); }
  std::size_t last_segment(std::size_t interval) const;
  const SegmentRef& segment(std::size_t id) const { return seg_refs_[id]; }
  const XPointRef& x_point(std::size_t id) const { return x_refs_[id]; }

  Index dim(std::size_t segment) const;
  std::vector<Index> segment_dims() const;  // by global id
  std::size_t left_segment(std::size_t x) const;   // zeta_x^-
  std::size_t right_segment(std::size_t x) const;  // zeta_x^+
  std::size_t tail_segment(std::size_t e) const;   // last segment of the tail interval
  std::size_t head_segment(std::size_t e) const;   // first segment of the head interval

  bool operator==(const BowDiagram& o) const { return bow_ == o.bow_ && dims_ == o.dims_; }

 private:
  Bow bow_;
  std::vector<std::vector<Index>> dims_;
  std::vector<std::size_t> seg_offset_, x_offset_;
  std::vector<SegmentRef> seg_refs_;
  std::vector<XPointRef> x_refs_;
};

quiver::Quiver underlying_quiver(const Bow& b);

bool is_cobalanced(const BowDiagram& d);

struct FramedDims {
  std::vector<Index> v, w;
  bool operator==(const FramedDims&) const = default;
};

// throws NotCobalanced
FramedDims framed_dims_of_cobalanced(const BowDiagram& d);

// The cobalanced diagram with w_i x-points and dimension v_i on vertex i's wavy line.
BowDiagram cobalanced_diagram(const quiver::Quiver& q, const FramedDims& dims);

// Same intervals with edges flipped and every wavy line read backwards.
BowDiagram reversed(const BowDiagram& d);

struct LocalViolation {
  std::size_t x_point = 0;  // global id
  int configuration = 1;    // 1: first x-point, incoming edges; 2: last x-point, outgoing edges
  Index v0 = 0;
  Index v_neighbor = 0;     // segment on the other side of the x-point
  Index edge_dims = 0;      // sum over the incident edges' far segments
};

// Necessary condition for nonemptiness: v0 <= v_neighbor + edge_dims + 1 in
// both local configurations.
std::vector<LocalViolation> local_emptiness_check(const BowDiagram& d);

}  // namespace bowlab::bowmodel
