#include <algorithm>
#include <set>

#include "bowlab/bowmodel/diagram.hpp"

namespace bowlab::bowmodel {

void Bow::validate() const {
  std::set<std::string> seen;
  for (const auto& name : intervals)
    if (!seen.insert(name).second) throw DuplicateInterval("duplicate interval '" + name + "'");
  for (const auto& e : edges)
    if (e.tail >= intervals.size() || e.head >= intervals.size())
      throw UnknownIntervalInEdge("edge references a missing interval");
}

BowDiagram::BowDiagram(Bow bow, std::vector<std::vector<Index>> seg_dims)
    : bow_(std::move(bow)), dims_(std::move(seg_dims)) {
  bow_.validate();
  if (dims_.size() != bow_.intervals.size())
    throw InvalidArgument("one segment list per interval expected");
  for (std::size_t s = 0; s < dims_.size(); ++s) {
    if (dims_[s].empty())
      throw EmptySegmentList("interval '" + bow_.intervals[s] + "' has no segments");
    for (Index v : dims_[s])
      if (v < 0) throw InvalidArgument("negative segment dimension on '" + bow_.intervals[s] + "'");
    seg_offset_.push_back(seg_refs_.size());
    x_offset_.push_back(x_refs_.size());
    for (std::size_t j = 0; j < dims_[s].size(); ++j) seg_refs_.push_back({s, j});
    for (std::size_t i = 0; i + 1 < dims_[s].size(); ++i) x_refs_.push_back({s, i});
  }
}

std::size_t BowDiagram::interval_index(const std::string& name) const {
  auto it = std::find(bow_.intervals.begin(), bow_.intervals.end(), name);
  if (it == bow_.intervals.end()) throw InvalidArgument("no interval named '" + name + "'");
  return static_cast<std::size_t>(it - bow_.intervals.begin());
}

std::size_t BowDiagram::segment_id(std::size_t interval, std::size_t index) const {
  if (interval >= dims_.size() || index >= dims_[interval].size())
    throw InvalidArgument("segment reference out of range");
  return seg_offset_[interval] + index;
}

std::size_t BowDiagram::x_point_id(std::size_t interval, std::size_t index) const {
  if (interval >= dims_.size() || index + 1 >= dims_[interval].size())
    throw InvalidArgument("x-point reference out of range");
  return x_offset_[interval] + index;
}

std::size_t BowDiagram::last_segment(std::size_t interval) const {
  return segment_id(interval, dims_.at(interval).size() - 1);
}

Index BowDiagram::dim(std::size_t segment) const {
  const auto& r = seg_refs_.at(segment);
  return dims_[r.interval][r.index];
}

std::vector<Index> BowDiagram::segment_dims() const {
  std::vector<Index> out;
  for (const auto& list : dims_) out.insert(out.end(), list.begin(), list.end());
  return out;
}

std::size_t BowDiagram::left_segment(std::size_t x) const {
  const auto& r = x_refs_.at(x);
  return seg_offset_[r.interval] + r.index;
}

std::size_t BowDiagram::right_segment(std::size_t x) const { return left_segment(x) + 1; }

std::size_t BowDiagram::tail_segment(std::size_t e) const { return last_segment(bow_.edges.at(e).tail); }

std::size_t BowDiagram::head_segment(std::size_t e) const { return first_segment(bow_.edges.at(e).head); }

quiver::Quiver underlying_quiver(const Bow& b) {
  b.validate();
  quiver::Quiver q;
  q.vertices = b.intervals;
  for (const auto& e : b.edges) q.arrows.push_back({e.tail, e.head});
  return q;
}

bool is_cobalanced(const BowDiagram& d) {
  for (std::size_t x = 0; x < d.x_point_count(); ++x)
    if (d.dim(d.left_segment(x)) != d.dim(d.right_segment(x))) return false;
  return true;
}

FramedDims framed_dims_of_cobalanced(const BowDiagram& d) {
  if (!is_cobalanced(d)) throw NotCobalanced("some x-point has unequal neighbouring dimensions");
  FramedDims out;
  for (const auto& list : d.seg_dims()) {
    out.v.push_back(list.front());
    out.w.push_back(static_cast<Index>(list.size()) - 1);
  }
  return out;
}

BowDiagram cobalanced_diagram(const quiver::Quiver& q, const FramedDims& dims) {
  q.validate();
  if (dims.v.size() != q.vertices.size() || dims.w.size() != q.vertices.size())
    throw InvalidArgument("framed dimension vector has the wrong length");
  Bow b;
  b.intervals = q.vertices;
  for (const auto& a : q.arrows) b.edges.push_back({a.tail, a.head});
  std::vector<std::vector<Index>> seg;
  for (std::size_t i = 0; i < dims.v.size(); ++i) {
    if (dims.w[i] < 0) throw InvalidArgument("negative framing dimension");
    seg.emplace_back(static_cast<std::size_t>(dims.w[i] + 1), dims.v[i]);
  }
  return BowDiagram(std::move(b), std::move(seg));
}

BowDiagram reversed(const BowDiagram& d) {
  Bow b = d.bow();
  for (auto& e : b.edges) std::swap(e.tail, e.head);
  auto seg = d.seg_dims();
  for (auto& list : seg) std::reverse(list.begin(), list.end());
  return BowDiagram(std::move(b), std::move(seg));
}

std::vector<LocalViolation> local_emptiness_check(const BowDiagram& d) {
  std::vector<LocalViolation> out;
  for (std::size_t s = 0; s < d.interval_count(); ++s) {
    const std::size_t w = d.x_point_count(s);
    if (w == 0) continue;
    // (1) first x-point: the first segment against its right neighbour and incoming edges
    {
      LocalViolation c{d.x_point_id(s, 0), 1, d.dim(d.segment_id(s, 0)), d.dim(d.segment_id(s, 1)), 0};
      for (std::size_t e = 0; e < d.edge_count(); ++e)
        if (d.edge(e).head == s) c.edge_dims += d.dim(d.tail_segment(e));
      if (c.v0 > c.v_neighbor + c.edge_dims + 1) out.push_back(c);
    }
    // (2) last x-point: the last segment against its left neighbour and outgoing edges
    {
      LocalViolation c{d.x_point_id(s, w - 1), 2, d.dim(d.segment_id(s, w)),
                       d.dim(d.segment_id(s, w - 1)), 0};
      for (std::size_t e = 0; e < d.edge_count(); ++e)
        if (d.edge(e).tail == s) c.edge_dims += d.dim(d.head_segment(e));
      if (c.v0 > c.v_neighbor + c.edge_dims + 1) out.push_back(c);
    }
  }
  return out;
}

}  // namespace bowlab::bowmodel
