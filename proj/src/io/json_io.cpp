#include "bowlab/io/json_io.hpp"

namespace bowlab::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw JsonError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw JsonError(std::string("field '") + key + "': " + e.what());
  }
}

std::vector<Index> index_list(const Json& j, const char* key) {
  auto v = get<std::vector<Index>>(j, key);
  for (Index x : v)
    if (x < 0) throw JsonError(std::string("negative entry in '") + key + "'");
  return v;
}

Json matrices(const std::vector<CMatrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(to_json(m));
  return out;
}

const Json& array_of(const Json& j, const char* key, std::size_t n) {
  const Json& a = field(j, key);
  if (!a.is_array() || a.size() != n)
    throw JsonError(std::string("'") + key + "' must be an array of length " + std::to_string(n));
  return a;
}

}  // namespace

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw JsonError("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j, Index rows, Index cols) {
  const std::string want = std::to_string(rows) + "x" + std::to_string(cols);
  if (!j.is_array()) throw JsonError("matrix must be an array of rows");
  // A matrix with no columns may be written as [] too.
  if (cols == 0 && j.empty()) return CMatrix::Zero(rows, 0);
  if (static_cast<Index>(j.size()) != rows) throw JsonError("matrix should be " + want);
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw JsonError("matrix should be " + want);
    for (Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

Json to_json(const BowDiagram& d) {
  Json out;
  Json intervals = Json::array();
  for (std::size_t s = 0; s < d.interval_count(); ++s)
    intervals.push_back({{"name", d.interval_name(s)}, {"dims", d.seg_dims()[s]}});
  Json edges = Json::array();
  for (std::size_t e = 0; e < d.edge_count(); ++e)
    edges.push_back(
        {{"tail", d.interval_name(d.edge(e).tail)}, {"head", d.interval_name(d.edge(e).head)}});
  out["intervals"] = std::move(intervals);
  out["edges"] = std::move(edges);
  return out;
}

BowDiagram diagram_from_json(const Json& j) {
  bowmodel::Bow bow;
  std::vector<std::vector<Index>> dims;
  const Json& iv = field(j, "intervals");
  if (!iv.is_array()) throw JsonError("'intervals' must be an array");
  for (const auto& i : iv) {
    bow.intervals.push_back(get<std::string>(i, "name"));
    dims.push_back(index_list(i, "dims"));
  }
  auto lookup = [&](const std::string& name) {
    for (std::size_t s = 0; s < bow.intervals.size(); ++s)
      if (bow.intervals[s] == name) return s;
    throw bowmodel::UnknownIntervalInEdge("unknown interval '" + name + "'");
  };
  const Json& ev = field(j, "edges");
  if (!ev.is_array()) throw JsonError("'edges' must be an array");
  for (const auto& e : ev)
    bow.edges.push_back({lookup(get<std::string>(e, "tail")), lookup(get<std::string>(e, "head"))});
  return BowDiagram(std::move(bow), std::move(dims));
}

Json to_json(const quiver::QuiverRepPoint& p) {
  Json out;
  out["vertices"] = p.quiver.vertices;
  Json arrows = Json::array();
  for (const auto& a : p.quiver.arrows) arrows.push_back({{"tail", a.tail}, {"head", a.head}});
  out["arrows"] = std::move(arrows);
  out["v"] = p.v;
  out["w"] = p.w;
  out["x"] = matrices(p.x);
  out["y"] = matrices(p.y);
  out["I"] = matrices(p.I);
  out["J"] = matrices(p.J);
  return out;
}

quiver::QuiverRepPoint rep_point_from_json(const Json& j) {
  quiver::Quiver q;
  q.vertices = get<std::vector<std::string>>(j, "vertices");
  const Json& arrows = field(j, "arrows");
  if (!arrows.is_array()) throw JsonError("'arrows' must be an array");
  for (const auto& a : arrows)
    q.arrows.push_back({get<std::size_t>(a, "tail"), get<std::size_t>(a, "head")});
  auto p = quiver::QuiverRepPoint::zero(q, index_list(j, "v"), index_list(j, "w"));
  const auto& xs = array_of(j, "x", q.arrows.size());
  const auto& ys = array_of(j, "y", q.arrows.size());
  for (std::size_t e = 0; e < q.arrows.size(); ++e) {
    p.x[e] = matrix_from_json(xs[e], p.x[e].rows(), p.x[e].cols());
    p.y[e] = matrix_from_json(ys[e], p.y[e].rows(), p.y[e].cols());
  }
  const auto& is = array_of(j, "I", q.vertices.size());
  const auto& js = array_of(j, "J", q.vertices.size());
  for (std::size_t i = 0; i < q.vertices.size(); ++i) {
    p.I[i] = matrix_from_json(is[i], p.v[i], p.w[i]);
    p.J[i] = matrix_from_json(js[i], p.w[i], p.v[i]);
  }
  return p;
}

Json to_json(const triangle::TriangleData& t) {
  Json out;
  out["v1"] = t.v1();
  out["v2"] = t.v2();
  out["A"] = to_json(t.A);
  out["B1"] = to_json(t.B1);
  out["B2"] = to_json(t.B2);
  out["b"] = to_json(t.b);
  out["a"] = to_json(t.a);
  return out;
}

namespace {

triangle::TriangleData triangle_in(const Json& j, Index v1, Index v2) {
  auto t = triangle::TriangleData::zero(v1, v2);
  t.A = matrix_from_json(field(j, "A"), v2, v1);
  t.B1 = matrix_from_json(field(j, "B1"), v1, v1);
  t.B2 = matrix_from_json(field(j, "B2"), v2, v2);
  t.b = matrix_from_json(field(j, "b"), 1, v1);
  t.a = matrix_from_json(field(j, "a"), v2, 1);
  return t;
}

}  // namespace

triangle::TriangleData triangle_from_json(const Json& j) {
  return triangle_in(j, get<Index>(j, "v1"), get<Index>(j, "v2"));
}

Json to_json(const triangle::HurtubiseForm& f) {
  Json out;
  out["v1"] = f.v1;
  out["v2"] = f.v2;
  out["u"] = to_json(f.u);
  out["h"] = to_json(f.h);
  if (f.equal_dims()) {
    out["I"] = to_json(f.I);
    out["J"] = to_json(f.J);
  } else {
    out["f"] = to_json(f.f);
    out["g"] = to_json(f.g);
    out["e0"] = to_json(f.e0);
    out["e"] = to_json(f.e);
  }
  return out;
}

triangle::HurtubiseForm hurtubise_from_json(const Json& j) {
  const Index v1 = get<Index>(j, "v1"), v2 = get<Index>(j, "v2");
  if (v1 < 0 || v2 < 0) throw JsonError("negative dimension");
  auto f = triangle::HurtubiseForm::zero(v1, v2);
  f.u = matrix_from_json(field(j, "u"), f.u.rows(), f.u.cols());
  f.h = matrix_from_json(field(j, "h"), f.h.rows(), f.h.cols());
  if (f.equal_dims()) {
    f.I = matrix_from_json(field(j, "I"), f.I.rows(), f.I.cols());
    f.J = matrix_from_json(field(j, "J"), f.J.rows(), f.J.cols());
  } else {
    f.f = matrix_from_json(field(j, "f"), f.f.rows(), f.f.cols());
    f.g = matrix_from_json(field(j, "g"), f.g.rows(), f.g.cols());
    f.e0 = complex_from_json(field(j, "e0"));
    f.e = matrix_from_json(field(j, "e"), f.e.rows(), f.e.cols());
  }
  return f;
}

Json to_json(const variety::TotalSpacePoint& p) {
  Json out;
  Json ts = Json::array();
  for (const auto& t : p.triangles) ts.push_back(to_json(t));
  Json es = Json::array();
  for (const auto& e : p.edges) es.push_back({{"C", to_json(e.C)}, {"D", to_json(e.D)}});
  out["triangles"] = std::move(ts);
  out["edges"] = std::move(es);
  return out;
}

variety::TotalSpacePoint point_from_json(const BowDiagram& d, const Json& j) {
  auto p = variety::TotalSpacePoint::zero(d);
  const auto& ts = array_of(j, "triangles", p.triangles.size());
  for (std::size_t x = 0; x < p.triangles.size(); ++x)
    p.triangles[x] = triangle_in(ts[x], p.triangles[x].v1(), p.triangles[x].v2());
  const auto& es = array_of(j, "edges", p.edges.size());
  for (std::size_t e = 0; e < p.edges.size(); ++e) {
    auto& c = p.edges[e];
    c.C = matrix_from_json(field(es[e], "C"), c.C.rows(), c.C.cols());
    c.D = matrix_from_json(field(es[e], "D"), c.D.rows(), c.D.cols());
  }
  return p;
}

Json to_json(const variety::FiberSolveReport& r) {
  Json out;
  out["status"] = "solved";
  out["seed"] = r.seed;
  out["start_index"] = r.start_index;
  out["residual_norm"] = r.residual_norm;
  out["iterations"] = r.iterations;
  out["open_conditions_ok"] = r.open_conditions_ok;
  out["point"] = to_json(r.point);
  return out;
}

Json to_json(const variety::InfeasibilityEvidence& e) {
  Json out;
  out["status"] = "no_solution_found";
  out["label"] = variety::InfeasibilityEvidence::kLabel;
  out["starts"] = e.starts;
  out["failed"] = e.failed;
  out["best_residual"] = e.best_residual;
  Json recs = Json::array();
  for (const auto& r : e.records) {
    Json x;
    x["seed"] = r.seed;
    x["residual_norm"] = r.residual_norm;
    x["iterations"] = r.iterations;
    x["status"] = numerics::to_string(r.status);
    x["s1_ok"] = r.s1_ok;
    x["s2_ok"] = r.s2_ok;
    recs.push_back(std::move(x));
  }
  out["records"] = std::move(recs);
  return out;
}

Json to_json(const variety::SolveOutcome& o) {
  return o.report ? to_json(*o.report) : to_json(o.evidence);
}

Json to_json(const cobalanced::HReducedPoint& r) {
  Json out;
  out["point"] = to_json(r.point);
  out["I_tilde"] = matrices(r.I_tilde);
  out["J_tilde"] = matrices(r.J_tilde);
  return out;
}

cobalanced::HReducedPoint reduced_point_from_json(const BowDiagram& d, const Json& j) {
  cobalanced::HReducedPoint r;
  r.point = point_from_json(d, field(j, "point"));
  const auto& is = array_of(j, "I_tilde", r.point.triangles.size());
  const auto& js = array_of(j, "J_tilde", r.point.triangles.size());
  for (std::size_t x = 0; x < r.point.triangles.size(); ++x) {
    const Index v = r.point.triangles[x].v1();
    r.I_tilde.push_back(matrix_from_json(is[x], v, 1));
    r.J_tilde.push_back(matrix_from_json(js[x], 1, v));
  }
  return r;
}

Json to_json(const StabilityResult& r) {
  Json out;
  out["notion"] = r.notion == Notion::Semistable ? "semistable" : "stable";
  out["verdict"] = r.label();
  out["conclusive"] = r.conclusive;
  out["candidates"] = r.candidates;
  if (r.witness) {
    Json w;
    w["clause"] = r.witness->clause;
    w["weight"] = r.witness->weight;
    std::vector<Index> dims;
    for (const auto& s : r.witness->subspace) dims.push_back(s.dim());
    w["dims"] = dims;
    out["witness"] = std::move(w);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json to_json(const cobalanced::ReductionReport& r) {
  Json out;
  out["passed"] = r.passed;
  out["solved"] = r.solved;
  out["residual_norm"] = r.residual_norm;
  out["mu_H"] = r.mu_H;
  out["moment_transport_error"] = r.moment_transport_error;
  out["bow_verdict"] = r.bow_verdict;
  out["quiver_verdict"] = r.quiver_verdict;
  out["verdicts_agree"] = r.verdicts_agree;
  out["exact"] = r.exact;
  out["quiver_point"] = r.quiver_point ? to_json(*r.quiver_point) : Json(nullptr);
  out["evidence"] = r.evidence ? to_json(*r.evidence) : Json(nullptr);
  return out;
}

Json to_json(const std::vector<bowmodel::LocalViolation>& v) {
  Json out = Json::array();
  for (const auto& x : v)
    out.push_back({{"x_point", x.x_point},
                   {"configuration", x.configuration},
                   {"v0", x.v0},
                   {"v_neighbor", x.v_neighbor},
                   {"edge_dims", x.edge_dims}});
  return out;
}

Json to_json(const std::vector<variety::LocalMapReport>& v) {
  Json out = Json::array();
  for (const auto& x : v)
    out.push_back({{"x_point", x.x_point},
                   {"configuration", x.configuration},
                   {"v0", x.v0},
                   {"rank", x.rank},
                   {"ok", x.ok}});
  return out;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw JsonError(e.what());
  }
}

}  // namespace bowlab::io
