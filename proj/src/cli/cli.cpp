#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "bowlab/bowmodel/dsl.hpp"
#include "bowlab/bowmodel/parameters.hpp"
#include "bowlab/cli/cli.hpp"
#include "bowlab/io/json_io.hpp"
#include "bowlab/variety/variety.hpp"

namespace bowlab::cli {

using bowmodel::BowDiagram;
using io::Json;
using numerics::Tolerances;
using numerics::cplx;

namespace {

// Bad files and malformed flag values are usage errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(item);
  if (!text.empty() && text.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

struct Common {
  std::uint64_t seed = 0;
  std::string format = "json";
  double rank_tol = 1e-9, residual_tol = 1e-10;

  Tolerances tol() const {
    Tolerances t;
    t.rank_tol = rank_tol;
    t.residual_tol = residual_tol;
    return t;
  }
};

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

std::vector<cplx> lambda_for(const BowDiagram& d, const std::string& text) {
  if (text.empty()) return std::vector<cplx>(d.interval_count(), cplx{});
  std::vector<cplx> v;
  try {
    v = parse_complex_list(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--lambda: ") + e.what());
  }
  if (v.size() != d.interval_count())
    throw UsageError("--lambda needs " + std::to_string(d.interval_count()) + " entries");
  return v;
}

std::vector<long long> theta_for(const BowDiagram& d, const std::string& text) {
  std::vector<long long> v;
  try {
    v = parse_theta_list(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--theta: ") + e.what());
  }
  if (v.size() != d.interval_count())
    throw UsageError("--theta needs " + std::to_string(d.interval_count()) + " entries");
  return v;
}

// Accepts a bare point or any report that carries one under "point".
variety::TotalSpacePoint load_point(const BowDiagram& d, const std::string& path) {
  Json j = io::parse(read_file(path));
  while (j.is_object() && !j.contains("triangles") && j.contains("point")) j = Json(j["point"]);
  return io::point_from_json(d, j);
}

variety::SolveConfig solve_config(const Common& c, std::size_t starts, const std::string& space) {
  variety::SolveConfig cfg;
  cfg.seed = c.seed;
  cfg.n_starts = starts;
  cfg.tol = c.tol();
  cfg.space = space == "ambient" ? variety::SolveSpace::Ambient : variety::SolveSpace::Chart;
  return cfg;
}

int cmd_parse(const BowDiagram& d, const Common& c, std::ostream& out) {
  if (c.format == "table") {
    out << bowmodel::serialize(d);
  } else {
    Json j = io::to_json(d);
    j["canonical"] = bowmodel::serialize(d);
    emit(out, j);
  }
  return kOk;
}

int cmd_dim(const BowDiagram& d, const Common& c, std::ostream& out) {
  const long long dim = variety::expected_smooth_dimension(d);
  if (c.format == "table")
    out << "expected_smooth_dimension " << dim << "\nambient_dimension "
        << variety::ambient_dimension(d) << "\n";
  else
    out << dim << "\n";
  return kOk;
}

int cmd_solve(const BowDiagram& d, const Common& c, const std::string& lambda,
              std::size_t starts, const std::string& space, std::ostream& out) {
  auto outcome = variety::solve_fiber(d, lambda_for(d, lambda), solve_config(c, starts, space));
  if (c.format == "table") {
    if (outcome.success())
      out << "solved: residual " << outcome.report->residual_norm << " at start "
          << outcome.report->start_index << "\n";
    else
      out << "no solution found in " << outcome.evidence.starts << " starts ("
          << variety::InfeasibilityEvidence::kLabel << ")\n";
  } else {
    emit(out, io::to_json(outcome));
  }
  return kOk;
}

int cmd_stability(const BowDiagram& d, const Common& c, const std::string& point,
                  const std::string& theta, const std::string& mode, const std::string& notion,
                  std::ostream& out) {
  const auto th = theta_for(d, theta);
  auto p = load_point(d, point);
  auto r = variety::check_semistable(
      d, p, th, mode == "exact01" ? StabilityMode::Exact01 : StabilityMode::Heuristic,
      c.tol(), notion == "stable" ? Notion::Stable : Notion::Semistable);
  if (c.format == "table")
    out << r.label() << (r.conclusive ? "" : " (heuristic)") << "\n";
  else
    emit(out, io::to_json(r));
  return kOk;
}

int cmd_reduce(const BowDiagram& d, const Common& c, const std::string& point,
               const std::string& lambda, const std::string& theta, std::size_t starts,
               std::ostream& out) {
  if (!point.empty()) {
    auto q = cobalanced::to_quiver_point(d, cobalanced::gauge_fix_H(d, load_point(d, point), c.tol()));
    emit(out, io::to_json(q));
    return kOk;
  }
  // No point given: run the whole pipeline.
  auto th = theta.empty() ? std::vector<long long>(d.interval_count(), 0) : theta_for(d, theta);
  auto rep = cobalanced::verify_reduction(d, lambda_for(d, lambda), th, solve_config(c, starts, "chart"));
  if (c.format == "table")
    out << (rep.passed ? "pass" : "fail") << ": moment error " << rep.moment_transport_error
        << ", bow " << rep.bow_verdict << ", quiver " << rep.quiver_verdict << "\n";
  else
    emit(out, io::to_json(rep));
  return rep.passed || !rep.solved ? kOk : kDomainError;
}

int cmd_check_empty(const BowDiagram& d, const Common& c, const std::string& lambda,
                    std::size_t starts, bool solve, std::ostream& out) {
  const auto violations = bowmodel::local_emptiness_check(d);
  Json j;
  j["necessary_condition"] = violations.empty() ? "pass" : "fail";
  j["violations"] = io::to_json(violations);
  std::optional<variety::SolveOutcome> outcome;
  if (solve && violations.empty()) {
    const auto nu = bowmodel::embed_deformation(d, lambda_for(d, lambda));
    outcome = variety::solve_all_starts(d, nu, solve_config(c, starts, "chart"));
    j["solver_evidence"] = io::to_json(outcome->evidence);
  } else {
    j["solver_evidence"] = nullptr;
  }
  if (c.format == "table") {
    out << "necessary condition: " << (violations.empty() ? "pass" : "fail");
    if (outcome)
      out << "; solver evidence: " << outcome->evidence.failed << "/" << outcome->evidence.starts
          << " starts failed (" << variety::InfeasibilityEvidence::kLabel << ")";
    out << "\n";
  } else {
    emit(out, j);
  }
  return kOk;
}

}  // namespace

cplx parse_complex(const std::string& raw) {
  static const std::regex number(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
  static const std::regex imag(R"(([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)?i)");
  static const std::regex both(
      R"(([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([+-](?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)i)");
  const std::string s = trim(raw);
  std::smatch m;
  auto coeff = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return std::stod(t);
  };
  if (std::regex_match(s, number)) return {std::stod(s), 0.0};
  if (std::regex_match(s, m, imag)) return {0.0, coeff(m[1].str())};
  if (std::regex_match(s, m, both)) return {std::stod(m[1].str()), coeff(m[2].str())};
  throw std::invalid_argument("'" + s + "' is not a number");
}

std::vector<cplx> parse_complex_list(const std::string& text) {
  std::vector<cplx> out;
  for (const auto& item : split(text)) out.push_back(parse_complex(item));
  return out;
}

std::vector<long long> parse_theta_list(const std::string& text) {
  static const std::regex frac(R"(([+-]?\d{1,15})(?:/(\d{1,15}))?)");
  std::vector<Rational> q;
  for (const auto& raw : split(text)) {
    const std::string s = trim(raw);
    std::smatch m;
    if (!std::regex_match(s, m, frac)) throw std::invalid_argument("'" + s + "' is not a rational");
    Rational r{std::stoll(m[1].str()), m[2].matched ? std::stoll(m[2].str()) : 1};
    if (r.den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q.push_back(r);
  }
  return integer_theta(q);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bow varieties: diagrams, moment maps, stability, reductions"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Common c;
  if (const char* env = std::getenv("BOWLAB_SEED")) {
    try {
      c.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "BOWLAB_SEED is not an unsigned integer\n";
      return kUsageError;
    }
  }
  app.add_option("--seed", c.seed, "random seed (default: $BOWLAB_SEED or 0)");
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--rank-tol", c.rank_tol, "relative rank tolerance")->check(CLI::PositiveNumber);
  app.add_option("--residual-tol", c.residual_tol, "residual tolerance")->check(CLI::PositiveNumber);

  std::string path, point, lambda, theta, mode = "heuristic", notion = "semistable", space = "chart";
  std::size_t starts = 8, empty_starts = 100;
  bool no_solve = false;

  auto diagram_arg = [&](CLI::App* sub) {
    sub->add_option("diagram", path, "bow diagram file")->required();
  };
  auto* parse = app.add_subcommand("parse", "validate a diagram and print its canonical form");
  diagram_arg(parse);
  auto* dim = app.add_subcommand("dim", "expected dimension of the smooth variety");
  diagram_arg(dim);
  auto* solve = app.add_subcommand("solve", "find a point of the fiber over lambda");
  diagram_arg(solve);
  solve->add_option("--lambda", lambda, "one value per interval, comma separated");
  solve->add_option("--starts", starts)->check(CLI::PositiveNumber);
  solve->add_option("--space", space)->check(CLI::IsMember({"chart", "ambient"}));
  auto* stab = app.add_subcommand("stability", "semistability verdict for a point");
  diagram_arg(stab);
  stab->add_option("point", point, "point JSON")->required();
  stab->add_option("--theta", theta, "one value per interval, comma separated")->required();
  stab->add_option("--mode", mode)->check(CLI::IsMember({"exact01", "heuristic"}));
  stab->add_option("--notion", notion)->check(CLI::IsMember({"semistable", "stable"}));
  auto* reduce = app.add_subcommand("reduce", "quiver representation of a cobalanced point");
  diagram_arg(reduce);
  reduce->add_option("point", point, "point JSON; without it the full pipeline runs");
  reduce->add_option("--lambda", lambda);
  reduce->add_option("--theta", theta);
  reduce->add_option("--starts", starts)->check(CLI::PositiveNumber);
  auto* empty = app.add_subcommand("check-empty", "local necessary condition plus solver evidence");
  diagram_arg(empty);
  empty->add_option("--lambda", lambda);
  empty->add_option("--starts", empty_starts)->check(CLI::PositiveNumber);
  empty->add_flag("--no-solve", no_solve, "skip the solver");
  auto* self = app.add_subcommand("selftest", "run the built-in examples");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (self->parsed()) return selftest(c.seed, out);
    const BowDiagram d = bowmodel::parse_bow_diagram(read_file(path));
    if (parse->parsed()) return cmd_parse(d, c, out);
    if (dim->parsed()) return cmd_dim(d, c, out);
    if (solve->parsed()) return cmd_solve(d, c, lambda, starts, space, out);
    if (stab->parsed()) return cmd_stability(d, c, point, theta, mode, notion, out);
    if (reduce->parsed()) return cmd_reduce(d, c, point, lambda, theta, starts, out);
    if (empty->parsed()) return cmd_check_empty(d, c, lambda, empty_starts, !no_solve, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace bowlab::cli
