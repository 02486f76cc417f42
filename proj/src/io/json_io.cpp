#include "epigauss/io/json_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "epigauss/numerics/error.hpp"

namespace epigauss::io {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::parse_error, msg); }

std::string detail(const Error& e) {
  const std::string w = e.what();
  const std::string prefix = std::string(to_string(e.kind())) + ": ";
  return w.rfind(prefix, 0) == 0 ? w.substr(prefix.size()) : w;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

Json parse_text(const std::string& text, std::size_t first_line = 1) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail("line " + std::to_string(first_line - 1 + line_of(text, e.byte == 0 ? 0 : e.byte - 1)) + ": " + e.what());
  }
}

const Json& field(const Json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) fail("missing field \"" + key + "\"");
  return j.at(key);
}

Vec vec_from(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + " must be an array");
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(to_number(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

double parse_value(const std::string& tok, std::size_t line) {
  std::string t;
  for (char ch : tok)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t == "inf" || t == "+inf" || t == "Inf" || t == "INF") return kInf;
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size() || std::isnan(v)) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    fail("line " + std::to_string(line) + ": cannot parse value \"" + t + "\"");
  }
}

std::string full(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

GridFunction read_grid(const Json& header, std::istream& in, std::size_t first_line) {
  const Json& dom = field(header, "domain");
  const Vec lo = vec_from(field(dom, "lo"), "domain.lo"), hi = vec_from(field(dom, "hi"), "domain.hi");
  std::vector<std::size_t> shape;
  for (const Json& s : field(header, "shape")) {
    if (!s.is_number_unsigned()) fail("shape entries must be positive integers");
    shape.push_back(s.get<std::size_t>());
  }
  const bool convex = header.value("convex", false);
  std::vector<ExtReal> values;
  std::string line;
  std::size_t lineno = first_line;
  while (std::getline(in, line)) {
    ++lineno;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.find_first_not_of(" \t\r") == std::string::npos) continue;
      const double v = parse_value(tok, lineno);
      if (v == -kInf) fail("line " + std::to_string(lineno) + ": -inf is not allowed");
      values.push_back(v == kInf ? ExtReal::infinity() : ExtReal(v));
    }
  }
  return GridFunction(BoxDomain(lo, hi), shape, std::move(values), convex);
}

Plq plq_from_json(const Json& j, std::size_t axis) {
  const std::string where = "axes[" + std::to_string(axis) + "]";
  const Vec breaks = vec_from(field(j, "breaks"), where + ".breaks");
  std::vector<QuadPiece> pieces;
  for (const Json& p : field(j, "pieces")) {
    const Vec c = vec_from(p, where + ".pieces");
    if (c.size() != 3) fail(where + ": each piece is [a, b, c]");
    pieces.push_back({c[0], c[1], c[2]});
  }
  return Plq(breaks, pieces);
}

Json plq_json(const Plq& p) {
  Json pieces = Json::array();
  for (const QuadPiece& q : p.pieces()) pieces.push_back(Json::array({q.a, q.b, q.c}));
  return {{"breaks", vec_json(p.breaks())}, {"pieces", pieces}};
}

}  // namespace

Json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

double to_number(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  fail(where + " must be a number");
}

DiscreteMeasure measure_from_json(const Json& j) {
  DiscreteMeasure mu;
  const Json& n = field(j, "n");
  if (!n.is_number_unsigned() || n.get<std::size_t>() == 0) fail("\"n\" must be a positive integer");
  mu.n = n.get<std::size_t>();
  const Json& pts = field(j, "points");
  if (!pts.is_array()) fail("\"points\" must be an array");
  for (std::size_t i = 0; i < pts.size(); ++i) mu.points.push_back(vec_from(pts[i], "points[" + std::to_string(i) + "]"));
  mu.weights = vec_from(field(j, "weights"), "weights");
  return mu;
}

Json to_json(const DiscreteMeasure& mu) {
  Json pts = Json::array();
  for (const Vec& p : mu.points) pts.push_back(vec_json(p));
  return {{"n", mu.n}, {"points", pts}, {"weights", vec_json(mu.weights)}};
}

Json to_json(const PLConvexFunction& f) {
  Json pieces = Json::array(), dom = Json::array();
  for (const AffinePiece& p : f.pieces()) pieces.push_back({{"slope", vec_json(p.slope)}, {"intercept", number(p.intercept)}});
  for (const Halfspace& h : f.domain()) dom.push_back({{"normal", vec_json(h.normal)}, {"offset", number(h.offset)}});
  return {{"type", "pl"}, {"pieces", pieces}, {"domain", dom}};
}

PLConvexFunction pl_from_json(const Json& j) {
  std::vector<AffinePiece> pieces;
  std::vector<Halfspace> dom;
  for (const Json& p : field(j, "pieces"))
    pieces.push_back({vec_from(field(p, "slope"), "slope"), to_number(field(p, "intercept"), "intercept")});
  if (j.contains("domain"))
    for (const Json& h : j.at("domain"))
      dom.push_back({vec_from(field(h, "normal"), "normal"), to_number(field(h, "offset"), "offset")});
  return PLConvexFunction(std::move(pieces), std::move(dom));
}

ConvexFunction read_function(std::istream& in) {
  std::string first;
  std::size_t skipped = 0;
  while (std::getline(in, first)) {
    ++skipped;
    if (first.find_first_not_of(" \t\r") != std::string::npos) break;
  }
  if (first.empty()) fail("empty function file");
  // A grid header sits on one line; other types may span several.
  try {
    const Json header = Json::parse(first);
    if (header.is_object() && header.value("type", "") == "grid") return read_grid(header, in, skipped);
  } catch (const Json::parse_error&) {
  }
  std::stringstream rest;
  rest << first << '\n' << in.rdbuf();
  const Json j = parse_text(rest.str(), skipped);
  const std::string type = j.is_object() ? j.value("type", "") : "";
  if (type == "pl") return pl_from_json(j);
  if (type == "separable") {
    std::vector<Plq> axes;
    const Json& a = field(j, "axes");
    for (std::size_t k = 0; k < a.size(); ++k) axes.push_back(plq_from_json(a[k], k));
    return SeparableFunction(std::move(axes));
  }
  if (type == "grid") fail("grid header must be on a single line, followed by the CSV values");
  fail("unknown function type \"" + type + "\" (expected grid, pl or separable)");
}

ConvexFunction read_function_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  try {
    return read_function(in);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::parse_error) throw Error(ErrorKind::parse_error, path + ": " + detail(e));
    throw;
  }
}

void write_function(std::ostream& out, const ConvexFunction& f) {
  if (const auto* g = std::get_if<GridFunction>(&f)) {
    const Json header = {{"type", "grid"},
                         {"domain", {{"lo", vec_json(g->domain().lo())}, {"hi", vec_json(g->domain().hi())}}},
                         {"shape", g->shape()},
                         {"convex", g->convex()}};
    out << header.dump() << '\n';
    const std::size_t row = g->shape().back();
    for (std::size_t i = 0; i < g->size(); ++i) {
      out << full(g->values()[i].value());
      out << ((i + 1) % row == 0 ? '\n' : ',');
    }
    return;
  }
  if (const auto* p = std::get_if<PLConvexFunction>(&f)) {
    out << to_json(*p).dump(1) << '\n';
    return;
  }
  const auto& s = std::get<SeparableFunction>(f);
  Json axes = Json::array();
  for (const Plq& p : s.axes()) axes.push_back(plq_json(p));
  out << Json{{"type", "separable"}, {"axes", axes}}.dump(1) << '\n';
}

void write_function_file(const std::string& path, const ConvexFunction& f) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::invalid_argument, "cannot write " + path);
  write_function(out, f);
}

Json to_json(const MomentMeasureEstimate& m) {
  DiscreteMeasure d;
  d.n = m.n;
  for (const Atom& a : m.atoms) {
    d.points.push_back(a.location);
    d.weights.push_back(a.mass);
  }
  Json j = to_json(d);
  j["total_mass"] = number(m.total_mass);
  j["kind"] = m.kind == MomentMeasureEstimate::Kind::atomic ? "atomic" : "histogram";
  if (m.bins) {
    j["bins"] = {{"lo", vec_json(m.bins->bounds.lo())}, {"hi", vec_json(m.bins->bounds.hi())}, {"shape", m.bins->shape}};
  }
  return j;
}

Json to_json(const SphericalMeasureEstimate& m) {
  DiscreteMeasure d;
  d.n = m.n;
  for (const SphericalAtom& a : m.atoms) {
    d.points.push_back(a.normal);
    d.weights.push_back(a.mass);
  }
  Json j = to_json(d);
  j["total_mass"] = number(m.total_mass);
  j["kind"] = "spherical";
  return j;
}

Json to_json(const ConditionCertificate& c) {
  return {{"alpha", number(c.alpha)},         {"beta", number(c.beta)},
          {"inf_psi_star", number(c.inf_psi_star)}, {"satisfied", c.satisfied},
          {"worst_violation", number(c.worst_violation)}, {"reason", c.reason}};
}

Json to_json(const VariationReport& r) {
  Json j = {{"t_schedule", vec_json(r.t_schedule)},
            {"raw_quotients", vec_json(r.raw_quotients)},
            {"richardson_value", r.richardson_value ? number(*r.richardson_value) : Json()},
            {"closed_form_value", r.closed_form_value ? number(*r.closed_form_value) : Json()},
            {"boundary_term", number(r.boundary_term)},
            {"bulk_term", number(r.bulk_term)},
            {"abs_error", number(r.abs_error)},
            {"rel_error", number(r.rel_error)},
            {"quotients_settle", r.quotients_settle},
            {"clamped_gradients", r.clamped_gradients},
            {"unchecked", r.unchecked}};
  if (r.certificate) j["certificate"] = to_json(*r.certificate);
  return j;
}

Json to_json(const SolverResult& r) {
  Json pieces = Json::array();
  for (const AffinePiece& p : r.phi.pieces()) pieces.push_back({{"slope", vec_json(p.slope)}, {"intercept", number(p.intercept)}});
  return {{"v", vec_json(r.v)},
          {"pieces", pieces},
          {"masses", vec_json(r.masses)},
          {"lambda", number(r.lambda)},
          {"residual", number(r.residual)},
          {"constraint_value", number(r.constraint_value)},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"trace", {{"residual", vec_json(r.residual_history)}, {"objective", vec_json(r.objective_history)}}}};
}

Json to_json(const VerificationReport& r) {
  return {{"masses", vec_json(r.masses)},
          {"tv_distance", number(r.tv_distance)},
          {"lambda", number(r.lambda)},
          {"constraint_value", number(r.constraint_value)},
          {"residual", number(r.residual)}};
}

SolverResult solver_result_from_json(const Json& j, const ValidatedMeasure& mu) {
  const Vec v = vec_from(field(j, "v"), "v");
  SolverResult r{v, phi_star_of(v, mu), {}, 0.0, 0.0, 0.0, 0, false, {}, {}};
  if (j.contains("masses")) r.masses = vec_from(j.at("masses"), "masses");
  if (j.contains("lambda")) r.lambda = to_number(j.at("lambda"), "lambda");
  if (j.contains("residual")) r.residual = to_number(j.at("residual"), "residual");
  if (j.contains("constraint_value")) r.constraint_value = to_number(j.at("constraint_value"), "constraint_value");
  if (j.contains("iterations")) r.iterations = j.at("iterations").get<std::size_t>();
  if (j.contains("converged")) r.converged = j.at("converged").get<bool>();
  return r;
}

void write_history_csv(std::ostream& out, const SolverResult& r) {
  out << "iteration,residual,objective\n";
  for (std::size_t i = 0; i < r.residual_history.size(); ++i)
    out << i << ',' << full(r.residual_history[i]) << ','
        << (i < r.objective_history.size() ? full(r.objective_history[i]) : std::string("")) << '\n';
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_text(ss.str());
  } catch (const Error& e) {
    throw Error(ErrorKind::parse_error, path + ": " + detail(e));
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::invalid_argument, "cannot write " + path);
  out << text;
}

}  // namespace epigauss::io
