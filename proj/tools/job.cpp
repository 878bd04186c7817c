#include "job.hpp"

#include "json.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace swept::tool {

using nlohmann::ordered_json;
using Constants = std::map<std::string, Expr, std::less<>>;

namespace {

class Reader {
public:
  explicit Reader(const Constants& constants) : constants_(constants) {}

  Expr constant(const ordered_json& j, const std::string& field) const {
    try {
      if (j.is_number_integer()) return Expr(Number::integer(j.get<long long>()));
      // Decimal JSON numbers go through the expression parser so that 0.1 is
      // read as the exact rational 1/10.
      if (j.is_number()) return Expr(parse_number(j.dump(), &constants_));
      if (j.is_string()) return Expr(parse_number(j.get<std::string>(), &constants_));
    } catch (const ParseError& e) {
      throw JobError(field, e.what());
    } catch (const EvalError& e) {
      throw JobError(field, e.what());
    }
    throw JobError(field, "expected a number or a constant expression");
  }

  double number(const ordered_json& j, const std::string& field) const {
    return constant(j, field).constant().value();
  }

  double positive(const ordered_json& j, const std::string& field) const {
    const double v = number(j, field);
    if (!(v > 0.0) || !std::isfinite(v)) throw JobError(field, "must be a positive finite number");
    return v;
  }

  std::vector<double> numbers(const ordered_json& j, const std::string& field, std::size_t count) const {
    if (!j.is_array() || j.size() != count)
      throw JobError(field, "expected an array of " + std::to_string(count) + " numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(number(j[k], field + "[" + std::to_string(k) + "]"));
    return out;
  }

  Expr function(const ordered_json& j, const std::string& field, Var v) const {
    if (!j.is_string()) throw JobError(field, "expected an expression string");
    ParseOptions opts;
    opts.variables = {v};
    opts.constants = &constants_;
    try {
      Expr e = parse(j.get<std::string>(), opts);
      return v == Var::Y ? swap_variables(e) : e;
    } catch (const ParseError& e) {
      throw JobError(field, e.what());
    }
  }

private:
  const Constants& constants_;
};

const ordered_json& required(const ordered_json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw JobError(where.empty() ? key : where + "." + key, "missing");
  return j.at(key);
}

Polygon read_polygon(const ordered_json& j, const std::string& field, const Reader& rd) {
  if (!j.is_object()) throw JobError(field, "expected an object");
  const int sources = int(j.contains("vertices")) + int(j.contains("rectangle")) + int(j.contains("regular"));
  if (sources != 1) throw JobError(field, "give exactly one of 'vertices', 'rectangle' or 'regular'");
  try {
    if (j.contains("vertices")) {
      const auto& vs = j.at("vertices");
      if (!vs.is_array()) throw JobError(field + ".vertices", "expected an array of [x, y] pairs");
      std::vector<Point2> pts;
      for (std::size_t k = 0; k < vs.size(); ++k) {
        const auto xy = rd.numbers(vs[k], field + ".vertices[" + std::to_string(k) + "]", 2);
        pts.push_back({xy[0], xy[1]});
      }
      return Polygon::make(std::move(pts));
    }
    if (j.contains("rectangle")) {
      const auto& r = j.at("rectangle");
      const std::string f = field + ".rectangle";
      const double w = rd.positive(required(r, "half_width", f), f + ".half_width");
      const double h = rd.positive(required(r, "half_height", f), f + ".half_height");
      return Polygon::make({{w, h}, {-w, h}, {-w, -h}, {w, -h}});
    }
    const auto& r = j.at("regular");
    const std::string f = field + ".regular";
    const auto& nj = required(r, "n", f);
    if (!nj.is_number_integer()) throw JobError(f + ".n", "expected an integer");
    const int n = nj.get<int>();
    if (n < 3) throw JobError(f + ".n", "a regular polygon needs at least 3 sides");
    double apothem = 0.0;
    if (r.contains("apothem") == r.contains("circumradius"))
      throw JobError(f, "give exactly one of 'apothem' or 'circumradius'");
    if (r.contains("apothem")) apothem = rd.positive(r.at("apothem"), f + ".apothem");
    else apothem = rd.positive(r.at("circumradius"), f + ".circumradius") * std::cos(std::numbers::pi / n);
    const double rot = r.contains("rotation_deg") ? rd.number(r.at("rotation_deg"), f + ".rotation_deg") : 0.0;
    return Polygon::regular(n, apothem, rot * std::numbers::pi / 180.0);
  } catch (const GeometryError& e) {
    throw JobError(field, e.what());
  }
}

Trajectory read_trajectory(const ordered_json& j, const Reader& rd) {
  const std::string field = "trajectory";
  if (!j.is_object()) throw JobError(field, "expected an object");
  const auto& ps = required(j, "pieces", field);
  if (!ps.is_array() || ps.empty()) throw JobError(field + ".pieces", "expected a non-empty array");
  std::vector<Piece> pieces;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const std::string f = field + ".pieces[" + std::to_string(k) + "]";
    const auto& pj = ps[k];
    const std::string o = pj.contains("orientation") ? pj.at("orientation").get<std::string>() : "y(x)";
    Orientation orient;
    if (o == "y(x)") orient = Orientation::YofX;
    else if (o == "x(y)") orient = Orientation::XofY;
    else throw JobError(f + ".orientation", "expected \"y(x)\" or \"x(y)\"");
    const Expr e = rd.function(required(pj, "f", f), f + ".f", orient == Orientation::YofX ? Var::X : Var::Y);
    const auto d = rd.numbers(required(pj, "domain", f), f + ".domain", 2);
    try {
      pieces.emplace_back(orient, e, Interval{d[0], d[1]});
    } catch (const TrajectoryError& err) {
      throw JobError(f, err.what());
    } catch (const EvalError& err) {
      throw JobError(f, err.what());
    }
  }
  std::optional<Interval> declared;
  if (j.contains("domain")) {
    const auto d = rd.numbers(j.at("domain"), field + ".domain", 2);
    declared = Interval{d[0], d[1]};
  }
  try {
    return Trajectory::make(std::move(pieces), declared);
  } catch (const TrajectoryError& err) {
    throw JobError(field, err.what());
  }
}

}  // namespace

OracleConfig Job::oracle_config() const {
  OracleConfig cfg;
  cfg.grid = grid;
  cfg.trajectory_step = trajectory_step;
  cfg.margin = margin;
  return cfg;
}

std::optional<Format> format_from(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "latex" || s == "tex") return Format::Latex;
  if (s == "cas") return Format::Cas;
  return std::nullopt;
}

const char* extension(Format f) {
  switch (f) {
    case Format::Json: return ".region.json";
    case Format::Latex: return ".tex";
    case Format::Cas: return ".cas.txt";
  }
  return "";
}

Job parse_job(const std::string& text, const std::string& fallback_name) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw JobError("job", std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw JobError("job", "expected a JSON object");

  Constants constants;
  Reader rd(constants);
  if (j.contains("constants")) {
    const auto& cs = j.at("constants");
    if (!cs.is_object()) throw JobError("constants", "expected an object");
    for (const auto& [key, value] : cs.items()) {
      if (key == "x" || key == "y" || key == "pi" || key == "inf")
        throw JobError("constants." + key, "reserved name");
      constants[key] = rd.constant(value, "constants." + key);
    }
  }

  Job job;
  try {
    job.name = j.contains("name") ? j.at("name").get<std::string>() : fallback_name;
    if (job.name.empty() || job.name.find_first_of("/\\") != std::string::npos)
      throw JobError("name", "must be a plain non-empty file stem");
    job.object = read_polygon(required(j, "polygon", ""), "polygon", rd);
    if (j.contains("obstacle")) job.obstacle = read_polygon(j.at("obstacle"), "obstacle", rd);
    job.trajectory = read_trajectory(required(j, "trajectory", ""), rd);

    if (j.contains("linear_segments")) {
      const std::string m = j.at("linear_segments").get<std::string>();
      if (m == "corners") job.compile.linear = LinearSegments::Corners;
      else if (m == "hull") job.compile.linear = LinearSegments::Hull;
      else throw JobError("linear_segments", "expected \"corners\" or \"hull\"");
    }

    if (j.contains("validation")) {
      const auto& v = j.at("validation");
      if (v.contains("grid")) {
        const auto g = rd.numbers(v.at("grid"), "validation.grid", 5);
        job.grid = {g[0], g[1], g[2], g[3], g[4]};
      }
      if (v.contains("trajectory_step"))
        job.trajectory_step = rd.positive(v.at("trajectory_step"), "validation.trajectory_step");
      if (v.contains("margin")) {
        const double m = rd.number(v.at("margin"), "validation.margin");
        if (!(m >= 0.0)) throw JobError("validation.margin", "must be non-negative");
        job.margin = m;
      }
    }

    if (j.contains("outputs")) {
      job.outputs.clear();
      for (const auto& o : j.at("outputs")) {
        const auto f = format_from(o.get<std::string>());
        if (!f) throw JobError("outputs", "unknown format '" + o.get<std::string>() + "'");
        job.outputs.push_back(*f);
      }
    }

    if (j.contains("plot")) {
      const auto& p = j.at("plot");
      if (p.contains("window")) {
        const auto w = rd.numbers(p.at("window"), "plot.window", 4);
        job.plot = {w[0], w[1], w[2], w[3], job.plot.step};
      }
      if (p.contains("step")) job.plot.step = rd.positive(p.at("step"), "plot.step");
    } else {
      job.plot = {job.grid.x0, job.grid.x1, job.grid.y0, job.grid.y1, job.plot.step};
    }
  } catch (const ordered_json::exception& e) {
    throw JobError("job", std::string("unexpected value type: ") + e.what());
  }
  return job;
}

Job load_job(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    for (const auto& b : builtin_jobs())
      if (path == b.name) return parse_job(b.text, b.name);
  }
  std::ifstream in(path);
  if (!in) throw JobError("job", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_job(ss.str(), std::filesystem::path(path).stem().string());
}

}  // namespace swept::tool
