#include "swept/region.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace swept {

using nlohmann::json;

namespace {

json number_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_number(j.get<std::string>()).value();
  throw std::runtime_error("expected a number in region file");
}

json info_json(const ClauseInfo& info) {
  switch (info.kind) {
    case ClauseInfo::Kind::Segment:
      return {{"kind", "segment"},
              {"piece", info.piece},
              {"pair", {info.i, info.j}},
              {"span", {number_json(info.span.lo), number_json(info.span.hi)}}};
    case ClauseInfo::Kind::Notch:
      return {{"kind", "notch"}, {"at", {info.placement.x, info.placement.y}}};
    case ClauseInfo::Kind::None: break;
  }
  return nullptr;
}

ClauseInfo info_from(const json& j) {
  ClauseInfo info;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "segment") {
    info.kind = ClauseInfo::Kind::Segment;
    info.piece = j.at("piece").get<std::size_t>();
    info.i = j.at("pair").at(0).get<std::size_t>();
    info.j = j.at("pair").at(1).get<std::size_t>();
    info.span = {number_from(j.at("span").at(0)), number_from(j.at("span").at(1))};
  } else if (kind == "notch") {
    info.kind = ClauseInfo::Kind::Notch;
    info.placement = {number_from(j.at("at").at(0)), number_from(j.at("at").at(1))};
  } else {
    throw std::runtime_error("unknown clause kind '" + kind + "'");
  }
  return info;
}

json to_json(const Formula& f) {
  json j;
  if (f.kind() == Formula::Kind::Atom) {
    j["op"] = "cmp";
    j["cmp"] = to_string(f.atom().cmp);
    j["lhs"] = to_string(f.atom().lhs);
  } else {
    j["op"] = f.kind() == Formula::Kind::And ? "and" : "or";
    json args = json::array();
    for (const auto& k : f.children()) args.push_back(to_json(k));
    j["args"] = std::move(args);
  }
  if (f.info().kind != ClauseInfo::Kind::None) j["clause"] = info_json(f.info());
  return j;
}

Cmp cmp_from(const std::string& s) {
  if (s == "<=0") return Cmp::Le;
  if (s == "<0") return Cmp::Lt;
  if (s == ">=0") return Cmp::Ge;
  if (s == ">0") return Cmp::Gt;
  throw std::runtime_error("unknown comparison '" + s + "'");
}

Formula from_json(const json& j) {
  const std::string op = j.at("op").get<std::string>();
  Formula f;
  if (op == "cmp") {
    ParseOptions opts;
    opts.variables = {Var::X, Var::Y};
    opts.allow_clamp = true;
    f = Formula::atom(parse(j.at("lhs").get<std::string>(), opts), cmp_from(j.at("cmp").get<std::string>()));
  } else if (op == "and" || op == "or") {
    std::vector<Formula> kids;
    for (const auto& a : j.at("args")) kids.push_back(from_json(a));
    f = op == "and" ? Formula::all_of(std::move(kids)) : Formula::any_of(std::move(kids));
  } else {
    throw std::runtime_error("unknown formula op '" + op + "'");
  }
  if (j.contains("clause") && !j.at("clause").is_null()) f.set_info(info_from(j.at("clause")));
  return f;
}

// ---------------------------------------------------------------------------
// Text renderings. Linear atoms "y - r <= 0" and "x - c >= 0" are shown solved
// for the variable, the way hand-written safe-region formulas usually read.

enum class Dialect { Latex, Cas };

const char* relation(Cmp c, Dialect d) {
  const bool tex = d == Dialect::Latex;
  switch (c) {
    case Cmp::Le: return tex ? " \\le " : " <= ";
    case Cmp::Lt: return " < ";
    case Cmp::Ge: return tex ? " \\ge " : " >= ";
    case Cmp::Gt: return " > ";
  }
  return " ? ";
}

std::string render_expr(const Expr& e, Dialect d) { return d == Dialect::Latex ? to_latex(e) : to_mathematica(e); }

std::string render_atom(const Atom& a, Dialect d) {
  const Expr& e = a.lhs;
  const bool sum = e.op() == Expr::Op::Add || e.op() == Expr::Op::Sub;
  if (sum && e.operand(0).op() == Expr::Op::Var) {
    const Var v = e.operand(0).variable();
    const Expr& rest = e.operand(1);
    if (!rest.depends_on(v)) {
      const Expr rhs = e.op() == Expr::Op::Sub ? rest : -rest;
      return std::string(v == Var::X ? "x" : "y") + relation(a.cmp, d) + render_expr(rhs, d);
    }
  }
  if (e.op() == Expr::Op::Var) return std::string(e.variable() == Var::X ? "x" : "y") + relation(a.cmp, d) + "0";
  return render_expr(e, d) + relation(a.cmp, d) + "0";
}

std::string render(const Formula& f, Dialect d, int depth) {
  if (f.kind() == Formula::Kind::Atom) return render_atom(f.atom(), d);
  const bool conj = f.kind() == Formula::Kind::And;
  const std::string sep = d == Dialect::Latex ? (conj ? " \\land " : " \\lor ") : (conj ? " && " : " || ");
  if (f.children().empty()) return d == Dialect::Latex ? (conj ? "\\top" : "\\bot") : (conj ? "True" : "False");
  std::string s;
  for (std::size_t k = 0; k < f.children().size(); ++k) {
    if (k) s += sep;
    const Formula& c = f.children()[k];
    const bool wrap = c.kind() != Formula::Kind::Atom && c.children().size() > 1;
    const std::string body = render(c, d, depth + 1);
    if (wrap) s += d == Dialect::Latex ? "\\left(" + body + "\\right)" : "(" + body + ")";
    else s += body;
  }
  return s;
}

std::string latex_document(const Formula& f) {
  std::ostringstream os;
  os << "\\documentclass{article}\n"
     << "\\usepackage{amsmath}\n"
     << "\\usepackage[landscape,margin=1cm]{geometry}\n"
     << "\\begin{document}\n"
     << "\\begin{align*}\n"
     << "\\text{unsafe}(x, y) \\iff {}";
  if (f.kind() == Formula::Kind::Or && !f.children().empty()) {
    for (std::size_t k = 0; k < f.children().size(); ++k) {
      const Formula& c = f.children()[k];
      os << (k ? "\\\\\n  \\lor {} & " : " & ");
      const std::string body = render(c, Dialect::Latex, 1);
      if (c.kind() == Formula::Kind::Atom) os << body;
      else os << "\\left(" << body << "\\right)";
    }
  } else {
    os << " & " << render(f, Dialect::Latex, 0);
  }
  os << "\n\\end{align*}\n\\end{document}\n";
  return os.str();
}

void bounds(const Formula& f, double& x0, double& x1, double& y0, double& y1) {
  const ClauseInfo& info = f.info();
  if (info.kind == ClauseInfo::Kind::Notch) {
    x0 = std::min(x0, info.placement.x);
    x1 = std::max(x1, info.placement.x);
    y0 = std::min(y0, info.placement.y);
    y1 = std::max(y1, info.placement.y);
  }
  for (const auto& k : f.children()) bounds(k, x0, x1, y0, y1);
}

std::string cas_text(const Formula& f) {
  double x0 = kInf, x1 = -kInf, y0 = kInf, y1 = -kInf;
  bounds(f, x0, x1, y0, y1);
  if (!(x0 <= x1)) x0 = -10, x1 = 10, y0 = -10, y1 = 10;
  const double pad = 0.25 * std::max({x1 - x0, y1 - y0, 4.0});
  auto fmt = [](double v) { return to_mathematica(Expr::number(std::round(v * 100.0) / 100.0)); };
  std::ostringstream os;
  os << "unsafe[x_, y_] := " << render(expand_clamps(f), Dialect::Cas, 0) << ";\n";
  os << "RegionPlot[unsafe[x, y], {x, " << fmt(x0 - pad) << ", " << fmt(x1 + pad) << "}, {y, "
     << fmt(y0 - pad) << ", " << fmt(y1 + pad) << "}, PlotPoints -> 120]\n";
  return os.str();
}

}  // namespace

std::string serialize(const Formula& f, Format format) {
  switch (format) {
    case Format::Json: {
      json doc;
      doc["format"] = "swept-region/1";
      doc["formula"] = to_json(f);
      return doc.dump(2) + "\n";
    }
    case Format::Latex: return latex_document(f);
    case Format::Cas: return cas_text(f);
  }
  return {};
}

Formula parse_region_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("region file is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.contains("formula")) throw std::runtime_error("region file has no 'formula' field");
    return from_json(doc.at("formula"));
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed region file: ") + e.what());
  }
}

}  // namespace swept
