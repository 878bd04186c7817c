#include "commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace swept::tool {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

Job with_overrides(Job job, const RunOptions& opts) {
  if (opts.grid) job.grid = *opts.grid;
  if (opts.margin) job.margin = opts.margin;
  if (!opts.formats.empty()) job.outputs = opts.formats;
  return job;
}

CompiledRegion compile_job(const Job& job, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  CompiledRegion r = compile_region(job.trajectory, job.polygon(), job.compile);
  out << job.name << ": " << count_clauses(r.formula, ClauseInfo::Kind::Segment) << " segment clauses, "
      << count_clauses(r.formula, ClauseInfo::Kind::Notch) << " notch clauses, " << r.formula.atom_count()
      << " atoms, compiled in " << std::fixed << std::setprecision(1) << elapsed_ms(t0) << " ms\n";
  out.unsetf(std::ios::floatfield);
  return r;
}

ValidationReport validate_job(const Job& job, const Formula& f, const RunOptions& opts, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const ValidationReport rep = validate(f, job.trajectory, job.polygon(), job.oracle_config());
  out << job.name << ": " << rep.summary() << " [" << std::fixed << std::setprecision(1) << elapsed_ms(t0)
      << " ms]\n";
  out.unsetf(std::ios::floatfield);
  if (opts.write) {
    const fs::path path = fs::path(opts.out_dir) / (job.name + ".validation.json");
    write_file(path, rep.to_json());
  }
  return rep;
}

}  // namespace

Grid parse_grid(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_number(item).value());
  if (v.size() != 5) throw std::invalid_argument("--grid expects x0,x1,y0,y1,step");
  Grid g{v[0], v[1], v[2], v[3], v[4]};
  g.validate();
  return g;
}

int run_compile(const std::string& job_path, const RunOptions& opts, std::ostream& out) {
  const Job job = with_overrides(load_job(job_path), opts);
  const CompiledRegion r = compile_job(job, out);
  for (Format f : job.outputs) {
    const fs::path path = fs::path(opts.out_dir) / (job.name + extension(f));
    write_file(path, serialize(r.formula, f));
    out << "wrote " << path.string() << "\n";
  }
  return 0;
}

int run_eval(const std::string& region_path, double x, double y, std::ostream& out) {
  const Formula f = parse_region_json(read_file(region_path));
  const bool unsafe = evaluate(f, {x, y});
  out << (unsafe ? "UNSAFE" : "SAFE") << "\n";
  return unsafe ? 1 : 0;
}

int run_validate(const std::string& job_path, const RunOptions& opts, std::ostream& out) {
  const Job job = with_overrides(load_job(job_path), opts);
  job.grid.validate();
  Formula f;
  if (opts.region) {
    f = parse_region_json(read_file(*opts.region));
  } else {
    f = compile_job(job, out).formula;
  }
  return validate_job(job, f, opts, out).pass() ? 0 : 1;
}

int run_plot(const std::string& job_path, const std::string& svg_path, const RunOptions& opts, std::ostream& out) {
  const Job job = with_overrides(load_job(job_path), opts);
  const CompiledRegion r = compile_job(job, out);
  write_file(svg_path, render_svg(job, r));
  out << "wrote " << svg_path << "\n";
  return 0;
}

int run_examples(const std::vector<std::string>& names, const RunOptions& opts, std::ostream& out) {
  std::vector<std::string> todo = names;
  if (todo.empty())
    for (const auto& b : builtin_jobs()) todo.emplace_back(b.name);
  int failures = 0;
  for (const auto& name : todo) {
    const BuiltinJob* found = nullptr;
    for (const auto& b : builtin_jobs())
      if (name == b.name) found = &b;
    if (!found) throw std::invalid_argument("no built-in example named '" + name + "'");
    const Job job = with_overrides(parse_job(found->text, found->name), opts);
    const CompiledRegion r = compile_job(job, out);
    if (opts.write) {
      for (Format f : job.outputs) write_file(fs::path(opts.out_dir) / (job.name + extension(f)), serialize(r.formula, f));
    }
    if (!validate_job(job, r.formula, opts, out).pass()) ++failures;
  }
  out << (failures ? "FAIL" : "PASS") << ": " << todo.size() - failures << "/" << todo.size()
      << " examples validated\n";
  return failures ? 1 : 0;
}

}  // namespace swept::tool
