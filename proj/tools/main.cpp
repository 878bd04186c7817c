#include "commands.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace swept::tool;

int main(int argc, char** argv) {
  CLI::App app{"Compile a polygon moving along a planar trajectory into an explicit unsafe-region formula"};
  app.require_subcommand(1);

  RunOptions opts;
  std::string grid_text;
  std::vector<std::string> formats;
  double margin = -1.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("-d,--out-dir", opts.out_dir, "Directory for written artifacts");
    cmd->add_option("--grid", grid_text, "Validation grid x0,x1,y0,y1,step");
    cmd->add_option("--margin", margin, "Boundary margin for completeness checks")->check(CLI::NonNegativeNumber);
  };

  std::string job, region_file, svg_out;
  double x = 0.0, y = 0.0;

  auto* compile = app.add_subcommand("compile", "Compile a job file into region artifacts");
  compile->add_option("job", job, "Job file or built-in example name")->required();
  compile->add_option("--format", formats, "Output formats: json, latex, cas (repeatable)")
      ->check(CLI::IsMember({"json", "latex", "tex", "cas"}));
  add_common(compile);

  auto* evalc = app.add_subcommand("eval", "Evaluate a compiled region at one obstacle position");
  evalc->add_option("region", region_file, "Region file (.region.json)")->required();
  evalc->add_option("x", x, "Obstacle x")->required();
  evalc->add_option("y", y, "Obstacle y")->required();

  auto* validatec = app.add_subcommand("validate", "Check the compiled formula against the sampling oracle");
  validatec->add_option("job", job, "Job file or built-in example name")->required();
  validatec->add_option("--region", region_file, "Validate this region file instead of compiling the job");
  add_common(validatec);

  auto* plot = app.add_subcommand("plot", "Render the unsafe region as SVG");
  plot->add_option("job", job, "Job file or built-in example name")->required();
  plot->add_option("-o,--output", svg_out, "SVG file to write")->required();
  add_common(plot);

  std::vector<std::string> names;
  bool all = false, list = false;
  auto* examples = app.add_subcommand("examples", "Compile and validate the built-in examples");
  examples->add_option("names", names, "Examples to run");
  examples->add_flag("--all", all, "Run every built-in example");
  examples->add_flag("--list", list, "List the built-in examples");
  add_common(examples);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!grid_text.empty()) opts.grid = parse_grid(grid_text);
    if (margin >= 0.0) opts.margin = margin;
    for (const auto& f : formats) opts.formats.push_back(*format_from(f));

    if (*compile) return run_compile(job, opts, std::cout);
    if (*evalc) return run_eval(region_file, x, y, std::cout);
    if (*validatec) {
      if (!region_file.empty()) opts.region = region_file;
      return run_validate(job, opts, std::cout);
    }
    if (*plot) return run_plot(job, svg_out, opts, std::cout);
    if (*examples) {
      if (list) {
        for (const auto& b : builtin_jobs()) std::cout << b.name << "\n";
        return 0;
      }
      if (!all && names.empty()) throw std::invalid_argument("name an example or pass --all");
      opts.write = examples->count("--out-dir") > 0;
      return run_examples(all ? std::vector<std::string>{} : names, opts, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
