#pragma once

#include "job.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace swept::tool {

struct RunOptions {
  std::string out_dir = ".";
  std::optional<Grid> grid;
  std::optional<double> margin;
  std::vector<Format> formats;  // overrides the job's outputs when non-empty
  std::optional<std::string> region;  // validate this formula instead of compiling
  bool write = true;
};

// Exit codes: 0 success or SAFE or PASS, 1 UNSAFE or FAIL. Errors throw.
int run_compile(const std::string& job_path, const RunOptions& opts, std::ostream& out);
int run_eval(const std::string& region_path, double x, double y, std::ostream& out);
int run_validate(const std::string& job_path, const RunOptions& opts, std::ostream& out);
int run_plot(const std::string& job_path, const std::string& svg_path, const RunOptions& opts, std::ostream& out);
int run_examples(const std::vector<std::string>& names, const RunOptions& opts, std::ostream& out);

std::string render_svg(const Job& job, const CompiledRegion& region);

// "x0,x1,y0,y1,step"
Grid parse_grid(const std::string& text);

}  // namespace swept::tool
