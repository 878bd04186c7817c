#pragma once

#include "swept/oracle.hpp"
#include "swept/region.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace swept::tool {

// Error in a job file; the message starts with the offending field path.
class JobError : public std::runtime_error {
public:
  JobError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

private:
  std::string field_;
};

struct PlotWindow {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  double step = 0.05;
};

struct Job {
  std::string name;
  Polygon object = Polygon::regular(4, 1.0, 0.0);
  std::optional<Polygon> obstacle;
  Trajectory trajectory = Trajectory::make({Piece(Orientation::YofX, Expr::x(), {0.0, 1.0})});
  CompileOptions compile;
  Grid grid;
  double trajectory_step = 1e-2;
  std::optional<double> margin;
  std::vector<Format> outputs{Format::Json};
  PlotWindow plot;

  // The shape the formula is compiled for: the object itself, or the object
  // inflated by the obstacle so the obstacle can be treated as a point.
  Polygon polygon() const { return obstacle ? inflate(object, *obstacle) : object; }
  OracleConfig oracle_config() const;
};

Job parse_job(const std::string& text, const std::string& fallback_name = "job");
Job load_job(const std::string& path);

std::optional<Format> format_from(const std::string& s);
const char* extension(Format f);

struct BuiltinJob {
  const char* name;
  const char* text;
};
const std::vector<BuiltinJob>& builtin_jobs();

}  // namespace swept::tool
