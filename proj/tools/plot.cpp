#include "commands.hpp"

#include "swept/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace swept::tool {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

}  // namespace

std::string render_svg(const Job& job, const CompiledRegion& region) {
  const PlotWindow& w = job.plot;
  if (!(w.x1 > w.x0) || !(w.y1 > w.y0) || !(w.step > 0.0)) throw std::invalid_argument("plot window is empty");
  const double scale = 900.0 / (w.x1 - w.x0);
  const double width = 900.0;
  const double height = (w.y1 - w.y0) * scale;
  auto px = [&](double x) { return (x - w.x0) * scale; };
  auto py = [&](double y) { return (w.y1 - y) * scale; };

  const auto nx = static_cast<std::size_t>(std::ceil((w.x1 - w.x0) / w.step));
  const auto ny = static_cast<std::size_t>(std::ceil((w.y1 - w.y0) / w.step));
  std::vector<std::uint8_t> cells(nx * ny);
  parallel_for(ny, [&](std::size_t r0, std::size_t r1) {
    for (std::size_t iy = r0; iy < r1; ++iy)
      for (std::size_t ix = 0; ix < nx; ++ix)
        cells[iy * nx + ix] = evaluate(region.formula, {w.x0 + (ix + 0.5) * w.step, w.y0 + (iy + 0.5) * w.step});
  });

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
     << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";
  os << "<title>" << job.name << ": unsafe region</title>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#dff0d8\"/>\n";
  os << "<g fill=\"#e8998d\" shape-rendering=\"crispEdges\">\n";
  const double cell = w.step * scale;
  for (std::size_t iy = 0; iy < ny; ++iy) {
    std::size_t ix = 0;
    while (ix < nx) {
      if (!cells[iy * nx + ix]) {
        ++ix;
        continue;
      }
      const std::size_t start = ix;
      while (ix < nx && cells[iy * nx + ix]) ++ix;
      const double y_top = w.y0 + (iy + 1) * w.step;
      os << "<rect x=\"" << fmt(px(w.x0 + start * w.step)) << "\" y=\"" << fmt(py(y_top)) << "\" width=\""
         << fmt((ix - start) * cell) << "\" height=\"" << fmt(cell) << "\"/>\n";
    }
  }
  os << "</g>\n";

  // Polygon footprints at every finite transition placement.
  const Polygon poly = job.polygon();
  os << "<g fill=\"none\" stroke=\"#8b1e1e\" stroke-width=\"1.2\">\n";
  for (const auto& tp : region.transitions) {
    if (!tp.finite()) continue;
    os << "<polygon points=\"";
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const Point2 v = tp.at + poly.vertex(k);
      os << (k ? " " : "") << fmt(px(v.x)) << ',' << fmt(py(v.y));
    }
    os << "\"/>\n";
  }
  os << "</g>\n";

  Grid window{w.x0, w.x1, w.y0, w.y1, w.step};
  const CenterSamples path = sample_centers(job.trajectory, Polygon::make({{0, 0}, {1e-9, 0}, {0, 1e-9}}),
                                            w.step / 2, window);
  os << "<polyline fill=\"none\" stroke=\"#1f3a93\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\" points=\"";
  bool first = true;
  for (const auto& c : path.centers) {
    if (!std::isfinite(c.x) || !std::isfinite(c.y)) continue;
    os << (first ? "" : " ") << fmt(px(c.x)) << ',' << fmt(py(c.y));
    first = false;
  }
  os << "\"/>\n";

  os << "<rect width=\"" << fmt(width) << "\" height=\"" << fmt(height)
     << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">\n";
  os << "<text x=\"4\" y=\"" << fmt(height - 4) << "\">(" << format_double(w.x0) << ", " << format_double(w.y0)
     << ")</text>\n";
  os << "<text x=\"" << fmt(width - 4) << "\" y=\"14\" text-anchor=\"end\">(" << format_double(w.x1) << ", "
     << format_double(w.y1) << ")</text>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace swept::tool
