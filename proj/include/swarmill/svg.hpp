#pragma once

// Presentational SVG output: the phase-diagram heat grid with a fixed
// macrostate color legend, and trajectory replay as a strip of frames.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "swarmill/classifier.hpp"
#include "swarmill/dynamics.hpp"
#include "swarmill/io.hpp"
#include "swarmill/sweep.hpp"

namespace swarmill {

inline const char* macrostate_color(Macrostate m) {
  switch (m) {
    case Macrostate::kMilling: return "#2ca02c";
    case Macrostate::kPulsingMill: return "#17becf";
    case Macrostate::kEllipsoidal: return "#ff7f0e";
    case Macrostate::kUncharacterized: return "#d62728";
    case Macrostate::kCollapsingCircle: return "#9467bd";
    case Macrostate::kSeparatedGroups: return "#1f77b4";
  }
  return "#7f7f7f";
}

inline constexpr const char* kFailedCellColor = "#7f7f7f";

namespace svgdetail {

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

inline void text(std::ostringstream& out, double x, double y, const std::string& s,
                 const char* anchor = "middle", int size = 11) {
  out << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << size
      << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << s << "</text>\n";
}

}  // namespace svgdetail

inline std::string phase_svg(const PhaseDiagram& diagram) {
  const int nx = diagram.nx(), ny = diagram.ny();
  const double cell = 22.0, margin_l = 70.0, margin_b = 55.0, margin_t = 30.0, margin_r = 150.0;
  const double width = margin_l + nx * cell + margin_r;
  const double height = margin_t + ny * cell + margin_b;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Cells; y axis grows upward (last grid row at the top).
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const CellResult& c = diagram.at(ix, iy);
      const char* fill = c.all_failed ? kFailedCellColor : macrostate_color(c.label);
      const double x = margin_l + ix * cell;
      const double y = margin_t + (ny - 1 - iy) * cell;
      out << "<rect x=\"" << svgdetail::num(x) << "\" y=\"" << svgdetail::num(y) << "\" width=\""
          << cell << "\" height=\"" << cell << "\" fill=\"" << fill
          << "\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
    }
  }

  // Axis labels: every few ticks to avoid clutter.
  const auto& xs = diagram.spec.axis_x.values;
  const auto& ys = diagram.spec.axis_y.values;
  const int x_step = std::max(1, nx / 10), y_step = std::max(1, ny / 10);
  for (int ix = 0; ix < nx; ix += x_step)
    svgdetail::text(out, margin_l + (ix + 0.5) * cell, margin_t + ny * cell + 16, svgdetail::num(xs[ix]));
  for (int iy = 0; iy < ny; iy += y_step)
    svgdetail::text(out, margin_l - 8, margin_t + (ny - 1 - iy + 0.65) * cell, svgdetail::num(ys[iy]),
                    "end");
  svgdetail::text(out, margin_l + nx * cell / 2.0, margin_t + ny * cell + 38,
                  sweep_param_name(diagram.spec.axis_x.param), "middle", 13);
  svgdetail::text(out, 16, margin_t + ny * cell / 2.0, sweep_param_name(diagram.spec.axis_y.param),
                  "middle", 13);

  // Legend with the fixed color order.
  const Macrostate order[] = {Macrostate::kMilling,          Macrostate::kPulsingMill,
                              Macrostate::kEllipsoidal,      Macrostate::kUncharacterized,
                              Macrostate::kCollapsingCircle, Macrostate::kSeparatedGroups};
  double ly = margin_t;
  const double lx = margin_l + nx * cell + 16;
  for (Macrostate m : order) {
    out << "<rect x=\"" << lx << "\" y=\"" << ly << "\" width=\"14\" height=\"14\" fill=\""
        << macrostate_color(m) << "\"/>\n";
    svgdetail::text(out, lx + 20, ly + 11,
                    std::string(1, macrostate_code(m)) + " " + macrostate_name(m), "start");
    ly += 20;
  }
  out << "<rect x=\"" << lx << "\" y=\"" << ly << "\" width=\"14\" height=\"14\" fill=\""
      << kFailedCellColor << "\"/>\n";
  svgdetail::text(out, lx + 20, ly + 11, "X failed", "start");

  out << "</svg>\n";
  return out.str();
}

/// Renders evenly spaced trajectory samples as a horizontal strip of frames,
/// agents drawn as dots with heading ticks.
inline std::string replay_svg(const Trajectory& traj, int frames = 8) {
  frames = std::max(1, std::min<int>(frames, static_cast<int>(traj.samples.size())));
  const double panel = 180.0, pad = 10.0, caption = 18.0;
  const double width = frames * (panel + pad) + pad;
  const double height = panel + 2 * pad + caption;

  // Common bounding box over the rendered frames.
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  std::vector<std::size_t> picks;
  for (int f = 0; f < frames; ++f) {
    const std::size_t idx =
        frames == 1 ? traj.samples.size() - 1
                    : static_cast<std::size_t>(std::llround(static_cast<double>(f) *
                                                            (traj.samples.size() - 1) / (frames - 1)));
    picks.push_back(idx);
    for (const auto& a : traj.samples[idx].state.agents) {
      lo_x = std::min(lo_x, a.x);
      hi_x = std::max(hi_x, a.x);
      lo_y = std::min(lo_y, a.y);
      hi_y = std::max(hi_y, a.y);
    }
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
  const double scale = (panel - 24.0) / span;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int f = 0; f < frames; ++f) {
    const auto& sample = traj.samples[picks[f]];
    const double ox = pad + f * (panel + pad);
    out << "<rect x=\"" << ox << "\" y=\"" << pad << "\" width=\"" << panel << "\" height=\"" << panel
        << "\" fill=\"#fafafa\" stroke=\"#cccccc\"/>\n";
    for (const auto& a : sample.state.agents) {
      const double px = ox + panel / 2.0 + (a.x - cx) * scale;
      const double py = pad + panel / 2.0 - (a.y - cy) * scale;
      const double hx = px + 6.0 * std::cos(a.theta);
      const double hy = py - 6.0 * std::sin(a.theta);
      out << "<line x1=\"" << svgdetail::num(px) << "\" y1=\"" << svgdetail::num(py) << "\" x2=\""
          << svgdetail::num(hx) << "\" y2=\"" << svgdetail::num(hy)
          << "\" stroke=\"#1f77b4\" stroke-width=\"1\"/>\n";
      out << "<circle cx=\"" << svgdetail::num(px) << "\" cy=\"" << svgdetail::num(py)
          << "\" r=\"2.2\" fill=\"#d62728\"/>\n";
    }
    char label[48];
    std::snprintf(label, sizeof(label), "t = %.3g", sample.t);
    svgdetail::text(out, ox + panel / 2.0, pad + panel + caption - 4, label);
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace swarmill
