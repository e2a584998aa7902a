#include "kpp/svg.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace kpp {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 600;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 30;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string render_svg(const std::vector<Series>& series, const PlotStyle& style) {
  if (series.empty()) throw std::invalid_argument("render_svg: no series");

  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || s.x.empty())
      throw std::invalid_argument("render_svg: empty or ragged series '" + s.name + "'");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double xv = s.x[i], yv = s.y[i];
      if (!std::isfinite(xv) || !std::isfinite(yv))
        throw std::invalid_argument("render_svg: non-finite data in series '" + s.name + "'");
      if (style.log_x && xv <= 0.0)
        throw std::invalid_argument("render_svg: non-positive x on log axis in series '" +
                                    s.name + "'");
      if (style.log_y && yv <= 0.0)
        throw std::invalid_argument("render_svg: non-positive y on log axis in series '" +
                                    s.name + "'");
      if (style.log_x) xv = std::log10(xv);
      if (style.log_y) yv = std::log10(yv);
      x_min = std::min(x_min, xv);
      x_max = std::max(x_max, xv);
      y_min = std::min(y_min, yv);
      y_max = std::max(y_max, yv);
    }
  }
  if (x_max == x_min) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  if (y_max == y_min) {
    y_min -= 0.5;
    y_max += 0.5;
  }

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto px = [&](double v) {
    if (style.log_x) v = std::log10(v);
    return kMarginLeft + (v - x_min) / (x_max - x_min) * plot_w;
  };
  auto py = [&](double v) {
    if (style.log_y) v = std::log10(v);
    return kMarginTop + plot_h - (v - y_min) / (y_max - y_min) * plot_h;
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\">\n";
  out += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  out += "<rect x=\"" + num(kMarginLeft) + "\" y=\"" + num(kMarginTop) + "\" width=\"" +
         num(plot_w) + "\" height=\"" + num(plot_h) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  if (!style.title.empty())
    out += "<text x=\"400\" y=\"25\" text-anchor=\"middle\" font-size=\"16\">" +
           style.title + "</text>\n";
  if (!style.x_label.empty())
    out += "<text x=\"400\" y=\"590\" text-anchor=\"middle\" font-size=\"13\">" +
           style.x_label + "</text>\n";
  if (!style.y_label.empty())
    out += "<text x=\"15\" y=\"300\" text-anchor=\"middle\" font-size=\"13\" "
           "transform=\"rotate(-90 15 300)\">" + style.y_label + "</text>\n";

  // Ticks: 6 per axis, in axis (possibly log) coordinates.
  for (int i = 0; i <= 5; ++i) {
    const double fx = x_min + (x_max - x_min) * i / 5.0;
    const double fy = y_min + (y_max - y_min) * i / 5.0;
    const double tx = kMarginLeft + plot_w * i / 5.0;
    const double ty = kMarginTop + plot_h - plot_h * i / 5.0;
    const double label_x = style.log_x ? std::pow(10.0, fx) : fx;
    const double label_y = style.log_y ? std::pow(10.0, fy) : fy;
    out += "<line x1=\"" + num(tx) + "\" y1=\"" + num(kMarginTop + plot_h) + "\" x2=\"" +
           num(tx) + "\" y2=\"" + num(kMarginTop + plot_h + 5) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(tx) + "\" y=\"" + num(kMarginTop + plot_h + 18) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + num(label_x) + "</text>\n";
    out += "<line x1=\"" + num(kMarginLeft - 5) + "\" y1=\"" + num(ty) + "\" x2=\"" +
           num(kMarginLeft) + "\" y2=\"" + num(ty) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(kMarginLeft - 8) + "\" y=\"" + num(ty + 4) +
           "\" text-anchor=\"end\" font-size=\"11\">" + num(label_y) + "</text>\n";
  }

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kColors[si % (sizeof(kColors) / sizeof(kColors[0]))];
    out += "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) out += " ";
      out += num(px(s.x[i])) + "," + num(py(s.y[i]));
    }
    out += "\"/>\n";
    // legend entry
    const double ly = kMarginTop + 15.0 + 18.0 * static_cast<double>(si);
    out += "<line x1=\"" + num(kWidth - kMarginRight - 150) + "\" y1=\"" + num(ly) +
           "\" x2=\"" + num(kWidth - kMarginRight - 120) + "\" y2=\"" + num(ly) +
           "\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + num(kWidth - kMarginRight - 114) + "\" y=\"" + num(ly + 4) +
           "\" font-size=\"11\">" + s.name + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace kpp
