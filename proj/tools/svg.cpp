#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace mmspectra::svg {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 55;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) lo = 0, hi = 1;
    if (hi - lo < 1e-300) {
      const double pad = std::max(std::abs(lo) * 0.1, 0.5);
      lo -= pad;
      hi += pad;
    }
  }
};

class Frame {
 public:
  Frame(Range x, Range y) : x_(x), y_(y) {}

  double px(double v) const { return kLeft + (v - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight); }
  double py(double v) const { return kHeight - kBottom - (v - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom); }

  void open(std::ostringstream& os, const Axes& axes) const {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << escape(axes.title)
       << "</text>\n";
    const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
    os << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\"" << y0 - y1
       << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int i = 0; i <= 4; ++i) {
      const double xv = x_.lo + (x_.hi - x_.lo) * i / 4.0, yv = y_.lo + (y_.hi - y_.lo) * i / 4.0;
      os << "<text x=\"" << num(px(xv)) << "\" y=\"" << y0 + 15 << "\" text-anchor=\"middle\">" << tick_label(xv)
         << "</text>\n";
      os << "<text x=\"" << x0 - 6 << "\" y=\"" << num(py(yv) + 4) << "\" text-anchor=\"end\">" << tick_label(yv)
         << "</text>\n";
    }
    os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
       << escape(axes.x_label) << "</text>\n";
    os << "<text transform=\"translate(16," << (y0 + y1) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
       << escape(axes.y_label) << "</text>\n";
  }

  static void legend(std::ostringstream& os, std::size_t i, const std::string& label, const char* colour) {
    const double y = kTop + 10 + 16 * static_cast<double>(i);
    os << "<rect x=\"" << kWidth - kRight + 12 << "\" y=\"" << y - 8 << "\" width=\"10\" height=\"10\" fill=\""
       << colour << "\"/>\n<text x=\"" << kWidth - kRight + 28 << "\" y=\"" << y + 1 << "\">" << escape(label)
       << "</text>\n";
  }

 private:
  Range x_, y_;
};

}  // namespace

std::string line_plot(const std::vector<Series>& series, const Axes& axes) {
  Range xr, yr;
  for (const auto& s : series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
    for (double v : s.lower) yr.add(v);
    for (double v : s.upper) yr.add(v);
  }
  xr.finish();
  yr.finish();
  const Frame f(xr, yr);
  std::ostringstream os;
  f.open(os, axes);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* colour = kPalette[i % std::size(kPalette)];
    if (!s.lower.empty() && s.lower.size() == s.x.size() && s.upper.size() == s.x.size()) {
      os << "<polygon fill=\"" << colour << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
      for (std::size_t k = 0; k < s.x.size(); ++k) os << num(f.px(s.x[k])) << ',' << num(f.py(s.upper[k])) << ' ';
      for (std::size_t k = s.x.size(); k-- > 0;) os << num(f.px(s.x[k])) << ',' << num(f.py(s.lower[k])) << ' ';
      os << "\"/>\n";
    }
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (s.steps && k > 0) os << num(f.px(s.x[k])) << ',' << num(f.py(s.y[k - 1])) << ' ';
      os << num(f.px(s.x[k])) << ',' << num(f.py(s.y[k])) << ' ';
    }
    os << "\"/>\n";
    if (!s.label.empty()) Frame::legend(os, i, s.label, colour);
  }
  os << "</svg>\n";
  return os.str();
}

std::string scatter(const std::vector<double>& x, const std::vector<double>& y, const std::vector<int>& group,
                    const std::vector<std::string>& names, const Axes& axes) {
  Range xr, yr;
  for (double v : x) xr.add(v);
  for (double v : y) yr.add(v);
  xr.finish();
  yr.finish();
  const Frame f(xr, yr);
  std::ostringstream os;
  f.open(os, axes);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int g = i < group.size() ? group[i] : 0;
    os << "<circle cx=\"" << num(f.px(x[i])) << "\" cy=\"" << num(f.py(y[i])) << "\" r=\"4\" fill=\""
       << kPalette[static_cast<std::size_t>(std::max(g, 0)) % std::size(kPalette)] << "\"/>\n";
  }
  for (std::size_t g = 0; g < names.size(); ++g) Frame::legend(os, g, names[g], kPalette[g % std::size(kPalette)]);
  os << "</svg>\n";
  return os.str();
}

std::string value_scatter(const std::vector<double>& x, const std::vector<double>& y,
                          const std::vector<double>& value, const std::vector<bool>& highlight,
                          const Axes& axes) {
  Range xr, yr;
  for (double v : x) xr.add(v);
  for (double v : y) yr.add(v);
  xr.finish();
  yr.finish();
  double scale = 0.0;
  for (double v : value) scale = std::max(scale, std::abs(v));
  if (scale <= 0.0) scale = 1.0;
  const Frame f(xr, yr);
  std::ostringstream os;
  f.open(os, axes);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = std::clamp(value[i] / scale, -1.0, 1.0);
    // blue (negative) through white to red (positive)
    const int r = t > 0 ? 255 : static_cast<int>(255 * (1 + t));
    const int b = t < 0 ? 255 : static_cast<int>(255 * (1 - t));
    const int g = static_cast<int>(255 * (1 - std::abs(t)));
    char colour[16];
    std::snprintf(colour, sizeof(colour), "#%02x%02x%02x", r, g, b);
    os << "<circle cx=\"" << num(f.px(x[i])) << "\" cy=\"" << num(f.py(y[i])) << "\" r=\"4\" fill=\"" << colour
       << "\" stroke=\"#333\" stroke-width=\"0.5\"/>\n";
    if (i < highlight.size() && highlight[i]) {
      os << "<circle cx=\"" << num(f.px(x[i])) << "\" cy=\"" << num(f.py(y[i]))
         << "\" r=\"7\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace mmspectra::svg
