#pragma once

#include <string>
#include <vector>

namespace mmspectra::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  // Filled band drawn under the line when both are set.
  std::vector<double> lower;
  std::vector<double> upper;
  bool steps = false;  // right-continuous step function through (x, y)
};

struct Axes {
  std::string title;
  std::string x_label;
  std::string y_label;
};

std::string line_plot(const std::vector<Series>& series, const Axes& axes);

// Points coloured by group index; `names` labels the legend.
std::string scatter(const std::vector<double>& x, const std::vector<double>& y, const std::vector<int>& group,
                    const std::vector<std::string>& names, const Axes& axes);

// Points coloured on a diverging scale by `value`; highlighted ones get a ring.
std::string value_scatter(const std::vector<double>& x, const std::vector<double>& y,
                          const std::vector<double>& value, const std::vector<bool>& highlight,
                          const Axes& axes);

}  // namespace mmspectra::svg
