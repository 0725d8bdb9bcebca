#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace subgames {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
  double width() const { return hi - lo; }
};

// Wilson score interval for a binomial proportion. Behaves sanely near 0
// and 1, which is where the sensitivity experiment lives.
inline Interval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                double z = 1.959963984540054) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: no trials");
  const double n = double(trials);
  const double p = double(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {center - half, center + half};
}

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;  // natural-log intercept
  double r2 = 0.0;
};

// Ordinary least squares on (ln x, ln y). Needs >= 3 strictly positive points.
inline LogLogFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3)
    throw std::invalid_argument("fit_loglog_slope: need at least 3 points");
  double sx = 0, sy = 0;
  for (const auto& [x, y] : points) {
    if (x <= 0.0 || y <= 0.0)
      throw std::invalid_argument("fit_loglog_slope: points must be positive");
    sx += std::log(x);
    sy += std::log(y);
  }
  const double mx = sx / double(points.size());
  const double my = sy / double(points.size());
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    const double dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_loglog_slope: degenerate x values");
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

inline double mean(const std::vector<double>& xs) {
  double s = 0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / double(xs.size());
}

inline double sample_stddev(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double s = 0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / double(xs.size() - 1));
}

}  // namespace subgames
