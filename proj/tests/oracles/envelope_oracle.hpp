// Upper envelope of lines over the two-state belief segment, computed by
// scanning every pairwise crossing. Independent of the library's pruning.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle::envelope {

struct Line {
  double v0 = 0.0;  // value at b0 = 1 (all mass on state 0)
  double v1 = 0.0;  // value at b0 = 0
  double at(double b0) const { return b0 * v0 + (1.0 - b0) * v1; }
};

inline double upper(const std::vector<Line>& lines, double b0) {
  double m = -1e300;
  for (const auto& l : lines) m = std::max(m, l.at(b0));
  return m;
}

// Candidate points: both ends, every crossing inside the segment, and the
// midpoints between consecutive candidates.
inline std::vector<double> probe_points(const std::vector<Line>& lines) {
  std::vector<double> xs{0.0, 1.0};
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const double di = lines[i].v0 - lines[i].v1;
      const double dj = lines[j].v0 - lines[j].v1;
      if (di == dj) continue;
      const double x = (lines[j].v1 - lines[i].v1) / (di - dj);
      if (x > 0.0 && x < 1.0) xs.push_back(x);
    }
  }
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  for (std::size_t k = 0; k + 1 < n; ++k) xs.push_back(0.5 * (xs[k] + xs[k + 1]));
  std::sort(xs.begin(), xs.end());
  return xs;
}

// True for lines that are strictly above every other line on some open
// interval of the segment.
inline std::vector<bool> strictly_useful(const std::vector<Line>& lines) {
  std::vector<bool> useful(lines.size(), false);
  for (double x : probe_points(lines)) {
    std::size_t arg = 0;
    double best = -1e300, second = -1e300;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const double v = lines[i].at(x);
      if (v > best) {
        second = best;
        best = v;
        arg = i;
      } else if (v > second) {
        second = v;
      }
    }
    if (best > second + 1e-12) useful[arg] = true;
  }
  return useful;
}

}  // namespace oracle::envelope
