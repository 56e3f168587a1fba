// Copyright 2026 The Fairlens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRLENS_STATS_H_
#define FAIRLENS_STATS_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace fairlens::stats {

// 2x2 contingency table, row-major: {{a, b}, {c, d}}.
struct Table2x2 {
  std::array<std::array<double, 2>, 2> observed{};

  double Total() const {
    return observed[0][0] + observed[0][1] + observed[1][0] + observed[1][1];
  }
  double Row(int r) const { return observed[r][0] + observed[r][1]; }
  double Col(int c) const { return observed[0][c] + observed[1][c]; }
  double Expected(int r, int c) const {
    const double n = Total();
    return n > 0 ? Row(r) * Col(c) / n : 0.0;
  }
  double MinExpected() const {
    double m = std::numeric_limits<double>::infinity();
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) m = std::min(m, Expected(r, c));
    }
    return m;
  }
};

struct ChiSquareResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int degrees_of_freedom = 1;
};

// Survival function of the chi-squared distribution with one degree of
// freedom: P(X > x) = erfc(sqrt(x / 2)).
inline double ChiSquare1Sf(double x) {
  if (x <= 0.0) return 1.0;
  return std::erfc(std::sqrt(x / 2.0));
}

// Pearson test of independence, no continuity correction. Cells with zero
// expectation contribute nothing (the margin is empty).
inline ChiSquareResult PearsonIndependence(const Table2x2& t) {
  ChiSquareResult out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double e = t.Expected(r, c);
      if (e <= 0.0) continue;
      const double diff = t.observed[r][c] - e;
      out.statistic += diff * diff / e;
    }
  }
  out.p_value = ChiSquare1Sf(out.statistic);
  return out;
}

}  // namespace fairlens::stats

#endif  // FAIRLENS_STATS_H_
