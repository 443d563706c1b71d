#pragma once

#include <string>
#include <vector>

namespace eldg {

// Explicit Runge-Kutta tableau.  First abscissa must be zero; weights sum to
// one and row sums of a equal c (validated at construction).
struct ButcherTableau {
  int stages = 0;
  std::vector<double> a;  // row-major, stages x stages, strictly lower triangular
  std::vector<double> b;
  std::vector<double> c;
  std::string tag;

  double a_at(int l, int m) const { return a[static_cast<size_t>(l) * stages + m]; }
  void validate() const;  // throws std::invalid_argument

  static ButcherTableau forward_euler();
  static ButcherTableau ssprk2();
  static ButcherTableau rk2_midpoint();
  static ButcherTableau rk4();
  // Accepts fe | ssprk2 | rk2 | rk4; throws std::invalid_argument otherwise.
  static ButcherTableau from_tag(const std::string& tag);
};

}  // namespace eldg
