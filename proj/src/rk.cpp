#include "eldg/rk.hpp"

#include <cmath>
#include <stdexcept>

namespace eldg {

void ButcherTableau::validate() const {
  if (stages < 1 || static_cast<int>(b.size()) != stages ||
      static_cast<int>(c.size()) != stages ||
      static_cast<int>(a.size()) != stages * stages)
    throw std::invalid_argument("tableau: inconsistent sizes");
  if (c[0] != 0.0)
    throw std::invalid_argument("tableau: first stage must be at the step start");
  double bsum = 0.0;
  for (double w : b) bsum += w;
  if (std::abs(bsum - 1.0) > 1e-14)
    throw std::invalid_argument("tableau: weights must sum to 1");
  for (int l = 0; l < stages; ++l) {
    double rsum = 0.0;
    for (int m = 0; m < stages; ++m) {
      if (m >= l && a_at(l, m) != 0.0)
        throw std::invalid_argument("tableau: must be explicit");
      rsum += a_at(l, m);
    }
    if (std::abs(rsum - c[l]) > 1e-14)
      throw std::invalid_argument("tableau: row sums must equal abscissae");
  }
}

ButcherTableau ButcherTableau::forward_euler() {
  ButcherTableau t;
  t.stages = 1;
  t.a = {0.0};
  t.b = {1.0};
  t.c = {0.0};
  t.tag = "fe";
  return t;
}

ButcherTableau ButcherTableau::ssprk2() {
  ButcherTableau t;
  t.stages = 2;
  t.a = {0.0, 0.0, 1.0, 0.0};
  t.b = {0.5, 0.5};
  t.c = {0.0, 1.0};
  t.tag = "ssprk2";
  return t;
}

ButcherTableau ButcherTableau::rk2_midpoint() {
  ButcherTableau t;
  t.stages = 2;
  t.a = {0.0, 0.0, 0.5, 0.0};
  t.b = {0.0, 1.0};
  t.c = {0.0, 0.5};
  t.tag = "rk2";
  return t;
}

ButcherTableau ButcherTableau::rk4() {
  ButcherTableau t;
  t.stages = 4;
  t.a = {0.0, 0.0, 0.0, 0.0,  //
         0.5, 0.0, 0.0, 0.0,  //
         0.0, 0.5, 0.0, 0.0,  //
         0.0, 0.0, 1.0, 0.0};
  t.b = {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0};
  t.c = {0.0, 0.5, 0.5, 1.0};
  t.tag = "rk4";
  return t;
}

ButcherTableau ButcherTableau::from_tag(const std::string& tag) {
  if (tag == "fe") return forward_euler();
  if (tag == "ssprk2") return ssprk2();
  if (tag == "rk2") return rk2_midpoint();
  if (tag == "rk4") return rk4();
  throw std::invalid_argument("unsupported RK tableau: " + tag);
}

}  // namespace eldg
