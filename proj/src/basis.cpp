#include "eldg/basis.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "eldg/mesh.hpp"

namespace eldg {

double legendre_eval(int m, double xi) {
  if (m < 0) throw std::invalid_argument("legendre_eval: negative mode");
  double p0 = 1.0, p1 = xi;
  if (m == 0) return p0;
  if (m == 1) return p1;
  for (int j = 2; j <= m; ++j) {
    double p2 = ((2.0 * j - 1.0) * xi * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double legendre_deriv(int m, double xi) {
  if (m < 0) throw std::invalid_argument("legendre_deriv: negative mode");
  // P'_m = P'_{m-2} + (2m-1) P_{m-1}, stable at xi = +-1.
  double d0 = 0.0, d1 = 1.0;
  if (m == 0) return d0;
  if (m == 1) return d1;
  double p0 = 1.0, p1 = xi;
  for (int j = 2; j <= m; ++j) {
    double d2 = d0 + (2.0 * j - 1.0) * p1;
    double p2 = ((2.0 * j - 1.0) * xi * p1 - (j - 1.0) * p0) / j;
    d0 = d1;
    d1 = d2;
    p0 = p1;
    p1 = p2;
  }
  return d1;
}

void legendre_all(int k, double xi, double* out) {
  out[0] = 1.0;
  if (k == 0) return;
  out[1] = xi;
  for (int j = 2; j <= k; ++j)
    out[j] = ((2.0 * j - 1.0) * xi * out[j - 1] - (j - 1.0) * out[j - 2]) / j;
}

void legendre_deriv_all(int k, double xi, double* out) {
  out[0] = 0.0;
  if (k == 0) return;
  out[1] = 1.0;
  double p0 = 1.0, p1 = xi;
  for (int j = 2; j <= k; ++j) {
    out[j] = out[j - 2] + (2.0 * j - 1.0) * p1;
    double p2 = ((2.0 * j - 1.0) * xi * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
}

namespace {

QuadratureRule make_gauss(int n) {
  if (n < 1) throw std::invalid_argument("gauss rule needs n >= 1");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.nodes[i - 1] = -z;
    rule.nodes[n - i] = z;
    rule.weights[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - i] = rule.weights[i - 1];
  }
  return rule;
}

}  // namespace

const QuadratureRule& QuadratureRule::gauss(int n) {
  static std::mutex mu;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss(n)).first;
  return it->second;
}

double ModalBasis::eval(int mode, double xi) const {
  if (mode < 0 || mode > degree)
    throw std::invalid_argument("ModalBasis::eval: mode out of range");
  return legendre_eval(mode, xi);
}

double ModalBasis::deriv(int mode, double xi) const {
  if (mode < 0 || mode > degree)
    throw std::invalid_argument("ModalBasis::deriv: mode out of range");
  return legendre_deriv(mode, xi);
}

double test_function_eval(const DynamicElement& elem, int mode, double x, double t) {
  return legendre_eval(mode, elem.reference_coord_checked(x, t));
}

double test_function_dx(const DynamicElement& elem, int mode, double x, double t) {
  double xi = elem.reference_coord_checked(x, t);
  return legendre_deriv(mode, xi) * 2.0 / elem.width_at(t);
}

}  // namespace eldg
