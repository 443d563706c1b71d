#pragma once

#include <vector>

namespace eldg {

struct DynamicElement;

// Legendre polynomial P_m and derivative on [-1,1], unnormalized (P_m(1)=1).
double legendre_eval(int m, double xi);
double legendre_deriv(int m, double xi);
// Fill out[0..k] with P_0(xi)..P_k(xi) (resp. derivatives).
void legendre_all(int k, double xi, double* out);
void legendre_deriv_all(int k, double xi, double* out);

// Gauss-Legendre rule on [-1,1]; exact for polynomials of degree <= 2n-1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int size() const { return static_cast<int>(nodes.size()); }
  // Cached; thread-safe after first use of a given n.
  static const QuadratureRule& gauss(int n);
};

// Volume rules use max(k+3, 5) points: exact for the polynomial integrands of
// the scheme and comfortably accurate for variable-coefficient ones.
inline int default_quad_points(int degree) { return degree + 3 > 5 ? degree + 3 : 5; }

// Modal Legendre basis of degree k on a reference cell.
struct ModalBasis {
  int degree = 0;
  // \int_{-1}^{1} P_m^2 = 2/(2m+1); scale by half the cell width for physical mass.
  double mode_mass(int m) const { return 2.0 / (2 * m + 1); }
  double eval(int mode, double xi) const;   // throws std::invalid_argument if mode > degree
  double deriv(int mode, double xi) const;
};

// Test function of a dynamic element: the terminal basis polynomial pulled
// back along the element's linear trajectories.  It stays the same polynomial
// in the frame that maps the moving interval onto the background cell.
double test_function_eval(const DynamicElement& elem, int mode, double x, double t);
// Spatial derivative at fixed t: reference derivative over half the interval width.
double test_function_dx(const DynamicElement& elem, int mode, double x, double t);

}  // namespace eldg
