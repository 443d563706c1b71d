#pragma once

#include <memory>
#include <vector>

#include "eldg/field.hpp"

namespace eldg {

// TVB minmod limiter on the background mesh.  Interface deviations are
// compared against forward/backward mean differences; a modified cell keeps
// its mean and falls back to its limited linear part.  m_param is the TVB
// constant M (M = 0 gives the plain TVD limiter).
DGField tvd_limit(const DGField& field, double m_param = 0.0);
void tvd_limit_inplace(DGField& field, double m_param = 0.0);

// Symmetric smoothness-increasing accuracy-conserving kernel: 2k+1 central
// B-splines of order k+1, scaled by the (uniform) cell width.  Reproduces
// polynomials of degree <= 2k.
struct SiacKernel {
  int degree = 0;                 // k of the solution space
  std::vector<double> weights;    // per B-spline, symmetric
  double support() const { return 0.5 * (3 * degree + 1); }
  double eval(double eta) const;  // kernel value on the reference scale

  static SiacKernel make(int degree);
};

// Central B-spline of the given order (degree order-1), support
// [-order/2, order/2].
double bspline_eval(int order, double y);

// Point-evaluable filtered solution: convolution of the DG field with the
// scaled kernel, integrated exactly piece-by-piece (kernel knots x mesh
// nodes).  Requires a periodic uniform mesh.
class SiacFiltered {
 public:
  SiacFiltered(DGField field);  // throws std::invalid_argument on nonuniform mesh
  double operator()(int comp, double x) const;
  const DGField& field() const { return field_; }

 private:
  DGField field_;
  SiacKernel kernel_;
  double h_;
};

inline SiacFiltered siac_filter(const DGField& field) { return SiacFiltered(field); }

}  // namespace eldg
