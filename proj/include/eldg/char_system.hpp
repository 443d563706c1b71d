#pragma once

#include <functional>
#include <memory>

namespace eldg {

inline constexpr int kMaxComp = 4;

// Coefficient data of a linear hyperbolic system U_t + (A(x,t)U)_x = F:
// the matrix, its eigenvalues (one characteristic family per component), and
// a globally continuous approximate eigenvector pair R_p, R_p^{-1} whose
// product is the identity everywhere.  Derivatives of the pair feed the
// derivative-correction volume term.  All writers fill row-major buffers of
// size n_comp x n_comp (or n_comp for vectors).
struct CharSystem {
  int n_comp = 1;
  bool autonomous = true;             // no explicit time dependence
  bool constant_coefficients = false; // no space dependence either

  std::function<void(double x, double t, double* A)> matrix;
  std::function<void(double x, double t, double* lam)> eigenvalues;
  std::function<void(double x, double t, double* R)> right;
  std::function<void(double x, double t, double* Rinv)> left;
  std::function<void(double x, double t, double* dR)> right_dx;
  std::function<void(double x, double t, double* dRinv)> left_dx;
  std::function<void(double x, double t, double* F)> source;  // may be empty

  bool has_source() const { return static_cast<bool>(source); }
};

using ScalarFn = std::function<double(double)>;

// 1D wave system u_tt = (a(x)^2 u_x)_x + f in the variables (u_t, u_x):
//   A = [[0, -a^2], [-1, 0]],  lambda = (a, -a).
// The consistent pair is built from ap (defaults to a); ap must be bounded
// away from zero on [lo, hi] or construction throws
// singular_decomposition_error.  source_f, when given, is the f(x,t) row.
CharSystem wave_system_from(ScalarFn a, ScalarFn a_dx, double lo, double hi,
                            std::function<double(double, double)> source_f = nullptr,
                            ScalarFn ap = nullptr, ScalarFn ap_dx = nullptr);

// Scalar transport u_t + (a(x,t)u)_x = 0 as a one-family system.
CharSystem scalar_system(std::function<double(double, double)> a);

// Constant-coefficient system given explicitly with its eigen data.
CharSystem constant_system(int n, const double* A, const double* lam,
                           const double* R, const double* Rinv);

// x-sweep of the 2D wave system in (u_t, u_x, u_y): eigenvalues (a, -a, 0);
// the zero-speed family carries u_y unchanged.  Same structure for the
// y-sweep with (b, u_y) in place of (a, u_x).
CharSystem wave3_x_system(ScalarFn a, ScalarFn a_dx, double lo, double hi);
CharSystem wave3_y_system(ScalarFn b, ScalarFn b_dx, double lo, double hi);

}  // namespace eldg
