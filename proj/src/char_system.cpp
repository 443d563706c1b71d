#include "eldg/char_system.hpp"

#include <cmath>
#include <cstring>
#include <vector>

#include "eldg/errors.hpp"

namespace eldg {

namespace {

void check_nonvanishing(const ScalarFn& ap, double lo, double hi) {
  const int samples = 512;
  for (int i = 0; i <= samples; ++i) {
    double x = lo + (hi - lo) * i / samples;
    if (std::abs(ap(x)) < 1e-12)
      throw singular_decomposition_error(
          "consistent pair degenerates: a_p vanishes near x=" + std::to_string(x));
  }
}

}  // namespace

CharSystem wave_system_from(ScalarFn a, ScalarFn a_dx, double lo, double hi,
                            std::function<double(double, double)> source_f,
                            ScalarFn ap, ScalarFn ap_dx) {
  if (!ap) {
    ap = a;
    ap_dx = a_dx;
  }
  check_nonvanishing(a, lo, hi);
  check_nonvanishing(ap, lo, hi);

  CharSystem sys;
  sys.n_comp = 2;
  sys.autonomous = !source_f;  // A is time-independent; only the source sees t
  sys.matrix = [a](double x, double, double* A) {
    double av = a(x);
    A[0] = 0.0;
    A[1] = -av * av;
    A[2] = -1.0;
    A[3] = 0.0;
  };
  sys.eigenvalues = [a](double x, double, double* lam) {
    double av = a(x);
    lam[0] = av;
    lam[1] = -av;
  };
  sys.right = [ap](double x, double, double* R) {
    double p = ap(x);
    R[0] = -p;
    R[1] = p;
    R[2] = 1.0;
    R[3] = 1.0;
  };
  sys.left = [ap](double x, double, double* Ri) {
    double p = ap(x);
    Ri[0] = -0.5 / p;
    Ri[1] = 0.5;
    Ri[2] = 0.5 / p;
    Ri[3] = 0.5;
  };
  sys.right_dx = [ap_dx](double x, double, double* dR) {
    double dp = ap_dx(x);
    dR[0] = -dp;
    dR[1] = dp;
    dR[2] = 0.0;
    dR[3] = 0.0;
  };
  sys.left_dx = [ap, ap_dx](double x, double, double* dRi) {
    double p = ap(x), dp = ap_dx(x);
    double v = 0.5 * dp / (p * p);
    dRi[0] = v;
    dRi[1] = 0.0;
    dRi[2] = -v;
    dRi[3] = 0.0;
  };
  if (source_f) {
    sys.source = [source_f](double x, double t, double* F) {
      F[0] = source_f(x, t);
      F[1] = 0.0;
    };
  }
  return sys;
}

CharSystem scalar_system(std::function<double(double, double)> a) {
  CharSystem sys;
  sys.n_comp = 1;
  sys.autonomous = false;
  sys.matrix = [a](double x, double t, double* A) { A[0] = a(x, t); };
  sys.eigenvalues = [a](double x, double t, double* lam) { lam[0] = a(x, t); };
  sys.right = [](double, double, double* R) { R[0] = 1.0; };
  sys.left = [](double, double, double* Ri) { Ri[0] = 1.0; };
  sys.right_dx = [](double, double, double* dR) { dR[0] = 0.0; };
  sys.left_dx = [](double, double, double* dRi) { dRi[0] = 0.0; };
  return sys;
}

CharSystem constant_system(int n, const double* A, const double* lam,
                           const double* R, const double* Rinv) {
  std::vector<double> Av(A, A + n * n), lv(lam, lam + n);
  std::vector<double> Rv(R, R + n * n), Riv(Rinv, Rinv + n * n);
  CharSystem sys;
  sys.n_comp = n;
  sys.autonomous = true;
  sys.constant_coefficients = true;
  sys.matrix = [Av, n](double, double, double* out) {
    std::memcpy(out, Av.data(), sizeof(double) * n * n);
  };
  sys.eigenvalues = [lv, n](double, double, double* out) {
    std::memcpy(out, lv.data(), sizeof(double) * n);
  };
  sys.right = [Rv, n](double, double, double* out) {
    std::memcpy(out, Rv.data(), sizeof(double) * n * n);
  };
  sys.left = [Riv, n](double, double, double* out) {
    std::memcpy(out, Riv.data(), sizeof(double) * n * n);
  };
  sys.right_dx = [n](double, double, double* out) {
    std::memset(out, 0, sizeof(double) * n * n);
  };
  sys.left_dx = [n](double, double, double* out) {
    std::memset(out, 0, sizeof(double) * n * n);
  };
  return sys;
}

CharSystem wave3_x_system(ScalarFn a, ScalarFn a_dx, double lo, double hi) {
  check_nonvanishing(a, lo, hi);
  CharSystem sys;
  sys.n_comp = 3;
  sys.autonomous = true;
  sys.matrix = [a](double x, double, double* A) {
    double av = a(x);
    std::memset(A, 0, sizeof(double) * 9);
    A[1] = -av * av;  // (0,1)
    A[3] = -1.0;      // (1,0)
  };
  sys.eigenvalues = [a](double x, double, double* lam) {
    double av = a(x);
    lam[0] = av;
    lam[1] = -av;
    lam[2] = 0.0;
  };
  sys.right = [a](double x, double, double* R) {
    double p = a(x);
    std::memset(R, 0, sizeof(double) * 9);
    R[0] = -p;
    R[1] = p;
    R[3] = 1.0;
    R[4] = 1.0;
    R[8] = 1.0;
  };
  sys.left = [a](double x, double, double* Ri) {
    double p = a(x);
    std::memset(Ri, 0, sizeof(double) * 9);
    Ri[0] = -0.5 / p;
    Ri[1] = 0.5;
    Ri[3] = 0.5 / p;
    Ri[4] = 0.5;
    Ri[8] = 1.0;
  };
  sys.right_dx = [a_dx](double x, double, double* dR) {
    double dp = a_dx(x);
    std::memset(dR, 0, sizeof(double) * 9);
    dR[0] = -dp;
    dR[1] = dp;
  };
  sys.left_dx = [a, a_dx](double x, double, double* dRi) {
    double p = a(x), dp = a_dx(x);
    std::memset(dRi, 0, sizeof(double) * 9);
    double v = 0.5 * dp / (p * p);
    dRi[0] = v;
    dRi[3] = -v;
  };
  return sys;
}

CharSystem wave3_y_system(ScalarFn b, ScalarFn b_dx, double lo, double hi) {
  check_nonvanishing(b, lo, hi);
  CharSystem sys;
  sys.n_comp = 3;
  sys.autonomous = true;
  sys.matrix = [b](double y, double, double* B) {
    double bv = b(y);
    std::memset(B, 0, sizeof(double) * 9);
    B[2] = -bv * bv;  // (0,2)
    B[6] = -1.0;      // (2,0)
  };
  sys.eigenvalues = [b](double y, double, double* lam) {
    double bv = b(y);
    lam[0] = bv;
    lam[1] = -bv;
    lam[2] = 0.0;
  };
  sys.right = [b](double y, double, double* R) {
    double p = b(y);
    std::memset(R, 0, sizeof(double) * 9);
    R[0] = -p;
    R[1] = p;
    R[6] = 1.0;
    R[7] = 1.0;
    R[5] = 1.0;  // (1,2): the zero-speed family carries u_x
  };
  sys.left = [b](double y, double, double* Ri) {
    double p = b(y);
    std::memset(Ri, 0, sizeof(double) * 9);
    Ri[0] = -0.5 / p;
    Ri[2] = 0.5;
    Ri[3] = 0.5 / p;
    Ri[5] = 0.5;
    Ri[7] = 1.0;  // (2,1)
  };
  sys.right_dx = [b_dx](double y, double, double* dR) {
    double dp = b_dx(y);
    std::memset(dR, 0, sizeof(double) * 9);
    dR[0] = -dp;
    dR[1] = dp;
  };
  sys.left_dx = [b, b_dx](double y, double, double* dRi) {
    double p = b(y), dp = b_dx(y);
    std::memset(dRi, 0, sizeof(double) * 9);
    double v = 0.5 * dp / (p * p);
    dRi[0] = v;
    dRi[3] = -v;
  };
  return sys;
}

}  // namespace eldg
