#pragma once

// Independently coded classical modal RK DG semi-discretization of
//   U_t + (A(x,t) U)_x = F(x,t)
// on a periodic mesh with a Lax-Friedrichs flux (speed = max family
// eigenvalue magnitude per interface).  Deliberately separate from the
// production stepping path; used as the zero-velocity reduction oracle.

#include <cmath>
#include <functional>
#include <memory>
#include <vector>

#include "eldg/basis.hpp"
#include "eldg/field.hpp"
#include "eldg/mesh.hpp"
#include "eldg/rk.hpp"

namespace eldg::testing {

struct RkdgOracle {
  std::shared_ptr<const Mesh1D> mesh;
  int degree = 1;
  int n_comp = 1;
  std::function<void(double, double, double*)> A;    // row-major n x n
  std::function<void(double, double, double*)> lam;  // n eigenvalues
  std::function<void(double, double, double*)> F;    // optional source

  // moment rates [cell][comp][mode]
  std::vector<double> moment_rates(const DGField& U, double t) const {
    const int N = mesh->n_cells();
    const int K = degree + 1;
    const int nc = n_comp;
    std::vector<double> mom(static_cast<size_t>(N) * nc * K, 0.0);
    std::vector<double> Amat(nc * nc), lv(nc), Fv(nc);
    std::vector<double> Um(nc), Up(nc), flux(nc);

    auto midx = [&](int j, int c, int m) { return (static_cast<size_t>(j) * nc + c) * K + m; };

    for (int s = 0; s < N; ++s) {
      const int jl = (s + N - 1) % N;
      const int jr = s;
      const double xs = mesh->nodes[s];
      for (int c = 0; c < nc; ++c) {
        Um[c] = U.eval(jl, c, 1.0);
        Up[c] = U.eval(jr, c, -1.0);
      }
      A(xs, t, Amat.data());
      lam(xs, t, lv.data());
      double speed = 0.0;
      for (int c = 0; c < nc; ++c) speed = std::max(speed, std::abs(lv[c]));
      for (int c = 0; c < nc; ++c) {
        double au = 0.0;
        for (int d = 0; d < nc; ++d) au += Amat[c * nc + d] * (Um[d] + Up[d]);
        flux[c] = 0.5 * (au - speed * (Up[c] - Um[c]));
      }
      for (int c = 0; c < nc; ++c)
        for (int m = 0; m < K; ++m) {
          mom[midx(jl, c, m)] -= flux[c];
          mom[midx(jr, c, m)] += flux[c] * (m % 2 == 0 ? 1.0 : -1.0);
        }
    }

    const auto& rule = QuadratureRule::gauss(default_quad_points(degree));
    std::vector<double> psi(K), dpsi(K), vals(nc);
    for (int j = 0; j < N; ++j) {
      double half = 0.5 * mesh->dx(j), mid = mesh->cell_center(j);
      for (int q = 0; q < rule.size(); ++q) {
        double xi = rule.nodes[q];
        double x = mid + half * xi;
        legendre_all(degree, xi, psi.data());
        legendre_deriv_all(degree, xi, dpsi.data());
        for (int c = 0; c < nc; ++c) vals[c] = U.eval(j, c, xi);
        A(x, t, Amat.data());
        for (int c = 0; c < nc; ++c) {
          double au = 0.0;
          for (int d = 0; d < nc; ++d) au += Amat[c * nc + d] * vals[d];
          // d(psi)/dx Jacobian cancels the quadrature Jacobian
          for (int m = 1; m < K; ++m)
            mom[midx(j, c, m)] += rule.weights[q] * au * dpsi[m];
        }
        if (F) {
          F(x, t, Fv.data());
          for (int c = 0; c < nc; ++c)
            for (int m = 0; m < K; ++m)
              mom[midx(j, c, m)] += rule.weights[q] * half * Fv[c] * psi[m];
        }
      }
    }
    return mom;
  }

  DGField coeff_rates(const DGField& U, double t) const {
    std::vector<double> mom = moment_rates(U, t);
    DGField d = DGField::zeros(mesh, degree, n_comp);
    const int K = degree + 1;
    for (int j = 0; j < mesh->n_cells(); ++j)
      for (int c = 0; c < n_comp; ++c)
        for (int m = 0; m < K; ++m)
          d.at(j, c, m) = mom[(static_cast<size_t>(j) * n_comp + c) * K + m] *
                          (2.0 * m + 1.0) / mesh->dx(j);
    return d;
  }

  DGField step(const DGField& U, double t, double dt, const ButcherTableau& rk) const {
    std::vector<DGField> k(rk.stages);
    for (int l = 0; l < rk.stages; ++l) {
      DGField stage = U;
      for (int m = 0; m < l; ++m) {
        double alm = rk.a_at(l, m);
        if (alm == 0.0) continue;
        for (size_t i = 0; i < stage.coeff.size(); ++i)
          stage.coeff[i] += dt * alm * k[m].coeff[i];
      }
      k[l] = coeff_rates(stage, t + rk.c[l] * dt);
    }
    DGField out = U;
    for (int l = 0; l < rk.stages; ++l) {
      if (rk.b[l] == 0.0) continue;
      for (size_t i = 0; i < out.coeff.size(); ++i)
        out.coeff[i] += dt * rk.b[l] * k[l].coeff[i];
    }
    out.time_tag = t + dt;
    return out;
  }
};

}  // namespace eldg::testing
