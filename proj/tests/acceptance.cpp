// Acceptance suite: one test case per numbered criterion, each printing a
// single PASS/FAIL line with the measured quantities.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "eldg/basis.hpp"
#include "eldg/field.hpp"
#include "eldg/harness.hpp"
#include "eldg/problems.hpp"
#include "eldg/projection.hpp"
#include "eldg/stabilization.hpp"
#include "eldg/system.hpp"
#include "support/rkdg_oracle.hpp"

using namespace eldg;

namespace {

constexpr double kPi = std::numbers::pi;

struct Criterion {
  std::string name;
  bool pass = true;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail += (detail.empty() ? "" : "; ") + what + (ok ? " ok" : " FAILED");
  }
  void report() const {
    std::printf("[acceptance] %s: %s  (%s)\n", name.c_str(), pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
  }
};

bool within_rel(double value, double target, double tol) {
  return std::abs(value - target) <= tol * std::abs(target);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

RunConfig base_config(const std::string& problem, const std::string& scheme, int degree,
                      std::vector<int> meshes, double cfl, double tfinal) {
  RunConfig cfg;
  cfg.problem = problem;
  cfg.scheme = scheme;
  cfg.degree = degree;
  cfg.meshes = std::move(meshes);
  cfg.cfls = {cfl};
  cfg.tfinal = tfinal;
  cfg.rk = "rk4";
  return cfg;
}

// per-component integral of |u0|, the mass-drift normalization scale
std::vector<double> ic_scale(const ProblemSpec& p) {
  const auto& rule = QuadratureRule::gauss(8);
  std::vector<double> scale(p.n_comp, 0.0), u(p.n_comp);
  const int cells = 256;
  for (int j = 0; j < cells; ++j) {
    double lo = p.lo_x + (p.hi_x - p.lo_x) * j / cells;
    double hi = p.lo_x + (p.hi_x - p.lo_x) * (j + 1) / cells;
    for (int q = 0; q < rule.size(); ++q) {
      double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rule.nodes[q];
      p.ic_1d(x, u.data());
      for (int c = 0; c < p.n_comp; ++c)
        scale[c] += 0.5 * (hi - lo) * rule.weights[q] * std::abs(u[c]);
    }
  }
  for (double& s : scale) s = std::max(s, 1e-12);
  return scale;
}

}  // namespace

TEST_CASE("criterion-1 spatial accuracy, 1D constant wave") {
  Criterion c{"criterion 1 (1D constant wave accuracy)"};
  const std::vector<double> p1_ref = {2.54e-3, 6.18e-4, 1.58e-4, 3.66e-5};
  const std::vector<double> p2_ref = {5.92e-5, 7.48e-6, 9.17e-7, 1.17e-7};

  RunConfig cfg = base_config("wave1d-const", "eldg", 1, {20, 40, 80, 160}, 0.3, 1.0);
  RunResult r1 = run_convergence(cfg);
  for (size_t i = 0; i < 4; ++i)
    c.expect(within_rel(r1.rows[i][1], p1_ref[i], 0.20),
             "P1 N=" + std::to_string(cfg.meshes[i]) + " L1=" + fmt(r1.rows[i][1]));
  c.expect(std::abs(r1.rows[3][2] - 2.11) <= 0.15, "P1 order(160)=" + fmt(r1.rows[3][2]));

  cfg.degree = 2;
  cfg.cfls = {0.18};
  RunResult r2 = run_convergence(cfg);
  for (size_t i = 0; i < 4; ++i)
    c.expect(within_rel(r2.rows[i][1], p2_ref[i], 0.20),
             "P2 N=" + std::to_string(cfg.meshes[i]) + " L1=" + fmt(r2.rows[i][1]));
  c.expect(std::abs(r2.rows[3][2] - 2.97) <= 0.15, "P2 order(160)=" + fmt(r2.rows[3][2]));

  c.report();
  CHECK(c.pass);
}

TEST_CASE("criterion-2 post-processed superconvergence") {
  Criterion c{"criterion 2 (post-processed orders 2k+1)"};

  RunConfig cfg = base_config("wave1d-const", "eldg", 1, {80, 160}, 0.3, 1.0);
  cfg.postprocess = true;
  RunResult r1 = run_convergence(cfg);
  c.expect(std::abs(r1.rows[1][2] - 3.1) <= 0.3, "P1 order(160)=" + fmt(r1.rows[1][2]));
  c.expect(within_rel(r1.rows[1][1], 3.15e-7, 0.30), "P1 L1(160)=" + fmt(r1.rows[1][1]));

  cfg.degree = 2;
  cfg.cfls = {0.18};
  cfg.meshes = {20, 40};
  RunResult r2 = run_convergence(cfg);
  c.expect(within_rel(r2.rows[1][1], 3.63e-8, 0.30), "P2 L1(40)=" + fmt(r2.rows[1][1]));
  c.expect(std::abs(r2.rows[1][2] - 5.89) <= 0.3, "P2 order(40)=" + fmt(r2.rows[1][2]));

  c.report();
  CHECK(c.pass);
}

TEST_CASE("criterion-3 mass conservation over long runs") {
  Criterion c{"criterion 3 (mass conservation, T=10)"};
  const ProblemSpec& p = find_problem("wave1d-const");
  std::vector<double> scale = ic_scale(p);

  auto drift_rel = [&](const std::string& scheme) {
    RunConfig cfg = base_config("wave1d-const", scheme, 1, {160}, 0.1, 10.0);
    auto r = integrate_1d(cfg, 160, 0.1, true);
    double worst = 0.0;
    for (const auto& row : r.mass)
      for (int comp = 0; comp < p.n_comp; ++comp)
        worst = std::max(worst, row.drift[comp] / scale[comp]);
    return worst;
  };

  for (const char* scheme : {"eldg", "eldg1", "eldg2", "eldg3"}) {
    double d = drift_rel(scheme);
    c.expect(d <= 1e-12, std::string(scheme) + " drift=" + fmt(d));
  }
  for (const char* scheme : {"nmc-eldg2", "nmc-eldg3"}) {
    double d = drift_rel(scheme);
    c.expect(d > 1e-8, std::string(scheme) + " drift=" + fmt(d));
  }

  c.report();
  CHECK(c.pass);
}

TEST_CASE("criterion-4 stability envelope") {
  Criterion c{"criterion 4 (large-CFL stability, RK DG reduction)"};

  RunConfig g1 = base_config("wave1d-gaussian", "eldg3", 1, {160}, 1.5, 2.0);
  c.expect(!integrate_1d(g1, 160, 1.5).blowup, "ELDG3 P1 CFL=1.5");
  RunConfig g2 = base_config("wave1d-gaussian", "eldg3", 2, {160}, 0.9, 2.0);
  c.expect(!integrate_1d(g2, 160, 0.9).blowup, "ELDG3 P2 CFL=0.9");

  RunConfig r1 = base_config("wave1d-const", "rkdg", 2, {160}, 0.5, 10.0);
  c.expect(integrate_1d(r1, 160, 0.5).blowup, "RKDG P2 CFL=0.5 blows up");
  RunConfig r2 = base_config("wave1d-const", "rkdg", 2, {160}, 0.15, 10.0);
  c.expect(!integrate_1d(r2, 160, 0.15).blowup, "RKDG P2 CFL=0.15 survives");

  c.report();
  CHECK(c.pass);
}

TEST_CASE("criterion-5 variable-coefficient accuracy") {
  Criterion c{"criterion 5 (variable coefficient with source)"};

  RunConfig cfg = base_config("wave1d-variable", "eldg", 1, {80, 160}, 0.1, 1.0);
  RunResult r1 = run_convergence(cfg);
  c.expect(within_rel(r1.rows[1][1], 8.11e-5, 0.20), "P1 L1(160)=" + fmt(r1.rows[1][1]));

  cfg.degree = 2;
  RunResult r2 = run_convergence(cfg);
  c.expect(std::abs(r2.rows[1][2] - 3.02) <= 0.15, "P2 order(160)=" + fmt(r2.rows[1][2]));

  c.report();
  CHECK(c.pass);
}

TEST_CASE("criterion-6 step data with the TVD limiter") {
  Criterion c{"criterion 6 (step data, TVD limiter, CFL=0.9)"};

  RunConfig cfg = base_config("wave1d-step", "eldg3", 2, {160}, 0.9, 2.85);
  cfg.limiter_m = 0.0;
  auto r = integrate_1d(cfg, 160, 0.9, true);
  c.expect(!r.blowup, "run completes");

  double lo = 1e300, hi = -1e300;
  for (int j = 0; j < 160; ++j) {
    lo = std::min(lo, r.field.at(j, 0, 0));
    hi = std::max(hi, r.field.at(j, 0, 0));
  }
  // exact means lie in [0.5, 1]; 5% of the jump height 0.5 allows 0.025
  c.expect(lo >= 0.5 - 0.025 && hi <= 1.0 + 0.025,
           "means in [" + fmt(lo) + ", " + fmt(hi) + "]");

  double m0 = kPi + 0.05 * kPi;  // closed-form initial mass of u1
  double worst = 0.0;
  for (const auto& row : r.mass) worst = std::max(worst, row.drift[0]);
  c.expect(worst <= 1e-12 * m0, "mass drift=" + fmt(worst / m0));

  c.report();
  CHECK(c.pass);
}

TEST_CASE("criterion-7 2D constant system accuracy") {
  // The reference table was produced with the fourth-order composition; the
  // Strang label in the criterion text conflicts with it, so the run uses the
  // composition the numbers came from.
  Criterion c{"criterion 7 (2D constant wave, up to 80^2)"};

  RunConfig cfg = base_config("wave2d-const", "eldg", 1, {20, 40, 80}, 0.1, 1.0);
  cfg.split = "fourth";
  RunResult q1 = run_convergence(cfg);
  c.expect(std::abs(q1.rows[2][2] - 1.96) <= 0.15, "Q1 order(80^2)=" + fmt(q1.rows[2][2]));
  c.expect(within_rel(q1.rows[2][1], 5.57e-5, 0.20),
           "Q1 L1(80^2)=" + fmt(q1.rows[2][1]) + " vs 5.57e-05");

  cfg.degree = 2;
  RunResult q2 = run_convergence(cfg);
  c.expect(std::abs(q2.rows[2][2] - 3.00) <= 0.15, "Q2 order(80^2)=" + fmt(q2.rows[2][2]));

  c.report();
  CHECK(c.pass);
}

TEST_CASE("criterion-8 2D variable system accuracy") {
  Criterion c{"criterion 8 (2D variable wave, fourth splitting)"};

  RunConfig cfg = base_config("wave2d-variable", "eldg", 2, {20, 40}, 0.1, 0.1);
  cfg.split = "fourth";
  RunResult r = run_convergence(cfg);
  c.expect(std::abs(r.rows[1][2] - 2.86) <= 0.30, "Q2 order(40^2)=" + fmt(r.rows[1][2]));

  c.report();
  CHECK(c.pass);
}

TEST_CASE("criterion-9 property suite") {
  Criterion c{"criterion 9 (oracle and identity properties)"};

  // L2 projection against a brute-force dense-quadrature weak solve
  {
    auto src = make_uniform_mesh(0.0, 1.0, 4);
    DGField f = DGField::zeros(src, 1, 1);
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& x : f.coeff) x = u(rng);
    Mesh1D dst = build_uniform_mesh(0.0, 1.0, 4);
    for (double& x : dst.nodes) x += 0.31 * dst.dx(0);
    dst.domain_lo = dst.nodes.front();
    dst.domain_hi = dst.nodes.back();
    auto dstp = std::make_shared<const Mesh1D>(dst);
    auto decomp = overlap_decompose_intervals(
        src, std::vector<double>(dst.nodes.begin(), dst.nodes.end() - 1),
        std::vector<double>(dst.nodes.begin() + 1, dst.nodes.end()));
    DGField fast = l2_project(f, decomp, dstp);

    DGField slow = DGField::zeros(dstp, 1, 1);
    const auto& rule = QuadratureRule::gauss(4);
    for (int j = 0; j < 4; ++j) {
      double a = dst.cell_lo(j), b = dst.cell_hi(j);
      std::vector<double> cuts = {a, b};
      for (int p = -1; p <= 1; ++p)
        for (int s = 0; s < 4; ++s) {
          double x = src->nodes[s] + p * src->length();
          if (x > a + 1e-14 && x < b - 1e-14) cuts.push_back(x);
        }
      std::sort(cuts.begin(), cuts.end());
      for (size_t piece = 0; piece + 1 < cuts.size(); ++piece)
        for (int panel = 0; panel < 50; ++panel) {
          double plo = cuts[piece] + (cuts[piece + 1] - cuts[piece]) * panel / 50.0;
          double phi = cuts[piece] + (cuts[piece + 1] - cuts[piece]) * (panel + 1) / 50.0;
          for (int q = 0; q < rule.size(); ++q) {
            double x = 0.5 * (plo + phi) + 0.5 * (phi - plo) * rule.nodes[q];
            double w = 0.5 * (phi - plo) * rule.weights[q];
            double xi = (2.0 * x - a - b) / (b - a);
            for (int m = 0; m <= 1; ++m)
              slow.at(j, 0, m) += w * f.eval_at(x, 0) * legendre_eval(m, xi);
          }
        }
      for (int m = 0; m <= 1; ++m) slow.at(j, 0, m) /= (b - a) / (2.0 * m + 1.0);
    }
    double worst = 0.0;
    for (size_t i = 0; i < fast.coeff.size(); ++i)
      worst = std::max(worst, std::abs(fast.coeff[i] - slow.coeff[i]));
    c.expect(worst <= 1e-12, "projection oracle diff=" + fmt(worst));
  }

  // RK DG reduction at zero node velocities
  {
    CharSystem sys = wave_system_from([](double x) { return 2.0 + std::sin(x); },
                                      [](double x) { return std::cos(x); }, 0.0,
                                      2.0 * kPi);
    auto mesh = make_uniform_mesh(0.0, 2.0 * kPi, 8);
    DGField U = project_function(mesh, 2, 2, [](double x, double* u) {
      u[0] = std::cos(x);
      u[1] = std::sin(2.0 * x);
    });
    NodeVelocities nu(2, std::vector<double>(8, 0.0));
    testing::RkdgOracle oracle;
    oracle.mesh = mesh;
    oracle.degree = 2;
    oracle.n_comp = 2;
    oracle.A = sys.matrix;
    oracle.lam = sys.eigenvalues;
    const double dt = 0.02 * mesh->dx(0);
    DGField ours = el_rk_step(U, 0.0, dt, ButcherTableau::rk4(), sys, nu);
    DGField ref = oracle.step(U, 0.0, dt, ButcherTableau::rk4());
    double worst = 0.0;
    for (size_t i = 0; i < U.coeff.size(); ++i)
      worst = std::max(worst, std::abs(ours.coeff[i] - ref.coeff[i]));
    c.expect(worst <= 1e-12, "RKDG reduction diff=" + fmt(worst));
  }

  // test functions constant along trajectories of alpha
  {
    DynamicElement e;
    e.cell = 0;
    e.nu_left = 0.6;
    e.nu_right = 1.1;
    e.t_start = 0.0;
    e.t_end = 0.5;
    e.back_lo = 1.0;
    e.back_hi = 1.6;
    e.upstream_lo = e.back_lo - 0.5 * e.nu_left;
    e.upstream_hi = e.back_hi - 0.5 * e.nu_right;
    double worst = 0.0;
    for (double frac : {0.2, 0.5, 0.8}) {
      double x = e.upstream_lo + frac * (e.upstream_hi - e.upstream_lo);
      double t = 0.0;
      std::vector<double> ref;
      for (int m = 0; m <= 3; ++m) ref.push_back(test_function_eval(e, m, x, t));
      const int nsub = 512;
      const double h = 0.5 / nsub;
      for (int i = 0; i < nsub; ++i) {
        double k1 = e.alpha(x, t);
        double k2 = e.alpha(x + 0.5 * h * k1, t + 0.5 * h);
        double k3 = e.alpha(x + 0.5 * h * k2, t + 0.5 * h);
        double k4 = e.alpha(x + h * k3, t + h);
        x += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        t += h;
        if (i % (nsub / 4) == 0 && i > 0)
          for (int m = 0; m <= 3; ++m)
            worst = std::max(worst, std::abs(test_function_eval(e, m, x, t) - ref[m]));
      }
    }
    c.expect(worst <= 1e-11, "adjoint trajectory drift=" + fmt(worst));
  }

  // consistent pair inverts to the identity
  {
    CharSystem sys = wave_system_from([](double x) { return 2.0 + std::sin(x); },
                                      [](double x) { return std::cos(x); }, 0.0,
                                      2.0 * kPi);
    double worst = 0.0, R[4], Ri[4];
    for (double x : {0.1, 1.7, 3.9, 5.4}) {
      sys.right(x, 0.0, R);
      sys.left(x, 0.0, Ri);
      for (int r = 0; r < 2; ++r)
        for (int cc = 0; cc < 2; ++cc) {
          double v = R[r * 2] * Ri[cc] + R[r * 2 + 1] * Ri[2 + cc];
          worst = std::max(worst, std::abs(v - (r == cc ? 1.0 : 0.0)));
        }
    }
    c.expect(worst <= 1e-12, "pair identity residual=" + fmt(worst));
  }

  // SIAC reproduction of representable polynomials at interior points
  {
    double worst = 0.0;
    for (int k : {1, 2}) {
      auto mesh = make_uniform_mesh(-1.0, 1.0, 16);
      for (int deg = 0; deg <= k; ++deg) {
        DGField f = project_function(mesh, k, 1, [deg](double x, double* u) {
          u[0] = std::pow(x, deg);
        });
        SiacFiltered filt(f);
        for (double x : {-0.4, 0.0, 0.35})
          worst = std::max(worst, std::abs(filt(0, x) - std::pow(x, deg)));
      }
    }
    c.expect(worst <= 1e-10, "SIAC reproduction err=" + fmt(worst));
  }

  c.report();
  CHECK(c.pass);
}
