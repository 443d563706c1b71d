#include "eldg/problems.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace eldg {

namespace {

constexpr double kPi = std::numbers::pi;

double sample_max(const std::function<double(double)>& f, double lo, double hi) {
  double m = 0.0;
  for (int i = 0; i <= 512; ++i)
    m = std::max(m, std::abs(f(lo + (hi - lo) * i / 512.0)));
  return m;
}

// wrap s into [lo, hi)
double wrap_to(double s, double lo, double hi) {
  double L = hi - lo;
  return s - L * std::floor((s - lo) / L);
}

std::map<std::string, ProblemSpec> build_registry() {
  std::map<std::string, ProblemSpec> reg;

  {
    ProblemSpec p;
    p.id = "wave1d-const";
    p.dim = 1;
    p.n_comp = 2;
    p.lo_x = 0.0;
    p.hi_x = 2.0 * kPi;
    p.a = [](double) { return 1.0; };
    p.a_dx = [](double) { return 0.0; };
    p.ic_1d = [](double x, double* u) { u[0] = std::cos(x); u[1] = std::cos(x); };
    p.exact_1d = [](double x, double t, double* u) {
      u[0] = std::cos(x + t);
      u[1] = std::cos(x + t);
    };
    reg[p.id] = p;
  }

  {
    ProblemSpec p;
    p.id = "wave1d-gaussian";
    p.dim = 1;
    p.n_comp = 2;
    p.lo_x = -1.0;
    p.hi_x = 1.0;
    p.a = [](double) { return 1.0; };
    p.a_dx = [](double) { return 0.0; };
    auto g = [](double s) {
      s = wrap_to(s, -1.0, 1.0);
      return std::exp(-s * s / 0.005);
    };
    p.ic_1d = [g](double x, double* u) {
      u[0] = g(x);
      u[1] = 0.0;
    };
    p.exact_1d = [g](double x, double t, double* u) {
      u[0] = 0.5 * (g(x + t) + g(x - t));
      u[1] = 0.5 * (g(x + t) - g(x - t));
    };
    reg[p.id] = p;
  }

  {
    ProblemSpec p;
    p.id = "wave1d-step";
    p.dim = 1;
    p.n_comp = 2;
    p.lo_x = 0.0;
    p.hi_x = 2.0 * kPi;
    p.a = [](double) { return 1.0; };
    p.a_dx = [](double) { return 0.0; };
    auto u1_0 = [](double x) {
      x = wrap_to(x, 0.0, 2.0 * kPi);
      return (x >= 0.95 * kPi && x <= 1.05 * kPi) ? 1.0 : 0.5;
    };
    p.ic_1d = [u1_0](double x, double* u) {
      u[0] = u1_0(x);
      u[1] = 1.0;
    };
    // characteristic variables (a = 1): w1 = (u2 - u1)/2 rides +1, w2 = (u1 + u2)/2 rides -1
    p.exact_1d = [u1_0](double x, double t, double* u) {
      double w1 = 0.5 * (1.0 - u1_0(x - t));
      double w2 = 0.5 * (1.0 + u1_0(x + t));
      u[0] = -w1 + w2;
      u[1] = w1 + w2;
    };
    p.exact_smooth = false;
    p.ic_breakpoints = {0.95 * kPi, 1.05 * kPi};
    reg[p.id] = p;
  }

  {
    ProblemSpec p;
    p.id = "wave1d-variable";
    p.dim = 1;
    p.n_comp = 2;
    p.lo_x = 0.0;
    p.hi_x = 2.0 * kPi;
    p.a = [](double x) { return 2.0 + std::sin(x); };
    p.a_dx = [](double x) { return std::cos(x); };
    p.source_f = [](double x, double t) {
      double s = std::sin(x - 2.0 * t), c = std::cos(x - 2.0 * t);
      double av = 2.0 + std::sin(x);
      return -4.0 * s + s * av * av - 2.0 * av * std::cos(x) * c;
    };
    p.ic_1d = [](double x, double* u) {
      u[0] = -2.0 * std::cos(x);
      u[1] = std::cos(x);
    };
    p.exact_1d = [](double x, double t, double* u) {
      u[0] = -2.0 * std::cos(x - 2.0 * t);
      u[1] = std::cos(x - 2.0 * t);
    };
    reg[p.id] = p;
  }

  {
    ProblemSpec p;
    p.id = "wave2d-const";
    p.dim = 2;
    p.n_comp = 2;
    p.lo_x = 0.0;
    p.hi_x = 2.0 * kPi;
    p.lo_y = 0.0;
    p.hi_y = 2.0 * kPi;
    const double r2 = std::sqrt(2.0);
    p.ic_2d = [r2](double x, double y, double* u) {
      u[0] = std::sin(x + y) / (2.0 * r2) - std::cos(x + y) / (2.0 * r2);
      u[1] = (r2 - 1.0) / (2.0 * r2) * std::sin(x + y) +
             (r2 + 1.0) / (2.0 * r2) * std::cos(x + y);
    };
    p.exact_2d = [r2](double x, double y, double t, double* u) {
      u[0] = std::sin(x + y + r2 * t) / (2.0 * r2) - std::cos(x + y - r2 * t) / (2.0 * r2);
      u[1] = (r2 - 1.0) / (2.0 * r2) * std::sin(x + y + r2 * t) +
             (r2 + 1.0) / (2.0 * r2) * std::cos(x + y - r2 * t);
    };
    p.sweep_systems = []() {
      SweepSystems sw;
      sw.n_comp = 2;
      const double Ax[4] = {-1.0, 0.0, 0.0, 1.0};
      const double lx[2] = {-1.0, 1.0};
      const double Rx[4] = {1.0, 0.0, 0.0, 1.0};
      const double Rix[4] = {1.0, 0.0, 0.0, 1.0};
      const double By[4] = {0.0, -1.0, -1.0, 0.0};
      const double ly[2] = {1.0, -1.0};
      const double Ry[4] = {1.0, 1.0, -1.0, 1.0};
      const double Riy[4] = {0.5, -0.5, 0.5, 0.5};
      CharSystem sx = constant_system(2, Ax, lx, Rx, Rix);
      CharSystem sy = constant_system(2, By, ly, Ry, Riy);
      sw.x_system = [sx](double) { return sx; };
      sw.y_system = [sy](double) { return sy; };
      sw.uniform_x = true;
      sw.uniform_y = true;
      return sw;
    };
    reg[p.id] = p;
  }

  {
    ProblemSpec p;
    p.id = "wave2d-gaussian";
    p.dim = 2;
    p.n_comp = 3;
    p.lo_x = -1.0;
    p.hi_x = 1.0;
    p.lo_y = -1.0;
    p.hi_y = 1.0;
    p.ic_2d = [](double x, double y, double* u) {
      u[0] = std::exp(-(x * x + y * y) / 0.005);
      u[1] = 0.0;
      u[2] = 0.0;
    };
    p.sweep_systems = []() {
      SweepSystems sw;
      sw.n_comp = 3;
      auto one = [](double) { return 1.0; };
      auto zero = [](double) { return 0.0; };
      CharSystem sx = wave3_x_system(one, zero, -1.0, 1.0);
      CharSystem sy = wave3_y_system(one, zero, -1.0, 1.0);
      sw.x_system = [sx](double) { return sx; };
      sw.y_system = [sy](double) { return sy; };
      sw.uniform_x = true;
      sw.uniform_y = true;
      return sw;
    };
    reg[p.id] = p;
  }

  {
    ProblemSpec p;
    p.id = "wave2d-variable";
    p.dim = 2;
    p.n_comp = 3;
    p.lo_x = 0.0;
    p.hi_x = 2.0 * kPi;
    p.lo_y = 0.0;
    p.hi_y = 2.0 * kPi;
    p.ic_2d = [](double x, double y, double* u) {
      u[0] = 2.0 * std::cos(x + y);
      u[1] = std::cos(x + y);
      u[2] = std::cos(x + y);
    };
    p.exact_2d = [](double x, double y, double t, double* u) {
      u[0] = 2.0 * std::cos(x + y + 2.0 * t);
      u[1] = std::cos(x + y + 2.0 * t);
      u[2] = std::cos(x + y + 2.0 * t);
    };
    p.sweep_systems = []() {
      SweepSystems sw;
      sw.n_comp = 3;
      auto a = [](double x, double y) { return 1.0 + 0.5 * std::sin(x + y); };
      auto b = [a](double x, double y) {
        double av = a(x, y);
        return std::sqrt(4.0 - av * av);
      };
      sw.x_system = [a](double y) {
        return wave3_x_system([a, y](double x) { return a(x, y); },
                              [y](double x) { return 0.5 * std::cos(x + y); }, 0.0,
                              2.0 * kPi);
      };
      sw.y_system = [a, b](double x) {
        return wave3_y_system(
            [b, x](double y) { return b(x, y); },
            [a, b, x](double y) {
              return -a(x, y) * 0.5 * std::cos(x + y) / b(x, y);
            },
            0.0, 2.0 * kPi);
      };
      sw.uniform_x = false;
      sw.uniform_y = false;
      return sw;
    };
    reg[p.id] = p;
  }

  return reg;
}

const std::map<std::string, ProblemSpec>& registry() {
  static const std::map<std::string, ProblemSpec> reg = build_registry();
  return reg;
}

}  // namespace

const ProblemSpec& find_problem(const std::string& id) {
  auto it = registry().find(id);
  if (it == registry().end())
    throw std::invalid_argument("unknown problem: " + id);
  return it->second;
}

std::vector<std::string> problem_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, p] : registry()) ids.push_back(id);
  return ids;
}

double ProblemSpec::max_speed_x() const {
  if (dim == 1) return sample_max(a, lo_x, hi_x);
  auto sw = sweep_systems();
  double m = 0.0;
  double lam[kMaxComp];
  for (int i = 0; i <= 64; ++i) {
    double y = lo_y + (hi_y - lo_y) * i / 64.0;
    CharSystem sys = sw.x_system(y);
    for (int j = 0; j <= 64; ++j) {
      sys.eigenvalues(lo_x + (hi_x - lo_x) * j / 64.0, 0.0, lam);
      for (int c = 0; c < sys.n_comp; ++c) m = std::max(m, std::abs(lam[c]));
    }
    if (sw.uniform_x) break;
  }
  return m;
}

double ProblemSpec::max_speed_y() const {
  if (dim == 1) return max_speed_x();
  auto sw = sweep_systems();
  double m = 0.0;
  double lam[kMaxComp];
  for (int i = 0; i <= 64; ++i) {
    double x = lo_x + (hi_x - lo_x) * i / 64.0;
    CharSystem sys = sw.y_system(x);
    for (int j = 0; j <= 64; ++j) {
      sys.eigenvalues(lo_y + (hi_y - lo_y) * j / 64.0, 0.0, lam);
      for (int c = 0; c < sys.n_comp; ++c) m = std::max(m, std::abs(lam[c]));
    }
    if (sw.uniform_y) break;
  }
  return m;
}

SchemeVariant SchemeVariant::parse(const std::string& id) {
  SchemeVariant v;
  v.name = id;
  std::string base = id;
  if (base.rfind("nmc-", 0) == 0) {
    v.nmc = true;
    base = base.substr(4);
  }
  if (base == "rkdg") {
    if (v.nmc) throw std::invalid_argument("invalid scheme: " + id);
    v.zero_nu = true;
    return v;
  }
  if (base == "eldg") return v;
  if (base == "eldg1") {
    v.perturb_nu = true;
    return v;
  }
  if (base == "eldg2") {
    v.perturb_ap = true;
    return v;
  }
  if (base == "eldg3") {
    v.perturb_nu = true;
    v.perturb_ap = true;
    return v;
  }
  throw std::invalid_argument("unknown scheme: " + id);
}

CharSystem system_for(const ProblemSpec& problem, const SchemeVariant& variant, double dx) {
  if (problem.dim != 1)
    throw std::invalid_argument("system_for: 1D problems only");
  // the nmc variant freezes the same pair at cell centers, perturbed or not
  ScalarFn ap, ap_dx;
  if (variant.perturb_ap) {
    auto a = problem.a, adx = problem.a_dx;
    ap = [a, dx](double x) { return a(x) + std::sin(x) * dx; };
    ap_dx = [adx, dx](double x) { return adx(x) + std::cos(x) * dx; };
  }
  return wave_system_from(problem.a, problem.a_dx, problem.lo_x, problem.hi_x,
                          problem.source_f, ap, ap_dx);
}

NodeVelocities node_velocities_for(const ProblemSpec&, const SchemeVariant& variant,
                                   const Mesh1D& mesh, const CharSystem& sys) {
  const int N = mesh.n_cells();
  NodeVelocities nu(sys.n_comp, std::vector<double>(N, 0.0));
  if (variant.zero_nu) return nu;
  double lam[kMaxComp];
  for (int s = 0; s < N; ++s) {
    sys.eigenvalues(mesh.nodes[s], 0.0, lam);
    double v1 = lam[0];
    if (variant.perturb_nu) {
      int left_cell = (s + N - 1) % N;
      v1 += std::sin(mesh.cell_center(left_cell)) * mesh.dx(left_cell);
    }
    nu[0][s] = v1;
    if (sys.n_comp >= 2) nu[1][s] = -v1;
    for (int i = 2; i < sys.n_comp; ++i) nu[i][s] = lam[i];
  }
  return nu;
}

double exact_solution_residual(const ProblemSpec& problem) {
  if (!problem.has_exact() || !problem.exact_smooth) return 0.0;
  const double h = 1e-5;
  double worst = 0.0;
  if (problem.dim == 1) {
    auto Afun = [&](double x, double* A) {
      double av = problem.a(x);
      A[0] = 0.0;
      A[1] = -av * av;
      A[2] = -1.0;
      A[3] = 0.0;
    };
    for (int i = 0; i < 40; ++i) {
      double x = problem.lo_x + (problem.hi_x - problem.lo_x) * (i + 0.37) / 40.0;
      double t = 0.1 + 0.02 * i;
      double up[2], um[2], gp[2], gm[2], u0[2], A[4];
      problem.exact_1d(x, t + h, up);
      problem.exact_1d(x, t - h, um);
      auto flux = [&](double xx, double* g) {
        double uu[2];
        problem.exact_1d(xx, t, uu);
        Afun(xx, A);
        g[0] = A[0] * uu[0] + A[1] * uu[1];
        g[1] = A[2] * uu[0] + A[3] * uu[1];
      };
      flux(x + h, gp);
      flux(x - h, gm);
      problem.exact_1d(x, t, u0);
      double f = problem.source_f ? problem.source_f(x, t) : 0.0;
      double r0 = (up[0] - um[0]) / (2 * h) + (gp[0] - gm[0]) / (2 * h) - f;
      double r1 = (up[1] - um[1]) / (2 * h) + (gp[1] - gm[1]) / (2 * h);
      worst = std::max({worst, std::abs(r0), std::abs(r1)});
    }
    return worst;
  }
  auto sw = problem.sweep_systems();
  const int nc = sw.n_comp;
  for (int i = 0; i < 24; ++i) {
    double x = problem.lo_x + (problem.hi_x - problem.lo_x) * (i + 0.21) / 24.0;
    double y = problem.lo_y + (problem.hi_y - problem.lo_y) * (i * 7 % 24 + 0.63) / 24.0;
    double t = 0.05 + 0.01 * i;
    double up[kMaxComp], um[kMaxComp];
    double A[kMaxComp * kMaxComp];
    problem.exact_2d(x, y, t + h, up);
    problem.exact_2d(x, y, t - h, um);
    double res[kMaxComp];
    for (int c = 0; c < nc; ++c) res[c] = (up[c] - um[c]) / (2 * h);
    auto add_flux = [&](bool xdir) {
      double gp[kMaxComp], gm[kMaxComp], uu[kMaxComp];
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        double xx = x, yy = y;
        if (xdir)
          xx += sgn * h;
        else
          yy += sgn * h;
        problem.exact_2d(xx, yy, t, uu);
        CharSystem sys = xdir ? sw.x_system(yy) : sw.y_system(xx);
        sys.matrix(xdir ? xx : yy, t, A);
        double* g = sgn > 0 ? gp : gm;
        for (int c = 0; c < nc; ++c) {
          g[c] = 0.0;
          for (int d = 0; d < nc; ++d) g[c] += A[c * nc + d] * uu[d];
        }
      }
      for (int c = 0; c < nc; ++c) res[c] += (gp[c] - gm[c]) / (2 * h);
    };
    add_flux(true);
    add_flux(false);
    for (int c = 0; c < nc; ++c) worst = std::max(worst, std::abs(res[c]));
  }
  return worst;
}

}  // namespace eldg
