#include "eldg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "eldg/basis.hpp"
#include "eldg/projection.hpp"
#include "eldg/stabilization.hpp"
#include "eldg/system.hpp"

namespace eldg {

namespace {

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

std::string join_doubles(const std::vector<double>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v[i]);
    os << buf;
  }
  return os.str();
}

}  // namespace

std::string RunConfig::manifest() const {
  std::ostringstream os;
  os << "# problem=" << problem << " scheme=" << scheme << " degree=" << degree
     << " nx=" << join_ints(meshes) << " cfl=" << join_doubles(cfls)
     << " tfinal=" << tfinal << " rk=" << rk << " limiter=";
  if (limiter_m)
    os << *limiter_m;
  else
    os << "off";
  os << " postprocess=" << (postprocess ? "on" : "off") << " split=" << split
     << " out=" << out;
  return os.str();
}

void validate_config(const RunConfig& cfg) {
  const ProblemSpec& p = find_problem(cfg.problem);
  SchemeVariant variant = SchemeVariant::parse(cfg.scheme);
  if (cfg.degree < 1 || cfg.degree > 3)
    throw std::invalid_argument("degree must be 1, 2 or 3");
  if (cfg.meshes.empty()) throw std::invalid_argument("at least one mesh size required");
  for (int n : cfg.meshes)
    if (n < 2) throw std::invalid_argument("mesh size must be >= 2");
  if (cfg.cfls.empty()) throw std::invalid_argument("at least one CFL required");
  for (double c : cfg.cfls)
    if (!(c > 0.0)) throw std::invalid_argument("CFL must be positive");
  if (!(cfg.tfinal > 0.0)) throw std::invalid_argument("tfinal must be positive");
  ButcherTableau::from_tag(cfg.rk);
  if (cfg.split != "strang" && cfg.split != "fourth")
    throw std::invalid_argument("split must be strang or fourth");
  if (p.dim == 2) {
    if (variant.nmc || variant.perturb_ap || variant.perturb_nu)
      throw std::invalid_argument("2D runs support schemes eldg and rkdg only");
    if (cfg.postprocess)
      throw std::invalid_argument("postprocessing is 1D only");
  }
  if (cfg.limiter_m && *cfg.limiter_m < 0.0)
    throw std::invalid_argument("limiter M must be nonnegative");
}

// ---------------------------------------------------------------------------
// error norms

namespace {

Norms norms_from_eval(const Mesh1D& mesh, int qpts,
                      const std::function<double(int, double, double)>& diff) {
  // diff(cell, x, w) returns |u_h - u| at a quadrature point
  const auto& rule = QuadratureRule::gauss(qpts);
  Norms n;
  for (int j = 0; j < mesh.n_cells(); ++j) {
    double half = 0.5 * mesh.dx(j), mid = mesh.cell_center(j);
    for (int q = 0; q < rule.size(); ++q) {
      double x = mid + half * rule.nodes[q];
      double e = diff(j, x, rule.weights[q] * half);
      double w = rule.weights[q] * half;
      n.l1 += w * std::abs(e);
      n.l2 += w * e * e;
      n.linf = std::max(n.linf, std::abs(e));
    }
  }
  const double L = mesh.length();
  n.l1 /= L;
  n.l2 = std::sqrt(n.l2 / L);
  return n;
}

}  // namespace

Norms error_norms(const DGField& field, const std::function<double(double, double)>& exact,
                  double t) {
  if (!exact) throw std::invalid_argument("error_norms: exact solution unavailable");
  return norms_from_eval(*field.mesh, default_quad_points(field.degree),
                         [&](int j, double x, double) {
                           double xi = field.mesh->reference_coord(j, x);
                           return field.eval(j, 0, xi) - exact(x, t);
                         });
}

Norms error_norms_filtered(const DGField& field,
                           const std::function<double(double, double)>& exact, double t) {
  if (!exact) throw std::invalid_argument("error_norms: exact solution unavailable");
  SiacFiltered filt(field);
  return norms_from_eval(*field.mesh, default_quad_points(field.degree),
                         [&](int, double x, double) { return filt(0, x) - exact(x, t); });
}

Norms error_norms_2d(const Field2D& field,
                     const std::function<void(double, double, double, double*)>& exact,
                     int comp, double t) {
  if (!exact) throw std::invalid_argument("error_norms_2d: exact solution unavailable");
  const int K = field.nodes_1d();
  const int k = field.degree;
  const int nq = default_quad_points(k);
  const auto& rule = QuadratureRule::gauss(nq);
  // nodal -> modal transform per direction (exact for Q^k data)
  std::vector<double> to_modal(static_cast<size_t>(K) * K);
  {
    const auto& grule = QuadratureRule::gauss(K);
    std::vector<double> psi(K);
    for (int q = 0; q < K; ++q) {
      legendre_all(k, grule.nodes[q], psi.data());
      for (int m = 0; m < K; ++m)
        to_modal[static_cast<size_t>(m) * K + q] = 0.5 * (2 * m + 1) * grule.weights[q] * psi[m];
    }
  }
  Norms n;
  std::vector<double> modal(static_cast<size_t>(K) * K), tmp(static_cast<size_t>(K) * K);
  std::vector<double> px(K), py(K);
  double uex[kMaxComp];
  const double area = field.mesh_x->length() * field.mesh_y->length();
  for (int jy = 0; jy < field.mesh_y->n_cells(); ++jy)
    for (int ix = 0; ix < field.mesh_x->n_cells(); ++ix) {
      // rows: modal in x per nodal y
      for (int qy = 0; qy < K; ++qy)
        for (int m = 0; m < K; ++m) {
          double v = 0.0;
          for (int qx = 0; qx < K; ++qx)
            v += to_modal[static_cast<size_t>(m) * K + qx] * field.at(ix, jy, comp, qx, qy);
          tmp[static_cast<size_t>(qy) * K + m] = v;
        }
      for (int m = 0; m < K; ++m)
        for (int mm = 0; mm < K; ++mm) {
          double v = 0.0;
          for (int qy = 0; qy < K; ++qy)
            v += to_modal[static_cast<size_t>(mm) * K + qy] * tmp[static_cast<size_t>(qy) * K + m];
          modal[static_cast<size_t>(mm) * K + m] = v;
        }
      double xc = field.mesh_x->cell_center(ix), hx = 0.5 * field.mesh_x->dx(ix);
      double yc = field.mesh_y->cell_center(jy), hy = 0.5 * field.mesh_y->dx(jy);
      for (int qy = 0; qy < nq; ++qy) {
        legendre_all(k, rule.nodes[qy], py.data());
        for (int qx = 0; qx < nq; ++qx) {
          legendre_all(k, rule.nodes[qx], px.data());
          double v = 0.0;
          for (int mm = 0; mm < K; ++mm)
            for (int m = 0; m < K; ++m)
              v += modal[static_cast<size_t>(mm) * K + m] * py[mm] * px[m];
          double x = xc + hx * rule.nodes[qx], y = yc + hy * rule.nodes[qy];
          exact(x, y, t, uex);
          double e = v - uex[comp];
          double w = rule.weights[qx] * rule.weights[qy] * hx * hy;
          n.l1 += w * std::abs(e);
          n.l2 += w * e * e;
          n.linf = std::max(n.linf, std::abs(e));
        }
      }
    }
  n.l1 /= area;
  n.l2 = std::sqrt(n.l2 / area);
  return n;
}

// ---------------------------------------------------------------------------
// integration loops

Integrate1DResult integrate_1d(const RunConfig& cfg, int n_cells, double cfl,
                               bool track_mass) {
  const ProblemSpec& p = find_problem(cfg.problem);
  if (p.dim != 1) throw std::invalid_argument("integrate_1d: 1D problem required");
  SchemeVariant variant = SchemeVariant::parse(cfg.scheme);
  auto mesh = make_uniform_mesh(p.lo_x, p.hi_x, n_cells);
  const double dx = mesh->dx(0);

  CharSystem sys = system_for(p, variant, dx);
  NodeVelocities nu = node_velocities_for(p, variant, *mesh, sys);
  ButcherTableau rk = ButcherTableau::from_tag(cfg.rk);
  StepOptions opt;
  opt.nmc = variant.nmc;
  opt.limiter_m = cfg.limiter_m;

  DGField U = project_function(
      mesh, cfg.degree, p.n_comp, [&](double x, double* u) { p.ic_1d(x, u); },
      p.ic_breakpoints);
  if (opt.limiter_m) tvd_limit_inplace(U, *opt.limiter_m);

  const double a_max = p.max_speed_x();
  const double dt0 = cfl * dx / a_max;
  const double T = cfg.tfinal;
  const int n_steps = static_cast<int>(std::ceil(T / dt0 - 1e-9));

  Integrate1DResult res;
  const double norm0 = std::max(l2_norm(U), 1e-12);
  std::vector<double> mass0 = total_mass(U);
  if (track_mass) {
    MassRow row;
    row.t = 0.0;
    row.drift.assign(p.n_comp, 0.0);
    res.mass.push_back(row);
  }

  StepPlan plan = build_step_plan(mesh, nu, dt0, rk, cfg.degree);
  double t = 0.0;
  for (int step = 0; step < n_steps; ++step) {
    double dt = std::min(dt0, T - t);
    if (dt <= 0.0) break;
    if (std::abs(dt - dt0) <= 1e-12 * dt0) {
      U = el_rk_step(U, t, dt0, rk, sys, nu, opt, &plan);
      t += dt0;
    } else {
      U = el_rk_step(U, t, dt, rk, sys, nu, opt);
      t += dt;
    }
    double norm = l2_norm(U);
    if (!(norm <= 1e3 * norm0)) {
      res.blowup = true;
      break;
    }
    if (track_mass) {
      std::vector<double> m = total_mass(U);
      MassRow row;
      row.t = t;
      for (int c = 0; c < p.n_comp; ++c) row.drift.push_back(std::abs(m[c] - mass0[c]));
      res.mass.push_back(row);
    }
  }
  res.field = std::move(U);
  return res;
}

Integrate2DResult integrate_2d(const RunConfig& cfg, int n_cells, double cfl) {
  const ProblemSpec& p = find_problem(cfg.problem);
  if (p.dim != 2) throw std::invalid_argument("integrate_2d: 2D problem required");
  SchemeVariant variant = SchemeVariant::parse(cfg.scheme);
  NuMode nu_mode = variant.zero_nu ? NuMode::zero : NuMode::characteristic;
  auto mx = make_uniform_mesh(p.lo_x, p.hi_x, n_cells);
  auto my = make_uniform_mesh(p.lo_y, p.hi_y, n_cells);
  SweepSystems sw = p.sweep_systems();
  ButcherTableau rk = ButcherTableau::from_tag(cfg.rk);
  StepOptions opt;
  opt.limiter_m = cfg.limiter_m;

  Field2D U = interpolate_2d(mx, my, cfg.degree, p.n_comp,
                             [&](double x, double y, double* u) { p.ic_2d(x, y, u); });

  const double dt0 = cfl / (p.max_speed_x() / mx->dx(0) + p.max_speed_y() / my->dx(0));
  const double T = cfg.tfinal;
  const int n_steps = static_cast<int>(std::ceil(T / dt0 - 1e-9));
  const bool fourth = cfg.split == "fourth";

  Integrate2DResult res;
  const double norm0 = std::max(l2_norm_2d(U), 1e-12);
  SweepWorkspace ws;
  double t = 0.0;
  for (int step = 0; step < n_steps; ++step) {
    double dt = std::min(dt0, T - t);
    if (dt <= 0.0) break;
    U = fourth ? fourth_order_step(U, t, dt, rk, sw, nu_mode, opt, &ws)
               : strang_step(U, t, dt, rk, sw, nu_mode, opt, &ws);
    t += dt;
    double norm = l2_norm_2d(U);
    if (!(norm <= 1e3 * norm0)) {
      res.blowup = true;
      break;
    }
  }
  res.field = std::move(U);
  return res;
}

// ---------------------------------------------------------------------------
// drivers

namespace {

double safe_order(double e_coarse, double e_fine) {
  // orders are reported only when both errors sit above quadrature noise
  if (e_coarse < 1e2 * 2.2e-16 || e_fine < 1e2 * 2.2e-16) return 0.0;
  return std::log2(e_coarse / e_fine);
}

std::function<double(double, double)> exact_component(const ProblemSpec& p, int comp) {
  if (!p.exact_1d) return nullptr;
  auto ex = p.exact_1d;
  return [ex, comp](double x, double t) {
    double u[kMaxComp];
    ex(x, t, u);
    return u[comp];
  };
}

}  // namespace

RunResult run_convergence(const RunConfig& cfg) {
  validate_config(cfg);
  const ProblemSpec& p = find_problem(cfg.problem);
  if (!p.has_exact())
    throw std::invalid_argument("converge: problem has no exact solution");
  RunResult out;
  out.manifest = cfg.manifest();
  out.columns = {"nx", "l1", "l1_order", "l2", "l2_order", "linf", "linf_order"};
  double cfl = cfg.cfls.front();
  Norms prev;
  bool have_prev = false;
  for (int n : cfg.meshes) {
    Norms e;
    if (p.dim == 1) {
      auto r = integrate_1d(cfg, n, cfl);
      auto exact0 = exact_component(p, 0);
      e = cfg.postprocess ? error_norms_filtered(r.field, exact0, cfg.tfinal)
                          : error_norms(r.field, exact0, cfg.tfinal);
    } else {
      auto r = integrate_2d(cfg, n, cfl);
      e = error_norms_2d(r.field, p.exact_2d, 0, cfg.tfinal);
    }
    std::vector<double> row = {static_cast<double>(n), e.l1, 0.0, e.l2, 0.0, e.linf, 0.0};
    if (have_prev) {
      row[2] = safe_order(prev.l1, e.l1);
      row[4] = safe_order(prev.l2, e.l2);
      row[6] = safe_order(prev.linf, e.linf);
    }
    out.rows.push_back(row);
    prev = e;
    have_prev = true;
  }
  return out;
}

RunResult run_cfl_sweep(const RunConfig& cfg) {
  validate_config(cfg);
  const ProblemSpec& p = find_problem(cfg.problem);
  if (!p.has_exact())
    throw std::invalid_argument("cfl-sweep: problem has no exact solution");
  RunResult out;
  out.manifest = cfg.manifest();
  out.columns = {"cfl", "linf", "blowup"};
  const int n = cfg.meshes.front();
  for (double cfl : cfg.cfls) {
    double linf = std::numeric_limits<double>::infinity();
    bool blowup;
    if (p.dim == 1) {
      auto r = integrate_1d(cfg, n, cfl);
      blowup = r.blowup;
      if (!blowup) {
        auto exact0 = exact_component(p, 0);
        Norms e = cfg.postprocess ? error_norms_filtered(r.field, exact0, cfg.tfinal)
                                  : error_norms(r.field, exact0, cfg.tfinal);
        linf = e.linf;
      }
    } else {
      auto r = integrate_2d(cfg, n, cfl);
      blowup = r.blowup;
      if (!blowup) linf = error_norms_2d(r.field, p.exact_2d, 0, cfg.tfinal).linf;
    }
    out.rows.push_back({cfl, linf, blowup ? 1.0 : 0.0});
  }
  return out;
}

RunResult run_mass_tracking(const RunConfig& cfg) {
  validate_config(cfg);
  const ProblemSpec& p = find_problem(cfg.problem);
  RunResult out;
  out.manifest = cfg.manifest();
  out.columns = {"t"};
  for (int c = 0; c < p.n_comp; ++c) out.columns.push_back("mass_err_" + std::to_string(c));
  if (p.dim == 1) {
    auto r = integrate_1d(cfg, cfg.meshes.front(), cfg.cfls.front(), true);
    for (const auto& row : r.mass) {
      std::vector<double> v = {row.t};
      v.insert(v.end(), row.drift.begin(), row.drift.end());
      out.rows.push_back(v);
    }
  } else {
    // stepwise tracking for 2D
    const int n = cfg.meshes.front();
    SchemeVariant variant = SchemeVariant::parse(cfg.scheme);
    NuMode nu_mode = variant.zero_nu ? NuMode::zero : NuMode::characteristic;
    auto mx = make_uniform_mesh(p.lo_x, p.hi_x, n);
    auto my = make_uniform_mesh(p.lo_y, p.hi_y, n);
    SweepSystems sw = p.sweep_systems();
    ButcherTableau rk = ButcherTableau::from_tag(cfg.rk);
    StepOptions opt;
    opt.limiter_m = cfg.limiter_m;
    Field2D U = interpolate_2d(mx, my, cfg.degree, p.n_comp,
                               [&](double x, double y, double* u) { p.ic_2d(x, y, u); });
    const double cfl = cfg.cfls.front();
    const double dt0 = cfl / (p.max_speed_x() / mx->dx(0) + p.max_speed_y() / my->dx(0));
    const int n_steps = static_cast<int>(std::ceil(cfg.tfinal / dt0 - 1e-9));
    auto m0 = total_mass_2d(U);
    std::vector<double> r0 = {0.0};
    r0.insert(r0.end(), p.n_comp, 0.0);
    out.rows.push_back(r0);
    SweepWorkspace ws;
    double t = 0.0;
    const bool fourth = cfg.split == "fourth";
    for (int step = 0; step < n_steps; ++step) {
      double dt = std::min(dt0, cfg.tfinal - t);
      U = fourth ? fourth_order_step(U, t, dt, rk, sw, nu_mode, opt, &ws)
                 : strang_step(U, t, dt, rk, sw, nu_mode, opt, &ws);
      t += dt;
      auto m = total_mass_2d(U);
      std::vector<double> row = {t};
      for (int c = 0; c < p.n_comp; ++c) row.push_back(std::abs(m[c] - m0[c]));
      out.rows.push_back(row);
    }
  }
  return out;
}

RunResult run_solve(const RunConfig& cfg) {
  validate_config(cfg);
  const ProblemSpec& p = find_problem(cfg.problem);
  RunResult out;
  out.manifest = cfg.manifest();
  if (p.dim == 1) {
    auto r = integrate_1d(cfg, cfg.meshes.front(), cfg.cfls.front());
    out.columns = {"x"};
    for (int c = 0; c < p.n_comp; ++c) out.columns.push_back("u" + std::to_string(c + 1));
    if (p.has_exact())
      for (int c = 0; c < p.n_comp; ++c)
        out.columns.push_back("exact" + std::to_string(c + 1));
    out.columns.push_back("blowup");
    std::optional<SiacFiltered> filt;
    if (cfg.postprocess && !r.blowup) filt.emplace(r.field);
    for (int j = 0; j < r.field.mesh->n_cells(); ++j) {
      double x = r.field.mesh->cell_center(j);
      std::vector<double> row = {x};
      for (int c = 0; c < p.n_comp; ++c)
        row.push_back(filt ? (*filt)(c, x) : r.field.eval(j, c, 0.0));
      if (p.has_exact()) {
        double u[kMaxComp];
        p.exact_1d(x, cfg.tfinal, u);
        for (int c = 0; c < p.n_comp; ++c) row.push_back(u[c]);
      }
      row.push_back(r.blowup ? 1.0 : 0.0);
      out.rows.push_back(row);
    }
  } else {
    auto r = integrate_2d(cfg, cfg.meshes.front(), cfg.cfls.front());
    out.columns = {"x", "y"};
    for (int c = 0; c < p.n_comp; ++c) out.columns.push_back("u" + std::to_string(c + 1));
    if (p.has_exact())
      for (int c = 0; c < p.n_comp; ++c)
        out.columns.push_back("exact" + std::to_string(c + 1));
    out.columns.push_back("blowup");
    const int K = r.field.nodes_1d();
    for (int jy = 0; jy < r.field.mesh_y->n_cells(); ++jy)
      for (int ix = 0; ix < r.field.mesh_x->n_cells(); ++ix) {
        double x = r.field.mesh_x->cell_center(ix);
        double y = r.field.mesh_y->cell_center(jy);
        std::vector<double> row = {x, y};
        // cell average from the tensor Gauss nodes
        const auto& rule = QuadratureRule::gauss(K);
        for (int c = 0; c < p.n_comp; ++c) {
          double acc = 0.0;
          for (int qy = 0; qy < K; ++qy)
            for (int qx = 0; qx < K; ++qx)
              acc += 0.25 * rule.weights[qx] * rule.weights[qy] *
                     r.field.at(ix, jy, c, qx, qy);
          row.push_back(acc);
        }
        if (p.has_exact()) {
          double u[kMaxComp];
          p.exact_2d(x, y, cfg.tfinal, u);
          for (int c = 0; c < p.n_comp; ++c) row.push_back(u[c]);
        }
        row.push_back(r.blowup ? 1.0 : 0.0);
        out.rows.push_back(row);
      }
  }
  return out;
}

void write_csv(const RunResult& result, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open output file: " + path);
  os << result.manifest << "\n";
  for (size_t i = 0; i < result.columns.size(); ++i)
    os << (i ? "," : "") << result.columns[i];
  os << "\n";
  char buf[32];
  for (const auto& row : result.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.6e", row[i]);
      os << (i ? "," : "") << buf;
    }
    os << "\n";
  }
}

}  // namespace eldg
