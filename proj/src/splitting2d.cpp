#include "eldg/splitting2d.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "eldg/basis.hpp"

namespace eldg {

Field2D Field2D::zeros(std::shared_ptr<const Mesh1D> mx, std::shared_ptr<const Mesh1D> my,
                       int degree, int n_comp) {
  Field2D f;
  f.mesh_x = std::move(mx);
  f.mesh_y = std::move(my);
  f.degree = degree;
  f.n_comp = n_comp;
  f.vals.assign(static_cast<size_t>(f.mesh_x->n_cells()) * f.mesh_y->n_cells() * n_comp *
                    (degree + 1) * (degree + 1),
                0.0);
  return f;
}

const std::vector<double>& tensor_nodes(int degree) {
  return QuadratureRule::gauss(degree + 1).nodes;
}

Field2D interpolate_2d(std::shared_ptr<const Mesh1D> mx, std::shared_ptr<const Mesh1D> my,
                       int degree, int n_comp,
                       const std::function<void(double, double, double*)>& f) {
  Field2D out = Field2D::zeros(std::move(mx), std::move(my), degree, n_comp);
  const auto& xi = tensor_nodes(degree);
  std::vector<double> u(n_comp);
  for (int jy = 0; jy < out.mesh_y->n_cells(); ++jy)
    for (int ix = 0; ix < out.mesh_x->n_cells(); ++ix) {
      double xc = out.mesh_x->cell_center(ix), hx = 0.5 * out.mesh_x->dx(ix);
      double yc = out.mesh_y->cell_center(jy), hy = 0.5 * out.mesh_y->dx(jy);
      for (int qy = 0; qy <= degree; ++qy)
        for (int qx = 0; qx <= degree; ++qx) {
          f(xc + hx * xi[qx], yc + hy * xi[qy], u.data());
          for (int c = 0; c < n_comp; ++c) out.at(ix, jy, c, qx, qy) = u[c];
        }
    }
  return out;
}

namespace {

// Nodal values at (k+1) Gauss points <-> modal Legendre coefficients; the
// discrete transform is exact for degree-k data.
struct NodalModal {
  int k;
  std::vector<double> to_modal;  // [m][q]
  std::vector<double> to_nodal;  // [q][m]
  explicit NodalModal(int degree) : k(degree) {
    const int K = degree + 1;
    const auto& rule = QuadratureRule::gauss(K);
    to_modal.resize(static_cast<size_t>(K) * K);
    to_nodal.resize(static_cast<size_t>(K) * K);
    std::vector<double> psi(K);
    for (int q = 0; q < K; ++q) {
      legendre_all(degree, rule.nodes[q], psi.data());
      for (int m = 0; m < K; ++m) {
        to_modal[static_cast<size_t>(m) * K + q] =
            0.5 * (2 * m + 1) * rule.weights[q] * psi[m];
        to_nodal[static_cast<size_t>(q) * K + m] = psi[m];
      }
    }
  }
};

const NodalModal& nodal_modal(int degree) {
  static std::mutex mu;
  static std::map<int, NodalModal> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(degree);
  if (it == cache.end()) it = cache.emplace(degree, NodalModal(degree)).first;
  return it->second;
}

NodeVelocities line_velocities(const CharSystem& sys, const Mesh1D& mesh, NuMode mode) {
  const int N = mesh.n_cells();
  NodeVelocities nu(sys.n_comp, std::vector<double>(N, 0.0));
  if (mode == NuMode::zero) return nu;
  double lam[kMaxComp];
  for (int s = 0; s < N; ++s) {
    sys.eigenvalues(mesh.nodes[s], 0.0, lam);
    for (int i = 0; i < sys.n_comp; ++i) nu[i][s] = lam[i];
  }
  return nu;
}

enum Axis { kX = 0, kY = 1 };

Field2D sweep(const Field2D& state, double t, double dt, const ButcherTableau& rk,
              const SweepSystems& sys, NuMode nu_mode, const StepOptions& opt,
              SweepWorkspace* ws, Axis axis) {
  const auto& line_mesh = axis == kX ? state.mesh_x : state.mesh_y;
  const auto& perp_mesh = axis == kX ? state.mesh_y : state.mesh_x;
  const bool uniform = axis == kX ? sys.uniform_x : sys.uniform_y;
  const auto& make_system = axis == kX ? sys.x_system : sys.y_system;
  const int K = state.nodes_1d();
  const int nc = state.n_comp;
  const int n_line = line_mesh->n_cells();
  const auto& nm = nodal_modal(state.degree);
  const auto& xi = tensor_nodes(state.degree);

  Field2D out = state;
  out.time_tag = t + dt;

  CharSystem line_sys;
  NodeVelocities nu;
  const StepPlan* plan = nullptr;
  StepPlan local_plan;
  if (uniform) {
    line_sys = make_system(perp_mesh->cell_center(0));
    nu = line_velocities(line_sys, *line_mesh, nu_mode);
    if (ws) {
      auto key = std::make_pair(static_cast<int>(axis), dt);
      auto it = ws->plans.find(key);
      if (it == ws->plans.end())
        it = ws->plans.emplace(key, build_step_plan(line_mesh, nu, dt, rk, state.degree))
                 .first;
      plan = &it->second;
    } else {
      local_plan = build_step_plan(line_mesh, nu, dt, rk, state.degree);
      plan = &local_plan;
    }
  }

  DGField line = DGField::zeros(line_mesh, state.degree, nc);
  for (int jp = 0; jp < perp_mesh->n_cells(); ++jp) {
    double pc = perp_mesh->cell_center(jp), ph = 0.5 * perp_mesh->dx(jp);
    for (int qp = 0; qp < K; ++qp) {
      const double coord = pc + ph * xi[qp];
      if (!uniform) {
        line_sys = make_system(coord);
        nu = line_velocities(line_sys, *line_mesh, nu_mode);
      }
      // gather the line, nodal -> modal per cell
      for (int jl = 0; jl < n_line; ++jl)
        for (int c = 0; c < nc; ++c) {
          double* coef = line.cell_comp(jl, c);
          for (int m = 0; m < K; ++m) {
            double v = 0.0;
            for (int q = 0; q < K; ++q) {
              double nodal = axis == kX ? state.at(jl, jp, c, q, qp)
                                        : state.at(jp, jl, c, qp, q);
              v += nm.to_modal[static_cast<size_t>(m) * K + q] * nodal;
            }
            coef[m] = v;
          }
        }
      DGField evolved = uniform
                            ? el_rk_step(line, t, dt, rk, line_sys, nu, opt, plan)
                            : el_rk_step(line, t, dt, rk, line_sys, nu, opt);
      // modal -> nodal, scatter back
      for (int jl = 0; jl < n_line; ++jl)
        for (int c = 0; c < nc; ++c) {
          const double* coef = evolved.cell_comp(jl, c);
          for (int q = 0; q < K; ++q) {
            double v = 0.0;
            for (int m = 0; m < K; ++m)
              v += nm.to_nodal[static_cast<size_t>(q) * K + m] * coef[m];
            if (axis == kX)
              out.at(jl, jp, c, q, qp) = v;
            else
              out.at(jp, jl, c, qp, q) = v;
          }
        }
    }
  }
  return out;
}

}  // namespace

Field2D sweep_x(const Field2D& state, double t, double dt, const ButcherTableau& rk,
                const SweepSystems& sys, NuMode nu_mode, const StepOptions& opt,
                SweepWorkspace* ws) {
  return sweep(state, t, dt, rk, sys, nu_mode, opt, ws, kX);
}

Field2D sweep_y(const Field2D& state, double t, double dt, const ButcherTableau& rk,
                const SweepSystems& sys, NuMode nu_mode, const StepOptions& opt,
                SweepWorkspace* ws) {
  return sweep(state, t, dt, rk, sys, nu_mode, opt, ws, kY);
}

Field2D strang_step(const Field2D& state, double t, double dt, const ButcherTableau& rk,
                    const SweepSystems& sys, NuMode nu_mode, const StepOptions& opt,
                    SweepWorkspace* ws) {
  Field2D s1 = sweep_x(state, t, 0.5 * dt, rk, sys, nu_mode, opt, ws);
  Field2D s2 = sweep_y(s1, t, dt, rk, sys, nu_mode, opt, ws);
  return sweep_x(s2, t + 0.5 * dt, 0.5 * dt, rk, sys, nu_mode, opt, ws);
}

Field2D fourth_order_step(const Field2D& state, double t, double dt,
                          const ButcherTableau& rk, const SweepSystems& sys,
                          NuMode nu_mode, const StepOptions& opt, SweepWorkspace* ws) {
  const double g1 = 1.0 / (2.0 - std::cbrt(2.0));
  const double g2 = 1.0 - 2.0 * g1;  // negative middle substep
  Field2D s1 = strang_step(state, t, g1 * dt, rk, sys, nu_mode, opt, ws);
  Field2D s2 = strang_step(s1, t + g1 * dt, g2 * dt, rk, sys, nu_mode, opt, ws);
  return strang_step(s2, t + (g1 + g2) * dt, g1 * dt, rk, sys, nu_mode, opt, ws);
}

std::vector<double> total_mass_2d(const Field2D& state) {
  const int K = state.nodes_1d();
  const auto& rule = QuadratureRule::gauss(K);
  std::vector<double> mass(state.n_comp, 0.0);
  for (int jy = 0; jy < state.mesh_y->n_cells(); ++jy)
    for (int ix = 0; ix < state.mesh_x->n_cells(); ++ix) {
      double scale = 0.25 * state.mesh_x->dx(ix) * state.mesh_y->dx(jy);
      for (int c = 0; c < state.n_comp; ++c) {
        double acc = 0.0;
        for (int qy = 0; qy < K; ++qy)
          for (int qx = 0; qx < K; ++qx)
            acc += rule.weights[qx] * rule.weights[qy] * state.at(ix, jy, c, qx, qy);
        mass[c] += scale * acc;
      }
    }
  return mass;
}

double l2_norm_2d(const Field2D& state) {
  const int K = state.nodes_1d();
  const auto& rule = QuadratureRule::gauss(K);
  double acc = 0.0;
  for (int jy = 0; jy < state.mesh_y->n_cells(); ++jy)
    for (int ix = 0; ix < state.mesh_x->n_cells(); ++ix) {
      double scale = 0.25 * state.mesh_x->dx(ix) * state.mesh_y->dx(jy);
      for (int c = 0; c < state.n_comp; ++c)
        for (int qy = 0; qy < K; ++qy)
          for (int qx = 0; qx < K; ++qx) {
            double v = state.at(ix, jy, c, qx, qy);
            acc += scale * rule.weights[qx] * rule.weights[qy] * v * v;
          }
    }
  return std::sqrt(acc);
}

}  // namespace eldg
