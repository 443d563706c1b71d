#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "eldg/char_system.hpp"
#include "eldg/field.hpp"
#include "eldg/mesh.hpp"
#include "eldg/rk.hpp"
#include "eldg/system.hpp"

namespace eldg {

// Tensor-product solution on a 2D rectangular mesh: per cell, values at the
// (k+1)^2 tensor Gauss nodes.  The nodal<->modal maps per direction are exact
// for Q^k data.
struct Field2D {
  std::shared_ptr<const Mesh1D> mesh_x, mesh_y;
  int degree = 0;
  int n_comp = 1;
  double time_tag = 0.0;
  std::vector<double> vals;  // [cell_y][cell_x][comp][node_y][node_x]

  int nodes_1d() const { return degree + 1; }
  size_t cell_index(int ix, int jy) const {
    return static_cast<size_t>(jy) * mesh_x->n_cells() + ix;
  }
  double& at(int ix, int jy, int c, int qx, int qy) {
    return vals[(cell_index(ix, jy) * n_comp + c) * nodes_1d() * nodes_1d() +
                static_cast<size_t>(qy) * nodes_1d() + qx];
  }
  double at(int ix, int jy, int c, int qx, int qy) const {
    return vals[(cell_index(ix, jy) * n_comp + c) * nodes_1d() * nodes_1d() +
                static_cast<size_t>(qy) * nodes_1d() + qx];
  }

  static Field2D zeros(std::shared_ptr<const Mesh1D> mx, std::shared_ptr<const Mesh1D> my,
                       int degree, int n_comp);
};

// Gauss node abscissae used for the nodal representation.
const std::vector<double>& tensor_nodes(int degree);

// Interpolate a function at the tensor Gauss nodes.
Field2D interpolate_2d(std::shared_ptr<const Mesh1D> mx, std::shared_ptr<const Mesh1D> my,
                       int degree, int n_comp,
                       const std::function<void(double, double, double*)>& f);

// Per-line 1D systems of the dimensionally split problem.  The callable gets
// the transverse coordinate of the line; uniform_* declare that every line
// shares one system (enables geometry reuse across lines and steps).
struct SweepSystems {
  int n_comp = 1;
  std::function<CharSystem(double y)> x_system;
  std::function<CharSystem(double x)> y_system;
  bool uniform_x = false;
  bool uniform_y = false;
};

enum class NuMode { characteristic, zero };

// Reusable geometry across sweeps of equal step size (uniform systems only).
class SweepWorkspace {
 public:
  std::map<std::pair<int, double>, StepPlan> plans;
};

// Evolve every x Gauss line by one 1D EL-RK step of length dt.
Field2D sweep_x(const Field2D& state, double t, double dt, const ButcherTableau& rk,
                const SweepSystems& sys, NuMode nu_mode = NuMode::characteristic,
                const StepOptions& opt = {}, SweepWorkspace* ws = nullptr);
Field2D sweep_y(const Field2D& state, double t, double dt, const ButcherTableau& rk,
                const SweepSystems& sys, NuMode nu_mode = NuMode::characteristic,
                const StepOptions& opt = {}, SweepWorkspace* ws = nullptr);

// x(dt/2) . y(dt) . x(dt/2); second-order splitting error.
Field2D strang_step(const Field2D& state, double t, double dt, const ButcherTableau& rk,
                    const SweepSystems& sys, NuMode nu_mode = NuMode::characteristic,
                    const StepOptions& opt = {}, SweepWorkspace* ws = nullptr);

// Triple-jump composition of Strang steps; the negative middle substep traces
// characteristics downstream through the same machinery.
Field2D fourth_order_step(const Field2D& state, double t, double dt,
                          const ButcherTableau& rk, const SweepSystems& sys,
                          NuMode nu_mode = NuMode::characteristic,
                          const StepOptions& opt = {}, SweepWorkspace* ws = nullptr);

// Exact integral per component from the tensor Gauss representation.
std::vector<double> total_mass_2d(const Field2D& state);

double l2_norm_2d(const Field2D& state);

}  // namespace eldg
