#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "eldg/mesh.hpp"

namespace eldg {

// Piecewise-polynomial DG solution: Legendre modal coefficients per cell and
// component.  Immutable meshes are shared; coefficient storage is frame-free
// (periodic images are handled by the evaluation site, not the data).
struct DGField {
  std::shared_ptr<const Mesh1D> mesh;
  int degree = 0;
  int n_comp = 1;
  double time_tag = 0.0;
  std::vector<double> coeff;  // [cell][comp][mode]

  int modes() const { return degree + 1; }
  double& at(int cell, int comp, int mode) {
    return coeff[(static_cast<size_t>(cell) * n_comp + comp) * modes() + mode];
  }
  double at(int cell, int comp, int mode) const {
    return coeff[(static_cast<size_t>(cell) * n_comp + comp) * modes() + mode];
  }
  const double* cell_comp(int cell, int comp) const {
    return &coeff[(static_cast<size_t>(cell) * n_comp + comp) * modes()];
  }
  double* cell_comp(int cell, int comp) {
    return &coeff[(static_cast<size_t>(cell) * n_comp + comp) * modes()];
  }

  // Value at reference coordinate xi within a cell.
  double eval(int cell, int comp, double xi) const;
  // Value at an unwrapped physical coordinate.
  double eval_at(double x, int comp) const;

  static DGField zeros(std::shared_ptr<const Mesh1D> mesh, int degree, int n_comp);
};

// L2 projection of a smooth (or piecewise-smooth) function onto the DG space.
// breakpoints: known discontinuity locations; cell quadrature splits there.
DGField project_function(std::shared_ptr<const Mesh1D> mesh, int degree, int n_comp,
                         const std::function<void(double, double*)>& f,
                         const std::vector<double>& breakpoints = {},
                         int quad_points = 10);

// Exact per-component integral over the domain (mode-0 coefficients only).
std::vector<double> total_mass(const DGField& field);

// Global L2 norm over all components (exact from orthogonality).
double l2_norm(const DGField& field);

}  // namespace eldg
