#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eldg/char_system.hpp"
#include "eldg/mesh.hpp"
#include "eldg/splitting2d.hpp"
#include "eldg/system.hpp"

namespace eldg {

// A registered wave problem: coefficients, initial data and (when available)
// the exact solution, in 1D (two components u_t, u_x) or 2D.
struct ProblemSpec {
  std::string id;
  int dim = 1;
  int n_comp = 2;
  double lo_x = 0.0, hi_x = 1.0;
  double lo_y = 0.0, hi_y = 1.0;

  // 1D coefficients
  std::function<double(double)> a, a_dx;
  std::function<double(double, double)> source_f;  // f(x,t) of the first row
  std::function<void(double, double*)> ic_1d;
  std::function<void(double, double, double*)> exact_1d;
  std::vector<double> ic_breakpoints;
  bool exact_smooth = true;

  // 2D coefficients; for the constant-matrix system the sweep matrices are
  // provided directly via sweep_systems.
  std::function<void(double, double, double*)> ic_2d;
  std::function<void(double, double, double, double*)> exact_2d;
  std::function<SweepSystems()> sweep_systems;

  bool has_exact() const {
    return dim == 1 ? static_cast<bool>(exact_1d) : static_cast<bool>(exact_2d);
  }
  double max_speed_x() const;  // max eigenvalue magnitude, x direction
  double max_speed_y() const;
};

const ProblemSpec& find_problem(const std::string& id);
std::vector<std::string> problem_ids();

// Scheme variants: the conservative scheme with optional node-velocity and
// eigenvector-pair perturbations, the localized (nmc) counterparts, and the
// zero-velocity reduction (classical RK DG on the background mesh).
struct SchemeVariant {
  bool nmc = false;
  bool perturb_nu = false;
  bool perturb_ap = false;
  bool zero_nu = false;
  std::string name;

  static SchemeVariant parse(const std::string& id);  // throws std::invalid_argument
};

// Build the 1D characteristic system of a problem under a variant; dx feeds
// the perturbed consistent pair a_p(x) = a(x) + sin(x) dx.
CharSystem system_for(const ProblemSpec& problem, const SchemeVariant& variant, double dx);

// Per-family node velocities under a variant (perturbation sin(x_j) dx uses
// the left cell center of each node; the mirror family gets the negative).
NodeVelocities node_velocities_for(const ProblemSpec& problem, const SchemeVariant& variant,
                                   const Mesh1D& mesh, const CharSystem& sys);

// Finite-difference residual of the registered exact solution in the PDE;
// registry self-check.  Returns the max residual over sampled points.
double exact_solution_residual(const ProblemSpec& problem);

}  // namespace eldg
