#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "eldg/char_system.hpp"
#include "eldg/field.hpp"
#include "eldg/mesh.hpp"
#include "eldg/projection.hpp"
#include "eldg/rk.hpp"

namespace eldg {

struct StepOptions {
  // Localized variant: cellwise-constant eigenvector weights, no
  // derivative-correction term.  Loses exact mass conservation by design.
  bool nmc = false;
  // TVB minmod limiting (constant M) applied on the background mesh at every
  // RK stage when set.
  std::optional<double> limiter_m;
};

// Per-family node velocities, [family][unique node 0..N-1].
using NodeVelocities = std::vector<std::vector<double>>;

namespace detail {
struct PlanData;
}

// Geometry, overlap and basis tables shared by every stage of one step:
// cross-sections of the family dynamic elements at each needed time offset.
// Reusable across steps while (mesh, velocities, dt, tableau, degree) hold.
class StepPlan {
 public:
  StepPlan();
  ~StepPlan();
  StepPlan(StepPlan&&) noexcept;
  StepPlan& operator=(StepPlan&&) noexcept;

  const std::shared_ptr<const detail::PlanData>& data() const { return data_; }

 private:
  friend StepPlan build_step_plan(std::shared_ptr<const Mesh1D>, const NodeVelocities&,
                                  double, const ButcherTableau&, int);
  std::shared_ptr<const detail::PlanData> data_;
};

StepPlan build_step_plan(std::shared_ptr<const Mesh1D> mesh, const NodeVelocities& nu,
                         double dt, const ButcherTableau& rk, int degree);

// One full EL-RK step from the background mesh at time t to t+dt.  Every
// intermediate stage solution is produced on the background mesh via
// auxiliary dynamic elements anchored at the stage time; the final update
// accumulates stage rates over the family dynamic elements.
DGField el_rk_step(const DGField& U, double t, double dt, const ButcherTableau& rk,
                   const CharSystem& sys, const NodeVelocities& nu,
                   const StepOptions& opt = {}, const StepPlan* plan = nullptr);

DGField forward_euler_step(const DGField& U, double t, double dt, const CharSystem& sys,
                           const NodeVelocities& nu, const StepOptions& opt = {});

// Lax-Friedrichs flux of one (row, family) pair at a moving interface:
//   r^p_{row,fam} l_p^{(fam)} . 1/2[(A - nu I)(U+ + U-) - a_lf (U+ - U-)],
// a_lf = max over families m of |lambda^(m)(x) - nu^(m)|.
double family_flux(const double* U_minus, const double* U_plus, double x, double t,
                   std::span<const double> nu_at_interface, int row, int family,
                   const CharSystem& sys);

// Semi-discrete moment rates d/dt \int w_{r,i} U psi_m of one family at time t:
// boundary fluxes, flux volume term, derivative-correction volume term
// (evaluated with the background-mesh field, subinterval-by-subinterval) and
// source term.  frame_field must live on the family cross-section at time t.
// Output layout: [cell][row][mode].
std::vector<double> family_rhs(const DGField& frame_field, const DGField& background_field,
                               const UpstreamMesh& elems, double t, int family,
                               const CharSystem& sys, const NodeVelocities& nu,
                               const StepOptions& opt = {});

}  // namespace eldg
