#pragma once

#include <functional>
#include <vector>

#include "eldg/field.hpp"
#include "eldg/mesh.hpp"
#include "eldg/rk.hpp"
#include "eldg/system.hpp"

namespace eldg {

// 1D linear transport u_t + (a(x,t)u)_x = 0 on a periodic interval.
struct ScalarProblem {
  std::function<double(double, double)> velocity;  // a(x,t), continuous in x
  std::function<double(double)> u0;
  std::function<double(double, double)> exact;  // optional
  double lo = 0.0;
  double hi = 1.0;
};

// Semi-discrete moment rates d/dt \int u psi_m over the moving cells at time
// t: Lax-Friedrichs boundary fluxes of F(u) = (a - alpha) u plus the volume
// term \int F psi_x.  The field must live on the element cross-section at t.
// Output layout: [cell][mode].
std::vector<double> scalar_rhs(const DGField& frame_field, const UpstreamMesh& elems,
                               double t, const ScalarProblem& problem);

// One EL-RK step: trace upstream with node velocities frozen at t+dt, project,
// integrate the moving-frame system, land on the background mesh.
DGField step_scalar(const DGField& U, double t, double dt, const ButcherTableau& rk,
                    const ScalarProblem& problem);

}  // namespace eldg
