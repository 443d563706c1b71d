#include "eldg/scalar.hpp"

#include <stdexcept>

#include "eldg/char_system.hpp"

namespace eldg {

std::vector<double> scalar_rhs(const DGField& frame_field, const UpstreamMesh& elems,
                               double t, const ScalarProblem& problem) {
  if (frame_field.n_comp != 1)
    throw std::invalid_argument("scalar_rhs: one-component field required");
  CharSystem sys = scalar_system(problem.velocity);
  NodeVelocities nu{elems.node_velocity};
  return family_rhs(frame_field, frame_field, elems, t, 0, sys, nu);
}

DGField step_scalar(const DGField& U, double t, double dt, const ButcherTableau& rk,
                    const ScalarProblem& problem) {
  CharSystem sys = scalar_system(problem.velocity);
  const int N = U.mesh->n_cells();
  NodeVelocities nu(1, std::vector<double>(N));
  for (int s = 0; s < N; ++s) nu[0][s] = problem.velocity(U.mesh->nodes[s], t + dt);
  return el_rk_step(U, t, dt, rk, sys, nu);
}

}  // namespace eldg
