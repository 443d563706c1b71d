#pragma once

#include <memory>
#include <span>
#include <vector>

namespace eldg {

// Partition of a (periodic) interval into cells.
struct Mesh1D {
  double domain_lo = 0.0;
  double domain_hi = 0.0;
  std::vector<double> nodes;  // N+1 strictly increasing, nodes.front()==domain_lo, nodes.back()==domain_hi
  bool periodic = true;

  int n_cells() const { return static_cast<int>(nodes.size()) - 1; }
  double length() const { return domain_hi - domain_lo; }
  double cell_lo(int j) const { return nodes[j]; }
  double cell_hi(int j) const { return nodes[j + 1]; }
  double cell_center(int j) const { return 0.5 * (nodes[j] + nodes[j + 1]); }
  double dx(int j) const { return nodes[j + 1] - nodes[j]; }
  double min_dx() const;
  double max_dx() const;
  bool uniform(double rel_tol = 1e-12) const;

  // Map an unwrapped coordinate to (cell, period shift): x - shift*length()
  // lies in [domain_lo, domain_hi) and inside the returned cell.
  struct Location {
    int cell;
    int shift;
    double local;  // wrapped coordinate
  };
  Location locate(double x) const;
  double wrap(double x) const;
  // Reference coordinate of a wrapped position inside cell j.
  double reference_coord(int j, double x_local) const {
    return (2.0 * x_local - nodes[j] - nodes[j + 1]) / dx(j);
  }
};

Mesh1D build_uniform_mesh(double lo, double hi, int n);
std::shared_ptr<const Mesh1D> make_uniform_mesh(double lo, double hi, int n);

// Space-time trapezoid: a background cell swept backwards in time along
// straight node trajectories.  The interval equals the background cell at
// t_end and the upstream cell at t_start.
struct DynamicElement {
  int cell = -1;
  double nu_left = 0.0;
  double nu_right = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;
  double back_lo = 0.0;
  double back_hi = 0.0;
  double upstream_lo = 0.0;  // back_lo - (t_end - t_start)*nu_left, unwrapped
  double upstream_hi = 0.0;

  double lo_at(double t) const { return back_lo - (t_end - t) * nu_left; }
  double hi_at(double t) const { return back_hi - (t_end - t) * nu_right; }
  double width_at(double t) const { return hi_at(t) - lo_at(t); }

  // Frozen transport velocity: linear in x between the two node velocities
  // along the moving interval; equals nu_left/nu_right at the moving endpoints.
  double alpha(double x, double t) const {
    double lo = lo_at(t), hi = hi_at(t);
    double w = hi - lo;
    return (nu_right * (x - lo) - nu_left * (x - hi)) / w;
  }
  double alpha_checked(double x, double t) const;  // std::out_of_range outside element

  double reference_coord(double x, double t) const {
    double lo = lo_at(t), hi = hi_at(t);
    return (2.0 * x - lo - hi) / (hi - lo);
  }
  double reference_coord_checked(double x, double t) const;
  bool contains(double x, double t, double tol = 1e-12) const;
};

// The upstream cells of one characteristic family over one time interval.
struct UpstreamMesh {
  std::shared_ptr<const Mesh1D> source;
  std::vector<DynamicElement> elements;
  std::vector<double> node_velocity;  // one per unique periodic node (size N)
  double dt = 0.0;

  // Upstream interval endpoints as a mesh in the traced (unwrapped) frame.
  std::shared_ptr<const Mesh1D> upstream_as_mesh() const;
};

// Trace every background cell upstream by dt along per-node velocities.
// node_velocities has either N entries (one per unique periodic node) or N+1
// entries whose first and last agree.  dt may be negative (downstream trace).
// Throws inverted_element_error if any traced cell has non-positive width.
UpstreamMesh trace_upstream(std::shared_ptr<const Mesh1D> mesh,
                            std::span<const double> node_velocities, double dt);

double alpha_eval(const DynamicElement& elem, double x, double t);

}  // namespace eldg
