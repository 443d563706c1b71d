#include "eldg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eldg/errors.hpp"

namespace eldg {

double Mesh1D::min_dx() const {
  double m = dx(0);
  for (int j = 1; j < n_cells(); ++j) m = std::min(m, dx(j));
  return m;
}

double Mesh1D::max_dx() const {
  double m = dx(0);
  for (int j = 1; j < n_cells(); ++j) m = std::max(m, dx(j));
  return m;
}

bool Mesh1D::uniform(double rel_tol) const {
  return max_dx() - min_dx() <= rel_tol * max_dx();
}

Mesh1D::Location Mesh1D::locate(double x) const {
  const double L = length();
  int shift = static_cast<int>(std::floor((x - domain_lo) / L));
  double local = x - shift * L;
  // floor roundoff can leave local marginally outside [lo, hi)
  if (local >= domain_hi) {
    local -= L;
    ++shift;
  } else if (local < domain_lo) {
    local += L;
    --shift;
  }
  auto it = std::upper_bound(nodes.begin(), nodes.end(), local);
  int cell = static_cast<int>(it - nodes.begin()) - 1;
  cell = std::clamp(cell, 0, n_cells() - 1);
  return {cell, shift, local};
}

double Mesh1D::wrap(double x) const { return locate(x).local; }

Mesh1D build_uniform_mesh(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("build_uniform_mesh: need n >= 1");
  if (!(hi > lo)) throw std::invalid_argument("build_uniform_mesh: need hi > lo");
  Mesh1D mesh;
  mesh.domain_lo = lo;
  mesh.domain_hi = hi;
  mesh.periodic = true;
  mesh.nodes.resize(n + 1);
  const double h = (hi - lo) / n;
  for (int i = 0; i <= n; ++i) mesh.nodes[i] = lo + i * h;
  mesh.nodes[0] = lo;
  mesh.nodes[n] = hi;
  return mesh;
}

std::shared_ptr<const Mesh1D> make_uniform_mesh(double lo, double hi, int n) {
  return std::make_shared<const Mesh1D>(build_uniform_mesh(lo, hi, n));
}

double DynamicElement::alpha_checked(double x, double t) const {
  if (!contains(x, t)) throw std::out_of_range("alpha: point outside dynamic element");
  return alpha(x, t);
}

double DynamicElement::reference_coord_checked(double x, double t) const {
  if (!contains(x, t))
    throw std::out_of_range("test function: point outside dynamic element");
  return reference_coord(x, t);
}

bool DynamicElement::contains(double x, double t, double tol) const {
  double tlo = std::min(t_start, t_end), thi = std::max(t_start, t_end);
  if (t < tlo - tol * (1.0 + thi - tlo) || t > thi + tol * (1.0 + thi - tlo)) return false;
  double lo = lo_at(t), hi = hi_at(t);
  double pad = tol * (hi - lo);
  return x >= lo - pad && x <= hi + pad;
}

UpstreamMesh trace_upstream(std::shared_ptr<const Mesh1D> mesh,
                            std::span<const double> node_velocities, double dt) {
  const int n = mesh->n_cells();
  std::vector<double> nu(n);
  if (static_cast<int>(node_velocities.size()) == n) {
    std::copy(node_velocities.begin(), node_velocities.end(), nu.begin());
  } else if (static_cast<int>(node_velocities.size()) == n + 1) {
    if (mesh->periodic &&
        std::abs(node_velocities[n] - node_velocities[0]) >
            1e-12 * (1.0 + std::abs(node_velocities[0])))
      throw std::invalid_argument(
          "trace_upstream: periodic mesh needs a single-valued velocity at the seam");
    std::copy(node_velocities.begin(), node_velocities.begin() + n, nu.begin());
  } else {
    throw std::invalid_argument("trace_upstream: need one velocity per node");
  }

  UpstreamMesh up;
  up.source = mesh;
  up.node_velocity = nu;
  up.dt = dt;
  up.elements.resize(n);

  // One traced endpoint per node, shared by both neighbors, so adjacent
  // upstream cells meet exactly.
  std::vector<double> traced(n + 1);
  for (int s = 0; s < n; ++s) traced[s] = mesh->nodes[s] - dt * nu[s];
  traced[n] = mesh->nodes[n] - dt * nu[0];

  for (int j = 0; j < n; ++j) {
    DynamicElement& e = up.elements[j];
    e.cell = j;
    e.nu_left = nu[j];
    e.nu_right = j + 1 == n ? nu[0] : nu[j + 1];
    e.t_start = 0.0;
    e.t_end = dt;
    e.back_lo = mesh->nodes[j];
    e.back_hi = mesh->nodes[j + 1];
    e.upstream_lo = traced[j];
    e.upstream_hi = traced[j + 1];
    double w = e.upstream_hi - e.upstream_lo;
    if (!(w > 0.0)) throw inverted_element_error(j, w);
  }
  return up;
}

std::shared_ptr<const Mesh1D> UpstreamMesh::upstream_as_mesh() const {
  auto m = std::make_shared<Mesh1D>();
  const int n = static_cast<int>(elements.size());
  m->nodes.resize(n + 1);
  for (int j = 0; j < n; ++j) m->nodes[j] = elements[j].upstream_lo;
  m->nodes[n] = elements[n - 1].upstream_hi;
  m->domain_lo = m->nodes[0];
  m->domain_hi = m->nodes[n];
  m->periodic = source->periodic;
  return m;
}

double alpha_eval(const DynamicElement& elem, double x, double t) {
  return elem.alpha_checked(x, t);
}

}  // namespace eldg
