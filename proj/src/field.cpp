#include "eldg/field.hpp"

#include <algorithm>
#include <cmath>

#include "eldg/basis.hpp"

namespace eldg {

double DGField::eval(int cell, int comp, double xi) const {
  const double* c = cell_comp(cell, comp);
  double p0 = 1.0, p1 = xi;
  double v = c[0];
  if (degree >= 1) v += c[1] * p1;
  for (int m = 2; m <= degree; ++m) {
    double p2 = ((2.0 * m - 1.0) * xi * p1 - (m - 1.0) * p0) / m;
    v += c[m] * p2;
    p0 = p1;
    p1 = p2;
  }
  return v;
}

double DGField::eval_at(double x, int comp) const {
  auto loc = mesh->locate(x);
  return eval(loc.cell, comp, mesh->reference_coord(loc.cell, loc.local));
}

DGField DGField::zeros(std::shared_ptr<const Mesh1D> mesh, int degree, int n_comp) {
  DGField f;
  f.mesh = std::move(mesh);
  f.degree = degree;
  f.n_comp = n_comp;
  f.coeff.assign(static_cast<size_t>(f.mesh->n_cells()) * n_comp * (degree + 1), 0.0);
  return f;
}

DGField project_function(std::shared_ptr<const Mesh1D> mesh, int degree, int n_comp,
                         const std::function<void(double, double*)>& f,
                         const std::vector<double>& breakpoints, int quad_points) {
  DGField out = DGField::zeros(mesh, degree, n_comp);
  const auto& rule = QuadratureRule::gauss(quad_points);
  std::vector<double> psi(degree + 1), vals(n_comp);
  for (int j = 0; j < mesh->n_cells(); ++j) {
    double a = mesh->cell_lo(j), b = mesh->cell_hi(j);
    std::vector<double> cuts = {a, b};
    for (double s : breakpoints)
      if (s > a + 1e-14 * (b - a) && s < b - 1e-14 * (b - a)) cuts.push_back(s);
    std::sort(cuts.begin(), cuts.end());
    for (size_t p = 0; p + 1 < cuts.size(); ++p) {
      double lo = cuts[p], hi = cuts[p + 1];
      double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
      for (int q = 0; q < rule.size(); ++q) {
        double x = mid + half * rule.nodes[q];
        double w = rule.weights[q] * half;
        double xi = mesh->reference_coord(j, x);
        legendre_all(degree, xi, psi.data());
        f(x, vals.data());
        for (int c = 0; c < n_comp; ++c)
          for (int m = 0; m <= degree; ++m) out.at(j, c, m) += w * vals[c] * psi[m];
      }
    }
    for (int c = 0; c < n_comp; ++c)
      for (int m = 0; m <= degree; ++m)
        out.at(j, c, m) /= mesh->dx(j) / (2.0 * m + 1.0);
  }
  return out;
}

std::vector<double> total_mass(const DGField& field) {
  std::vector<double> mass(field.n_comp, 0.0);
  for (int j = 0; j < field.mesh->n_cells(); ++j)
    for (int c = 0; c < field.n_comp; ++c)
      mass[c] += field.at(j, c, 0) * field.mesh->dx(j);
  return mass;
}

double l2_norm(const DGField& field) {
  double s = 0.0;
  for (int j = 0; j < field.mesh->n_cells(); ++j)
    for (int c = 0; c < field.n_comp; ++c)
      for (int m = 0; m <= field.degree; ++m) {
        double v = field.at(j, c, m);
        s += v * v * field.mesh->dx(j) / (2.0 * m + 1.0);
      }
  return std::sqrt(s);
}

}  // namespace eldg
