#include "eldg/stabilization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eldg/basis.hpp"

namespace eldg {

namespace {

// TVB-corrected minmod; reports whether the first argument survived.
double minmod_tvb(double a1, double a2, double a3, double m_dx2, bool* modified) {
  if (std::abs(a1) <= m_dx2) {
    *modified = false;
    return a1;
  }
  if ((a1 > 0.0) == (a2 > 0.0) && (a2 > 0.0) == (a3 > 0.0)) {
    double s = a1 > 0.0 ? 1.0 : -1.0;
    double v = s * std::min({std::abs(a1), std::abs(a2), std::abs(a3)});
    *modified = v != a1;
    return v;
  }
  *modified = a1 != 0.0;
  return 0.0;
}

}  // namespace

void tvd_limit_inplace(DGField& field, double m_param) {
  const int N = field.mesh->n_cells();
  const int k = field.degree;
  if (k < 1) return;
  for (int c = 0; c < field.n_comp; ++c) {
    // means first; limiting rewrites higher modes only
    std::vector<double> mean(N);
    for (int j = 0; j < N; ++j) mean[j] = field.at(j, c, 0);
    for (int j = 0; j < N; ++j) {
      const double dxj = field.mesh->dx(j);
      const double m_dx2 = m_param * dxj * dxj;
      const double dp = mean[(j + 1) % N] - mean[j];
      const double dm = mean[j] - mean[(j + N - 1) % N];
      double* coef = field.cell_comp(j, c);
      double right_dev = 0.0, left_dev = 0.0;
      for (int m = 1; m <= k; ++m) {
        right_dev += coef[m];
        left_dev += (m % 2 == 0 ? -coef[m] : coef[m]);
      }
      bool mod_r = false, mod_l = false;
      minmod_tvb(right_dev, dp, dm, m_dx2, &mod_r);
      minmod_tvb(left_dev, dp, dm, m_dx2, &mod_l);
      if (mod_r || mod_l) {
        bool dummy;
        double slope = minmod_tvb(coef[1], dp, dm, m_dx2, &dummy);
        coef[1] = slope;
        for (int m = 2; m <= k; ++m) coef[m] = 0.0;
      }
    }
  }
}

DGField tvd_limit(const DGField& field, double m_param) {
  DGField out = field;
  tvd_limit_inplace(out, m_param);
  return out;
}

double bspline_eval(int order, double y) {
  if (order == 1) return (y >= -0.5 && y < 0.5) ? 1.0 : 0.0;
  double half = 0.5 * order;
  if (y <= -half || y >= half) return 0.0;
  return ((half + y) * bspline_eval(order - 1, y + 0.5) +
          (half - y) * bspline_eval(order - 1, y - 0.5)) /
         (order - 1);
}

namespace {

// Raw moments of the central B-spline of the given order, mu[i] = int B y^i.
std::vector<double> bspline_moments(int order, int max_i) {
  std::vector<double> mu(max_i + 1, 0.0);
  for (int i = 0; i <= max_i; ++i)
    mu[i] = i % 2 ? 0.0 : std::pow(0.5, i) / (i + 1.0);
  std::vector<double> binom((max_i + 1) * (max_i + 1), 0.0);
  for (int i = 0; i <= max_i; ++i) {
    binom[i * (max_i + 1)] = 1.0;
    for (int l = 1; l <= i; ++l)
      binom[i * (max_i + 1) + l] =
          binom[(i - 1) * (max_i + 1) + l - 1] +
          (l <= i - 1 ? binom[(i - 1) * (max_i + 1) + l] : 0.0);
  }
  // convolution with the order-1 spline adds its moments binomially
  std::vector<double> unit = mu;
  for (int p = 2; p <= order; ++p) {
    std::vector<double> next(max_i + 1, 0.0);
    for (int i = 0; i <= max_i; ++i)
      for (int l = 0; l <= i; ++l)
        next[i] += binom[i * (max_i + 1) + l] * mu[l] * unit[i - l];
    mu = next;
  }
  return mu;
}

// Dense solve with partial pivoting; the systems are (2k+1)^2 at most.
void solve_dense(std::vector<double>& A, std::vector<double>& rhs, int n) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r * n + col]) > std::abs(A[piv * n + col])) piv = r;
    if (piv != col) {
      for (int cc = 0; cc < n; ++cc) std::swap(A[col * n + cc], A[piv * n + cc]);
      std::swap(rhs[col], rhs[piv]);
    }
    double d = A[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      double f = A[r * n + col] / d;
      for (int cc = col; cc < n; ++cc) A[r * n + cc] -= f * A[col * n + cc];
      rhs[r] -= f * rhs[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double v = rhs[r];
    for (int cc = r + 1; cc < n; ++cc) v -= A[r * n + cc] * rhs[cc];
    rhs[r] = v / A[r * n + r];
  }
}

}  // namespace

SiacKernel SiacKernel::make(int degree) {
  const int n = 2 * degree + 1;
  const int order = degree + 1;
  auto mu = bspline_moments(order, 2 * degree);
  // reproduce x^m, m = 0..2k: sum_g c_g int B(y-g) y^m dy = delta_{m0}
  std::vector<double> A(static_cast<size_t>(n) * n), rhs(n, 0.0);
  rhs[0] = 1.0;
  for (int m = 0; m < n; ++m) {
    for (int gi = 0; gi < n; ++gi) {
      double gamma = gi - degree;
      double moment = 0.0, bin = 1.0, gpow = 1.0;
      // int B(y)(y+gamma)^m dy expanded binomially
      for (int l = m; l >= 0; --l) {
        moment += bin * gpow * mu[l];
        bin *= static_cast<double>(l) / (m - l + 1);
        gpow *= gamma;
      }
      A[static_cast<size_t>(m) * n + gi] = moment;
    }
  }
  solve_dense(A, rhs, n);
  SiacKernel kern;
  kern.degree = degree;
  kern.weights = rhs;
  return kern;
}

double SiacKernel::eval(double eta) const {
  const int n = 2 * degree + 1;
  double v = 0.0;
  for (int gi = 0; gi < n; ++gi)
    v += weights[gi] * bspline_eval(degree + 1, eta - (gi - degree));
  return v;
}

SiacFiltered::SiacFiltered(DGField field)
    : field_(std::move(field)), kernel_(SiacKernel::make(field_.degree)) {
  if (!field_.mesh->uniform())
    throw std::invalid_argument("siac_filter: uniform mesh required");
  if (!field_.mesh->periodic)
    throw std::invalid_argument("siac_filter: periodic field required");
  h_ = field_.mesh->dx(0);
}

double SiacFiltered::operator()(int comp, double x) const {
  const double S = kernel_.support();
  const auto& mesh = *field_.mesh;
  // breakpoints in the kernel variable: kernel knots and mesh-node images
  std::vector<double> cuts;
  for (int i = 0; i <= 3 * field_.degree + 1; ++i) cuts.push_back(-S + i);
  double eta_of_node0 = (x - mesh.nodes[0]) / h_;
  // node images at eta = (x - node_s - p L)/h land on an integer lattice
  double base = eta_of_node0 - std::floor(eta_of_node0);
  for (double e = base - std::ceil(S + 1.0); e <= S + 1.0; e += 1.0)
    if (e > -S + 1e-13 && e < S - 1e-13) cuts.push_back(e);
  std::sort(cuts.begin(), cuts.end());

  const auto& rule = QuadratureRule::gauss(default_quad_points(field_.degree));
  double acc = 0.0;
  for (size_t p = 0; p + 1 < cuts.size(); ++p) {
    double lo = cuts[p], hi = cuts[p + 1];
    if (hi - lo < 1e-14) continue;
    double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (int q = 0; q < rule.size(); ++q) {
      double eta = mid + half * rule.nodes[q];
      acc += rule.weights[q] * half * kernel_.eval(eta) * field_.eval_at(x - h_ * eta, comp);
    }
  }
  return acc;
}

}  // namespace eldg
