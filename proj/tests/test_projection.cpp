#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "eldg/basis.hpp"
#include "eldg/field.hpp"
#include "eldg/projection.hpp"

using namespace eldg;

namespace {

constexpr double kPi = std::numbers::pi;

DGField random_field(std::shared_ptr<const Mesh1D> mesh, int degree, int n_comp,
                     unsigned seed) {
  DGField f = DGField::zeros(std::move(mesh), degree, n_comp);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double& c : f.coeff) c = u(rng);
  return f;
}

// Brute-force weak solve: destination moments by scanning for source-node
// breakpoints and composite quadrature per piece, no shared machinery with
// the production overlap decomposition.
DGField brute_force_project(const DGField& src, const Mesh1D& dst) {
  const int k = src.degree;
  const double L = src.mesh->length();
  DGField out = DGField::zeros(std::make_shared<Mesh1D>(dst), k, src.n_comp);
  const auto& rule = QuadratureRule::gauss(4);
  for (int j = 0; j < dst.n_cells(); ++j) {
    double a = dst.cell_lo(j), b = dst.cell_hi(j);
    std::vector<double> cuts = {a, b};
    for (int p = -2; p <= 2; ++p)
      for (int s = 0; s < src.mesh->n_cells(); ++s) {
        double x = src.mesh->nodes[s] + p * L;
        if (x > a + 1e-14 && x < b - 1e-14) cuts.push_back(x);
      }
    std::sort(cuts.begin(), cuts.end());
    for (size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
      // 50 composite panels per piece
      for (int panel = 0; panel < 50; ++panel) {
        double plo = cuts[piece] + (cuts[piece + 1] - cuts[piece]) * panel / 50.0;
        double phi = cuts[piece] + (cuts[piece + 1] - cuts[piece]) * (panel + 1) / 50.0;
        double half = 0.5 * (phi - plo), mid = 0.5 * (phi + plo);
        for (int q = 0; q < rule.size(); ++q) {
          double x = mid + half * rule.nodes[q];
          double w = rule.weights[q] * half;
          double xi_dst = (2.0 * x - a - b) / (b - a);
          for (int c = 0; c < src.n_comp; ++c) {
            double v = src.eval_at(x, c);
            for (int m = 0; m <= k; ++m)
              out.at(j, c, m) += w * v * legendre_eval(m, xi_dst);
          }
        }
      }
    }
    for (int c = 0; c < src.n_comp; ++c)
      for (int m = 0; m <= k; ++m) out.at(j, c, m) /= (b - a) / (2.0 * m + 1.0);
  }
  return out;
}

}  // namespace

TEST_CASE("identical meshes decompose cell-by-cell and project identically") {
  auto mesh = make_uniform_mesh(0.0, 2.0 * kPi, 8);
  auto decomp = overlap_decompose(mesh, *mesh);
  for (int j = 0; j < 8; ++j) {
    REQUIRE(decomp.pieces[j].size() == 1);
    CHECK(decomp.pieces[j][0].src_cell == j);
    CHECK(decomp.pieces[j][0].shift == 0);
  }
  DGField f = random_field(mesh, 2, 2, 3);
  DGField g = l2_project(f, decomp, mesh);
  for (size_t i = 0; i < f.coeff.size(); ++i)
    CHECK(std::abs(g.coeff[i] - f.coeff[i]) <= 1e-13);
}

TEST_CASE("half-cell shift yields two equal subintervals per destination cell") {
  auto src = make_uniform_mesh(0.0, 1.0, 6);
  Mesh1D dst = build_uniform_mesh(0.0, 1.0, 6);
  const double h = dst.dx(0);
  for (double& x : dst.nodes) x += 0.5 * h;
  dst.domain_lo = dst.nodes.front();
  dst.domain_hi = dst.nodes.back();
  auto decomp = overlap_decompose_intervals(
      src, std::vector<double>(dst.nodes.begin(), dst.nodes.end() - 1),
      std::vector<double>(dst.nodes.begin() + 1, dst.nodes.end()));
  for (int j = 0; j < 6; ++j) {
    REQUIRE(decomp.pieces[j].size() == 2);
    double w0 = decomp.pieces[j][0].hi - decomp.pieces[j][0].lo;
    double w1 = decomp.pieces[j][1].hi - decomp.pieces[j][1].lo;
    CHECK(w0 == doctest::Approx(0.5 * h).epsilon(1e-13));
    CHECK(w1 == doctest::Approx(0.5 * h).epsilon(1e-13));
  }
}

TEST_CASE("upstream decomposition pieces tile each destination cell") {
  const int n = 20;
  auto mesh = make_uniform_mesh(0.0, 2.0 * kPi, n);
  std::vector<double> nu(n);
  for (int s = 0; s < n; ++s) nu[s] = std::sin(mesh->nodes[s]);
  UpstreamMesh up = trace_upstream(mesh, nu, 0.1);
  auto decomp = overlap_decompose(mesh, up);
  for (int j = 0; j < n; ++j) {
    double sum = 0.0;
    for (const auto& p : decomp.pieces[j]) sum += p.hi - p.lo;
    double width = up.elements[j].upstream_hi - up.elements[j].upstream_lo;
    CHECK(std::abs(sum - width) <= 1e-13 * width);
  }
}

TEST_CASE("meshes over different domains are rejected") {
  auto a = make_uniform_mesh(0.0, 1.0, 4);
  Mesh1D b = build_uniform_mesh(0.0, 2.0, 4);
  CHECK_THROWS_AS(overlap_decompose(a, b), std::invalid_argument);
}

TEST_CASE("constants survive projection to any destination mesh") {
  auto src = make_uniform_mesh(-1.0, 1.0, 7);
  DGField f = DGField::zeros(src, 2, 1);
  for (int j = 0; j < 7; ++j) f.at(j, 0, 0) = 3.25;
  std::vector<double> nu(7);
  for (int s = 0; s < 7; ++s) nu[s] = std::cos(kPi * src->nodes[s]);
  UpstreamMesh up = trace_upstream(src, nu, 0.21);
  auto dst = up.upstream_as_mesh();
  DGField g = l2_project(f, overlap_decompose(src, up), dst);
  for (int j = 0; j < 7; ++j) {
    CHECK(g.at(j, 0, 0) == doctest::Approx(3.25).epsilon(1e-14));
    for (int m = 1; m <= 2; ++m) CHECK(std::abs(g.at(j, 0, m)) <= 1e-13);
  }
}

TEST_CASE("projection matches the brute-force dense-quadrature weak solve") {
  auto src = make_uniform_mesh(0.0, 1.0, 4);
  DGField f = random_field(src, 1, 1, 17);  // piecewise linear
  Mesh1D dst = build_uniform_mesh(0.0, 1.0, 4);
  for (double& x : dst.nodes) x += 0.37 * dst.dx(0);
  dst.domain_lo = dst.nodes.front();
  dst.domain_hi = dst.nodes.back();
  auto dstp = std::make_shared<const Mesh1D>(dst);
  auto decomp = overlap_decompose_intervals(
      src, std::vector<double>(dst.nodes.begin(), dst.nodes.end() - 1),
      std::vector<double>(dst.nodes.begin() + 1, dst.nodes.end()));
  DGField fast = l2_project(f, decomp, dstp);
  DGField slow = brute_force_project(f, dst);
  for (size_t i = 0; i < fast.coeff.size(); ++i)
    CHECK(std::abs(fast.coeff[i] - slow.coeff[i]) <= 1e-12);
}

TEST_CASE("degree mismatch is rejected") {
  auto src = make_uniform_mesh(0.0, 1.0, 4);
  DGField f = random_field(src, 2, 1, 5);
  auto decomp = overlap_decompose(src, *src);
  CHECK_THROWS_AS(l2_project(f, decomp, src, 1), std::invalid_argument);
  CHECK_NOTHROW(l2_project(f, decomp, src, 2));
}

TEST_CASE("projection preserves mass, is idempotent and non-expansive") {
  const int n = 13;
  auto src = make_uniform_mesh(0.0, 2.0 * kPi, n);
  DGField f = random_field(src, 2, 2, 23);
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> nu(n);
    for (int s = 0; s < n; ++s) nu[s] = u(rng);
    UpstreamMesh up = trace_upstream(src, nu, 0.2);
    auto dst = up.upstream_as_mesh();
    DGField g = l2_project(f, overlap_decompose(src, up), dst);

    auto m0 = total_mass(f);
    auto m1 = total_mass(g);
    for (int c = 0; c < 2; ++c)
      CHECK(std::abs(m1[c] - m0[c]) <= 1e-13 * std::max(1.0, std::abs(m0[c])));
    CHECK(l2_norm(g) <= l2_norm(f) + 1e-12);
  }

  // idempotence on the same mesh
  DGField same = l2_project(f, overlap_decompose(src, *src), src);
  for (size_t i = 0; i < f.coeff.size(); ++i)
    CHECK(std::abs(same.coeff[i] - f.coeff[i]) <= 1e-13);
}
