#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "eldg/errors.hpp"
#include "eldg/mesh.hpp"

using namespace eldg;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("uniform mesh construction") {
  Mesh1D m = build_uniform_mesh(0.0, 2.0 * kPi, 4);
  REQUIRE(m.n_cells() == 4);
  std::vector<double> expect = {0.0, kPi / 2, kPi, 1.5 * kPi, 2.0 * kPi};
  for (int i = 0; i <= 4; ++i) CHECK(m.nodes[i] == doctest::Approx(expect[i]).epsilon(1e-15));

  Mesh1D m2 = build_uniform_mesh(-1.0, 1.0, 2);
  CHECK(m2.nodes[0] == -1.0);
  CHECK(m2.nodes[1] == doctest::Approx(0.0));
  CHECK(m2.nodes[2] == 1.0);

  Mesh1D m3 = build_uniform_mesh(0.0, 2.0 * kPi, 160);
  CHECK(m3.dx(0) == doctest::Approx(2.0 * kPi / 160).epsilon(1e-15));

  CHECK_THROWS_AS(build_uniform_mesh(0.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_uniform_mesh(1.0, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_uniform_mesh(2.0, 1.0, 4), std::invalid_argument);
}

TEST_CASE("locate wraps periodically") {
  auto m = make_uniform_mesh(0.0, 2.0, 4);
  auto loc = m->locate(2.3);
  CHECK(loc.shift == 1);
  CHECK(loc.cell == 0);
  CHECK(loc.local == doctest::Approx(0.3));
  loc = m->locate(-0.1);
  CHECK(loc.shift == -1);
  CHECK(loc.cell == 3);
  CHECK(loc.local == doctest::Approx(1.9));
}

TEST_CASE("trace with zero dt reproduces the background mesh") {
  auto m = make_uniform_mesh(0.0, 2.0 * kPi, 8);
  std::vector<double> nu(8, 0.7);
  UpstreamMesh up = trace_upstream(m, nu, 0.0);
  for (int j = 0; j < 8; ++j) {
    CHECK(up.elements[j].upstream_lo == m->nodes[j]);
    CHECK(up.elements[j].upstream_hi == m->nodes[j + 1]);
  }
}

TEST_CASE("unit velocity shifts every cell to its left neighbor") {
  const int n = 10;
  auto m = make_uniform_mesh(0.0, 1.0, n);
  const double h = m->dx(0);
  std::vector<double> nu(n, 1.0);
  UpstreamMesh up = trace_upstream(m, nu, h);
  for (int j = 0; j < n; ++j) {
    CHECK(up.elements[j].upstream_lo == doctest::Approx(m->nodes[j] - h).epsilon(1e-14));
    CHECK(up.elements[j].upstream_hi == doctest::Approx(m->nodes[j + 1] - h).epsilon(1e-14));
  }
}

TEST_CASE("variable velocities traced against independent endpoint arithmetic") {
  const int n = 16;
  auto m = make_uniform_mesh(0.0, 2.0 * kPi, n);
  std::vector<double> nu(n);
  for (int s = 0; s < n; ++s) nu[s] = std::sin(m->nodes[s]);
  const double dt = 0.3;
  UpstreamMesh up = trace_upstream(m, nu, dt);
  for (int j = 0; j < n; ++j) {
    double lo = m->nodes[j] - dt * std::sin(m->nodes[j]);
    double hi = m->nodes[j + 1] - dt * std::sin(m->nodes[(j + 1) % n]);
    CHECK(up.elements[j].upstream_lo == doctest::Approx(lo).epsilon(1e-14));
    CHECK(up.elements[j].upstream_hi == doctest::Approx(hi).epsilon(1e-14));
    CHECK(up.elements[j].upstream_hi - up.elements[j].upstream_lo > 0.0);
  }
}

TEST_CASE("inverted upstream cell names the offending cell") {
  auto m = make_uniform_mesh(0.0, 1.0, 4);
  // strongly diverging velocities across the second cell
  std::vector<double> nu = {0.0, -10.0, 10.0, 0.0};
  try {
    trace_upstream(m, nu, 0.2);
    FAIL("expected inverted_element_error");
  } catch (const inverted_element_error& e) {
    CHECK(e.cell() == 1);
    CHECK(std::string(e.what()).find("j=1") != std::string::npos);
  }
}

TEST_CASE("seam velocity mismatch on a periodic mesh is rejected") {
  auto m = make_uniform_mesh(0.0, 1.0, 4);
  std::vector<double> nu = {0.1, 0.2, 0.3, 0.4, 0.9};
  CHECK_THROWS_AS(trace_upstream(m, nu, 0.01), std::invalid_argument);
  std::vector<double> ok = {0.1, 0.2, 0.3, 0.4, 0.1};
  CHECK_NOTHROW(trace_upstream(m, ok, 0.01));
}

TEST_CASE("alpha interpolates node velocities along the moving interval") {
  DynamicElement e;
  e.cell = 0;
  e.nu_left = 0.4;
  e.nu_right = -0.2;
  e.t_start = 0.0;
  e.t_end = 0.5;
  e.back_lo = 1.0;
  e.back_hi = 2.0;
  e.upstream_lo = e.back_lo - 0.5 * e.nu_left;
  e.upstream_hi = e.back_hi - 0.5 * e.nu_right;

  for (double t : {0.0, 0.17, 0.5}) {
    CHECK(alpha_eval(e, e.lo_at(t), t) == doctest::Approx(e.nu_left).epsilon(1e-14));
    CHECK(alpha_eval(e, e.hi_at(t), t) == doctest::Approx(e.nu_right).epsilon(1e-14));
    double mid = 0.5 * (e.lo_at(t) + e.hi_at(t));
    CHECK(alpha_eval(e, mid, t) ==
          doctest::Approx(0.5 * (e.nu_left + e.nu_right)).epsilon(1e-14));
  }

  DynamicElement c = e;
  c.nu_left = c.nu_right = 0.7;
  c.upstream_lo = c.back_lo - 0.5 * 0.7;
  c.upstream_hi = c.back_hi - 0.5 * 0.7;
  CHECK(alpha_eval(c, c.lo_at(0.2) + 0.3, 0.2) == doctest::Approx(0.7));

  CHECK_THROWS_AS(alpha_eval(e, e.hi_at(0.3) + 0.5, 0.3), std::out_of_range);
}

TEST_CASE("interval width interpolates linearly in time") {
  DynamicElement e;
  e.nu_left = 0.9;
  e.nu_right = 0.1;
  e.t_start = 0.0;
  e.t_end = 1.0;
  e.back_lo = 0.0;
  e.back_hi = 1.0;
  e.upstream_lo = -0.9;
  e.upstream_hi = 0.9;
  double w0 = e.width_at(0.0), w1 = e.width_at(1.0);
  for (double t : {0.25, 0.5, 0.75})
    CHECK(e.width_at(t) == doctest::Approx(w0 + (w1 - w0) * t).epsilon(1e-14));
}

TEST_CASE("forward tracing with negated velocities recovers the nodes") {
  const int n = 20;
  auto m = make_uniform_mesh(-1.0, 1.0, n);
  std::vector<double> nu(n), neg(n);
  for (int s = 0; s < n; ++s) {
    nu[s] = 0.3 + 0.2 * std::cos(kPi * m->nodes[s]);
    neg[s] = -nu[s];
  }
  const double dt = 0.15;
  UpstreamMesh up = trace_upstream(m, nu, dt);
  auto upstream = up.upstream_as_mesh();
  UpstreamMesh back = trace_upstream(upstream, neg, dt);
  for (int j = 0; j < n; ++j) {
    CHECK(std::abs(back.elements[j].upstream_lo - m->nodes[j]) <= 1e-13);
    CHECK(std::abs(back.elements[j].upstream_hi - m->nodes[j + 1]) <= 1e-13);
  }
}

TEST_CASE("adjacent elements share upstream endpoints exactly") {
  const int n = 12;
  auto m = make_uniform_mesh(0.0, 2.0 * kPi, n);
  std::vector<double> nu(n);
  for (int s = 0; s < n; ++s) nu[s] = 1.0 + 0.5 * std::sin(m->nodes[s]);
  UpstreamMesh up = trace_upstream(m, nu, 0.4);
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    total += up.elements[j].upstream_hi - up.elements[j].upstream_lo;
    if (j > 0) CHECK(up.elements[j].upstream_lo == up.elements[j - 1].upstream_hi);
  }
  CHECK(total == doctest::Approx(m->length()).epsilon(1e-14));
}

TEST_CASE("negative dt traces downstream") {
  const int n = 6;
  auto m = make_uniform_mesh(0.0, 1.0, n);
  std::vector<double> nu(n, 1.0);
  UpstreamMesh up = trace_upstream(m, nu, -0.05);
  for (int j = 0; j < n; ++j)
    CHECK(up.elements[j].upstream_lo == doctest::Approx(m->nodes[j] + 0.05));
}
