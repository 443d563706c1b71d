#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eldg/field.hpp"
#include "eldg/problems.hpp"
#include "eldg/splitting2d.hpp"

namespace eldg {

struct RunConfig {
  std::string problem;
  std::string scheme = "eldg";
  int degree = 1;
  std::vector<int> meshes;       // repeatable --nx
  std::vector<double> cfls;      // repeatable --cfl
  double tfinal = 1.0;
  std::string rk = "rk4";
  std::optional<double> limiter_m;  // disengaged when empty
  bool postprocess = false;
  std::string split = "strang";
  std::string out;

  std::string manifest() const;  // key=value echo of the full config
};

void validate_config(const RunConfig& cfg);  // throws std::invalid_argument

struct Norms {
  double l1 = 0.0, l2 = 0.0, linf = 0.0;
};

// Domain-averaged error norms of one component against the exact solution,
// per-cell Gauss quadrature with max(k+3,5) points (tensorized in 2D).
Norms error_norms(const DGField& field, const std::function<double(double, double)>& exact,
                  double t);
Norms error_norms_filtered(const DGField& field,
                           const std::function<double(double, double)>& exact, double t);
Norms error_norms_2d(const Field2D& field,
                     const std::function<void(double, double, double, double*)>& exact,
                     int comp, double t);

// Aggregated run outputs -----------------------------------------------------

struct ConvergenceRow {
  int n = 0;
  Norms error;
  Norms order;       // vs the previous row; 0 when absent or unreliable
  bool blowup = false;
};

struct SweepRow {
  double cfl = 0.0;
  double linf = 0.0;
  bool blowup = false;
};

struct MassRow {
  double t = 0.0;
  std::vector<double> drift;  // |m(t) - m(0)| per component
};

struct SolveRow {
  double x = 0.0, y = 0.0;
  std::vector<double> value;  // per component; filtered when postprocess is on
  std::vector<double> exact;  // empty when unavailable
};

struct RunResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::string manifest;
};

RunResult run_convergence(const RunConfig& cfg);
RunResult run_cfl_sweep(const RunConfig& cfg);
RunResult run_mass_tracking(const RunConfig& cfg);
RunResult run_solve(const RunConfig& cfg);

// CSV with a leading manifest line, a header row and %.6e numbers.
void write_csv(const RunResult& result, const std::string& path);

// Single integrated 1D run, exposed for tests.
struct Integrate1DResult {
  DGField field;
  bool blowup = false;
  std::vector<MassRow> mass;  // filled when track_mass
};
Integrate1DResult integrate_1d(const RunConfig& cfg, int n_cells, double cfl,
                               bool track_mass = false);

struct Integrate2DResult {
  Field2D field;
  bool blowup = false;
};
Integrate2DResult integrate_2d(const RunConfig& cfg, int n_cells, double cfl);

}  // namespace eldg
