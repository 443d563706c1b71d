#include "eldg/eldg_c.h"

#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include "eldg/errors.hpp"
#include "eldg/harness.hpp"

struct eldg_run {
  eldg::RunConfig cfg;
  eldg::RunResult result;
  std::string last_error;
};

namespace {

template <typename Fn>
eldg_status guarded(eldg_run* run, Fn&& fn) {
  if (!run) return ELDG_ERROR_INVALID_CONFIG;
  try {
    fn();
    run->last_error.clear();
    return ELDG_OK;
  } catch (const eldg::solver_error& e) {
    run->last_error = e.what();
    return ELDG_ERROR_SOLVER_FAILURE;
  } catch (const std::invalid_argument& e) {
    run->last_error = e.what();
    return ELDG_ERROR_INVALID_CONFIG;
  } catch (const std::exception& e) {
    run->last_error = e.what();
    return ELDG_ERROR_SOLVER_FAILURE;
  }
}

eldg_status run_driver(eldg_run* run, eldg::RunResult (*driver)(const eldg::RunConfig&)) {
  return guarded(run, [&] {
    if (run->cfg.out.empty())
      throw std::invalid_argument("no output path configured");
    run->result = driver(run->cfg);
    eldg::write_csv(run->result, run->cfg.out);
  });
}

}  // namespace

extern "C" {

eldg_run* eldg_run_create(void) { return new (std::nothrow) eldg_run(); }

void eldg_run_destroy(eldg_run* run) { delete run; }

eldg_status eldg_run_set_problem(eldg_run* run, const char* problem_id) {
  return guarded(run, [&] {
    if (!problem_id) throw std::invalid_argument("null problem id");
    run->cfg.problem = problem_id;
  });
}

eldg_status eldg_run_set_scheme(eldg_run* run, const char* scheme) {
  return guarded(run, [&] {
    if (!scheme) throw std::invalid_argument("null scheme");
    eldg::SchemeVariant::parse(scheme);
    run->cfg.scheme = scheme;
  });
}

eldg_status eldg_run_set_degree(eldg_run* run, int degree) {
  return guarded(run, [&] {
    if (degree < 1 || degree > 3) throw std::invalid_argument("degree must be 1, 2 or 3");
    run->cfg.degree = degree;
  });
}

eldg_status eldg_run_add_mesh(eldg_run* run, int nx) {
  return guarded(run, [&] {
    if (nx < 2) throw std::invalid_argument("mesh size must be >= 2");
    run->cfg.meshes.push_back(nx);
  });
}

eldg_status eldg_run_add_cfl(eldg_run* run, double cfl) {
  return guarded(run, [&] {
    if (!(cfl > 0.0)) throw std::invalid_argument("CFL must be positive");
    run->cfg.cfls.push_back(cfl);
  });
}

eldg_status eldg_run_set_tfinal(eldg_run* run, double tfinal) {
  return guarded(run, [&] {
    if (!(tfinal > 0.0)) throw std::invalid_argument("tfinal must be positive");
    run->cfg.tfinal = tfinal;
  });
}

eldg_status eldg_run_set_rk(eldg_run* run, const char* tag) {
  return guarded(run, [&] {
    if (!tag) throw std::invalid_argument("null rk tag");
    eldg::ButcherTableau::from_tag(tag);
    run->cfg.rk = tag;
  });
}

eldg_status eldg_run_set_limiter(eldg_run* run, int enabled, double m) {
  return guarded(run, [&] {
    if (enabled) {
      if (m < 0.0) throw std::invalid_argument("limiter M must be nonnegative");
      run->cfg.limiter_m = m;
    } else {
      run->cfg.limiter_m.reset();
    }
  });
}

eldg_status eldg_run_set_postprocess(eldg_run* run, int enabled) {
  return guarded(run, [&] { run->cfg.postprocess = enabled != 0; });
}

eldg_status eldg_run_set_split(eldg_run* run, const char* tag) {
  return guarded(run, [&] {
    if (!tag || (std::string(tag) != "strang" && std::string(tag) != "fourth"))
      throw std::invalid_argument("split must be strang or fourth");
    run->cfg.split = tag;
  });
}

eldg_status eldg_run_set_output(eldg_run* run, const char* path) {
  return guarded(run, [&] {
    if (!path) throw std::invalid_argument("null output path");
    run->cfg.out = path;
  });
}

eldg_status eldg_run_converge(eldg_run* run) { return run_driver(run, eldg::run_convergence); }
eldg_status eldg_run_cfl_sweep(eldg_run* run) { return run_driver(run, eldg::run_cfl_sweep); }
eldg_status eldg_run_mass_track(eldg_run* run) {
  return run_driver(run, eldg::run_mass_tracking);
}
eldg_status eldg_run_solve(eldg_run* run) { return run_driver(run, eldg::run_solve); }

size_t eldg_run_result_rows(const eldg_run* run) {
  return run ? run->result.rows.size() : 0;
}

size_t eldg_run_result_cols(const eldg_run* run) {
  return run ? run->result.columns.size() : 0;
}

const char* eldg_run_result_column(const eldg_run* run, size_t col) {
  if (!run || col >= run->result.columns.size()) return "";
  return run->result.columns[col].c_str();
}

double eldg_run_result_value(const eldg_run* run, size_t row, size_t col) {
  if (!run || row >= run->result.rows.size() || col >= run->result.rows[row].size())
    return 0.0;
  return run->result.rows[row][col];
}

const char* eldg_run_last_error(const eldg_run* run) {
  return run ? run->last_error.c_str() : "null run handle";
}

const char* eldg_version(void) { return "0.1.0"; }

}  // extern "C"
