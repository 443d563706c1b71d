// CLI harness over the C API: converge | cfl-sweep | mass-track | solve.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eldg/eldg_c.h"

namespace {

struct RunDeleter {
  void operator()(eldg_run* r) const { eldg_run_destroy(r); }
};

struct Options {
  std::string problem;
  std::string scheme = "eldg";
  int degree = 1;
  std::vector<int> nx;
  std::vector<double> cfl;
  double tfinal = 1.0;
  std::string rk = "rk4";
  std::string limiter = "off";
  std::string postprocess = "off";
  std::string split = "strang";
  std::string out;
};

void add_common_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--problem", opt.problem, "problem id")->required();
  cmd->add_option("--scheme", opt.scheme,
                  "eldg | eldg1 | eldg2 | eldg3 | nmc-eldg[1-3] | rkdg");
  cmd->add_option("--degree", opt.degree, "polynomial degree k");
  cmd->add_option("--nx", opt.nx, "cells per direction (repeatable)")->required();
  cmd->add_option("--cfl", opt.cfl, "CFL number (repeatable)")->required();
  cmd->add_option("--tfinal", opt.tfinal, "final time");
  cmd->add_option("--rk", opt.rk, "fe | ssprk2 | rk2 | rk4");
  cmd->add_option("--limiter-m", opt.limiter, "TVB constant M, or 'off'");
  cmd->add_option("--postprocess", opt.postprocess, "on | off");
  cmd->add_option("--split", opt.split, "strang | fourth (2D)");
  cmd->add_option("--out", opt.out, "output CSV path")->required();
}

int apply_and_run(const Options& opt, eldg_status (*driver)(eldg_run*)) {
  std::unique_ptr<eldg_run, RunDeleter> run(eldg_run_create());
  if (!run) {
    std::fprintf(stderr, "error: out of memory\n");
    return ELDG_ERROR_SOLVER_FAILURE;
  }
  auto check = [&](eldg_status s) {
    if (s != ELDG_OK) {
      std::fprintf(stderr, "error: %s\n", eldg_run_last_error(run.get()));
      std::exit(s);
    }
  };
  check(eldg_run_set_problem(run.get(), opt.problem.c_str()));
  check(eldg_run_set_scheme(run.get(), opt.scheme.c_str()));
  check(eldg_run_set_degree(run.get(), opt.degree));
  for (int n : opt.nx) check(eldg_run_add_mesh(run.get(), n));
  for (double c : opt.cfl) check(eldg_run_add_cfl(run.get(), c));
  check(eldg_run_set_tfinal(run.get(), opt.tfinal));
  check(eldg_run_set_rk(run.get(), opt.rk.c_str()));
  if (opt.limiter == "off") {
    check(eldg_run_set_limiter(run.get(), 0, 0.0));
  } else {
    try {
      check(eldg_run_set_limiter(run.get(), 1, std::stod(opt.limiter)));
    } catch (const std::exception&) {
      std::fprintf(stderr, "error: --limiter-m expects a real number or 'off'\n");
      return ELDG_ERROR_INVALID_CONFIG;
    }
  }
  if (opt.postprocess != "on" && opt.postprocess != "off") {
    std::fprintf(stderr, "error: --postprocess expects on or off\n");
    return ELDG_ERROR_INVALID_CONFIG;
  }
  check(eldg_run_set_postprocess(run.get(), opt.postprocess == "on" ? 1 : 0));
  check(eldg_run_set_split(run.get(), opt.split.c_str()));
  check(eldg_run_set_output(run.get(), opt.out.c_str()));

  eldg_status s = driver(run.get());
  if (s != ELDG_OK) {
    std::fprintf(stderr, "error: %s\n", eldg_run_last_error(run.get()));
    return s;
  }
  std::printf("wrote %s (%zu rows)\n", opt.out.c_str(), eldg_run_result_rows(run.get()));
  return ELDG_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eulerian-Lagrangian RK DG solver for wave equations"};
  app.require_subcommand(1);

  Options opt;
  auto* converge = app.add_subcommand("converge", "mesh refinement error table");
  add_common_flags(converge, opt);
  auto* sweep = app.add_subcommand("cfl-sweep", "error vs CFL at a fixed mesh");
  add_common_flags(sweep, opt);
  auto* mass = app.add_subcommand("mass-track", "mass drift per step");
  add_common_flags(mass, opt);
  auto* solve = app.add_subcommand("solve", "single run, solution dump");
  add_common_flags(solve, opt);

  CLI11_PARSE(app, argc, argv);

  if (converge->parsed()) return apply_and_run(opt, eldg_run_converge);
  if (sweep->parsed()) return apply_and_run(opt, eldg_run_cfl_sweep);
  if (mass->parsed()) return apply_and_run(opt, eldg_run_mass_track);
  return apply_and_run(opt, eldg_run_solve);
}
