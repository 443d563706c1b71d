#ifndef ELDG_C_H
#define ELDG_C_H

/* C interface to the Eulerian-Lagrangian RK DG wave solver.  A run is
 * configured through an opaque handle, then driven by one of the four
 * subcommand entry points, each writing a CSV file and retaining a numeric
 * result table for inspection.  Status values double as process exit codes. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum eldg_status {
  ELDG_OK = 0,
  ELDG_ERROR_INVALID_CONFIG = 2,
  ELDG_ERROR_SOLVER_FAILURE = 3
} eldg_status;

typedef struct eldg_run eldg_run; /* opaque */

eldg_run *eldg_run_create(void);
void eldg_run_destroy(eldg_run *run);

/* configuration ---------------------------------------------------------- */
eldg_status eldg_run_set_problem(eldg_run *run, const char *problem_id);
eldg_status eldg_run_set_scheme(eldg_run *run, const char *scheme);
eldg_status eldg_run_set_degree(eldg_run *run, int degree);
eldg_status eldg_run_add_mesh(eldg_run *run, int nx);
eldg_status eldg_run_add_cfl(eldg_run *run, double cfl);
eldg_status eldg_run_set_tfinal(eldg_run *run, double tfinal);
eldg_status eldg_run_set_rk(eldg_run *run, const char *tag);
/* enabled != 0 engages the TVB minmod limiter with constant m */
eldg_status eldg_run_set_limiter(eldg_run *run, int enabled, double m);
eldg_status eldg_run_set_postprocess(eldg_run *run, int enabled);
eldg_status eldg_run_set_split(eldg_run *run, const char *tag);
eldg_status eldg_run_set_output(eldg_run *run, const char *path);

/* drivers; each writes the configured CSV file ---------------------------- */
eldg_status eldg_run_converge(eldg_run *run);
eldg_status eldg_run_cfl_sweep(eldg_run *run);
eldg_status eldg_run_mass_track(eldg_run *run);
eldg_status eldg_run_solve(eldg_run *run);

/* result table of the last driver call ------------------------------------ */
size_t eldg_run_result_rows(const eldg_run *run);
size_t eldg_run_result_cols(const eldg_run *run);
const char *eldg_run_result_column(const eldg_run *run, size_t col);
double eldg_run_result_value(const eldg_run *run, size_t row, size_t col);

/* message describing the most recent failure (empty string when none) */
const char *eldg_run_last_error(const eldg_run *run);

const char *eldg_version(void);

#ifdef __cplusplus
}
#endif

#endif /* ELDG_C_H */
