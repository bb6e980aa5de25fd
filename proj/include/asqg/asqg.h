/* C interface to the periodic alpha-SQG contour-dynamics library. */
#ifndef ASQG_ASQG_H
#define ASQG_ASQG_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define ASQG_API __declspec(dllexport)
#else
#define ASQG_API __attribute__((visibility("default")))
#endif

typedef enum asqg_status {
  ASQG_OK = 0,
  ASQG_ERR_INVALID_ARGUMENT = 1,
  ASQG_ERR_SINGULAR_POINT = 2,
  ASQG_ERR_LATTICE_SINGULARITY = 3,
  ASQG_ERR_TRUNCATION_FAILURE = 4,
  ASQG_ERR_SELF_INTERSECTION = 5,
  ASQG_ERR_LATTICE_COLLISION = 6,
  ASQG_ERR_ACCURACY_GUARD = 7,
  ASQG_ERR_BOUNDARY_EVALUATION = 8,
  ASQG_ERR_PATH_SINGULARITY = 9,
  ASQG_ERR_DEGENERATE_CHAIN = 10,
  ASQG_ERR_UNSUPPORTED = 11,
  ASQG_ERR_IO = 12,
  ASQG_ERR_PARSE = 13,
  ASQG_ERR_INTERNAL = 100
} asqg_status;

/* Message of the last failure on the calling thread ("" if none). */
ASQG_API const char* asqg_last_error(void);
ASQG_API const char* asqg_status_string(asqg_status status);
ASQG_API void asqg_free_string(char* s);

typedef struct asqg_options {
  double tail_tolerance;  /* lattice-sum absolute tolerance */
  long max_images;
  int near_field_cells;
  int near_field_order;
  int self_only;          /* 0: chain-wide coupling, 1: each curve sees itself */
  int threads;            /* 0: CDE_THREADS or hardware concurrency */
} asqg_options;

ASQG_API void asqg_default_options(asqg_options* opt);

/* ---- kernel ---- */

enum { ASQG_KERNEL_R_ONLY = 1, ASQG_KERNEL_FREE_ONLY = 2 };

typedef struct asqg_kernel_values {
  double green_free;
  double r;
  double green_periodic;
  double k_free[2];
  double h[2];
  double k_periodic[2];
} asqg_kernel_values;

ASQG_API asqg_status asqg_c_alpha(double alpha, double* out);
/* Fields not requested by flags are set to NaN. */
ASQG_API asqg_status asqg_kernel_eval(double alpha, const asqg_options* opt, double x1, double x2,
                                      unsigned flags, asqg_kernel_values* out);
ASQG_API asqg_status asqg_oracle_r(double alpha, double x1, double x2, double* out);

/* ---- chains ---- */

typedef struct asqg_chain asqg_chain;

ASQG_API asqg_chain* asqg_chain_new(void);
/* xy holds M interleaved (x1, x2) pairs. */
ASQG_API asqg_status asqg_chain_add_curve(asqg_chain* chain, const double* xy, size_t M, int winding);
ASQG_API asqg_status asqg_chain_load_snapshot(const char* path, asqg_chain** out, double* time);
ASQG_API asqg_status asqg_chain_save_snapshot(const asqg_chain* chain, const char* path, double time);
ASQG_API void asqg_chain_free(asqg_chain* chain);
ASQG_API size_t asqg_chain_curve_count(const asqg_chain* chain);
ASQG_API size_t asqg_chain_grid_size(const asqg_chain* chain);
ASQG_API asqg_status asqg_chain_curve(const asqg_chain* chain, size_t curve, double* xy, int* winding);

/* ---- operator ---- */

/* out receives curve_count * M interleaved velocity pairs, curve by curve. */
ASQG_API asqg_status asqg_cde_velocity(const asqg_chain* chain, double alpha, const asqg_options* opt,
                                       double* out);
ASQG_API asqg_status asqg_cde_velocity_mollified(const asqg_chain* chain, double alpha,
                                                 const asqg_options* opt, double epsilon, double* out);
ASQG_API asqg_status asqg_velocity_at_point(const asqg_chain* chain, double alpha, const asqg_options* opt,
                                            double x1, double x2, double* u);

/* ---- diagnostics ---- */

typedef struct asqg_diagnostics {
  double F_inf;
  double F0_inf;
  double S0;
  double sobolev_m;
  double energy_S;
  double separation;
  double A_m;
  double T_star;    /* blow-up horizon with C = 1 */
  double epsilon0;  /* mollifier radius with C = 1 (NaN when undefined) */
} asqg_diagnostics;

/* csv_header, csv_row and json are optional; free them with asqg_free_string. */
ASQG_API asqg_status asqg_diagnose(const asqg_chain* chain, double alpha, int m, asqg_diagnostics* out,
                                   char** csv_header, char** csv_row, char** json);
/* out receives one oriented area per curve. */
ASQG_API asqg_status asqg_patch_area(const asqg_chain* chain, double* out);

/* ---- scenarios ---- */

typedef struct asqg_summary {
  int exit_code;  /* 0: reached t_end, 2: stop condition */
  char reason[64];
  double t_final;
  long steps;
} asqg_summary;

/* out_dir and threads override the config when non-NULL / positive. */
ASQG_API asqg_status asqg_simulate(const char* config_path, const char* out_dir, int threads,
                                   asqg_summary* summary);

#ifdef __cplusplus
}
#endif

#endif
