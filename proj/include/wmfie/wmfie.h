/* Copyright 2026 The wmfie Authors
   SPDX-License-Identifier: Apache-2.0 */

/* C interface of the wmfie scattering solver. All handles are opaque; every
   function returns a wmfie_status and, on failure, leaves a message that
   wmfie_last_error() returns (per thread). Complex arrays are interleaved
   (re, im) doubles. */

#ifndef WMFIE_WMFIE_H
#define WMFIE_WMFIE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(WMFIE_BUILDING_LIBRARY)
#define WMFIE_API __declspec(dllexport)
#else
#define WMFIE_API __declspec(dllimport)
#endif
#else
#define WMFIE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wmfie_status
{
  WMFIE_OK = 0,
  WMFIE_ERR_INVALID_ARGUMENT = 1,
  WMFIE_ERR_PARSE = 2,
  WMFIE_ERR_IO = 3,
  WMFIE_ERR_TOPOLOGY = 4,
  WMFIE_ERR_NOT_CONVERGED = 5,
  WMFIE_ERR_NUMERIC = 6,
  WMFIE_ERR_INTERNAL = 7
} wmfie_status;

typedef struct wmfie_mesh wmfie_mesh;
typedef struct wmfie_problem wmfie_problem;
typedef struct wmfie_solution wmfie_solution;

WMFIE_API const char *wmfie_version(void);
WMFIE_API const char *wmfie_last_error(void);
WMFIE_API const char *wmfie_status_name(wmfie_status status);
/* Worker threads for assembly and field evaluation (process wide). */
WMFIE_API wmfie_status wmfie_set_threads(int threads);

/* ---- meshes ---- */

typedef struct wmfie_mesh_stats
{
  size_t vertices, triangles, edges;
  double mean_edge, max_edge, min_edge;
  double total_area, volume;
  double volume_equivalent_radius;
} wmfie_mesh_stats;

typedef enum wmfie_shape
{
  WMFIE_SHAPE_CUBE = 0,    /* dims: edge */
  WMFIE_SHAPE_PYRAMID = 1, /* dims: base edge, height */
  WMFIE_SHAPE_WEDGE = 2    /* dims: base width, height, length */
} wmfie_shape;

/* Format chosen from the extension: .off or .msh (Gmsh ASCII 2). */
WMFIE_API wmfie_status wmfie_mesh_load(const char *path, wmfie_mesh **out);
WMFIE_API wmfie_status wmfie_mesh_from_arrays(const double *xyz, size_t num_vertices, const int32_t *triangles,
                                              size_t num_triangles, wmfie_mesh **out);
WMFIE_API wmfie_status wmfie_mesh_sphere(double diameter, double target_edge, wmfie_mesh **out);
WMFIE_API wmfie_status wmfie_mesh_icosphere(double diameter, int frequency, wmfie_mesh **out);
WMFIE_API wmfie_status wmfie_mesh_sphere_unknowns(double diameter, int unknowns, wmfie_mesh **out);
WMFIE_API wmfie_status wmfie_mesh_canonical(wmfie_shape shape, const double *dims, size_t num_dims,
                                            double target_edge, wmfie_mesh **out);
WMFIE_API wmfie_status wmfie_mesh_canonical_segments(wmfie_shape shape, const double *dims, size_t num_dims,
                                                     int cross, int along, wmfie_mesh **out);
WMFIE_API wmfie_status wmfie_mesh_stats_get(const wmfie_mesh *mesh, wmfie_mesh_stats *out);
typedef struct wmfie_gram_diagnostics
{
  int bb_spd;
  double bb_condition, bb_jacobi_condition;
  double ba_skew_residual;  /* ||G + G^T|| / ||G|| */
  double ba_singular_ratio; /* sigma_min / sigma_max */
} wmfie_gram_diagnostics;

/* Dense analysis, limited to 4000 unknowns. */
WMFIE_API wmfie_status wmfie_mesh_gram_diagnostics(const wmfie_mesh *mesh, wmfie_gram_diagnostics *out);
WMFIE_API wmfie_status wmfie_mesh_write_off(const wmfie_mesh *mesh, const char *path);
WMFIE_API void wmfie_mesh_free(wmfie_mesh *mesh);

/* ---- problems: assembled operators at one frequency ---- */

enum
{
  WMFIE_ASSEMBLE_EFIE = 1,   /* B and C */
  WMFIE_ASSEMBLE_MFIE = 2,   /* K_alpha */
  WMFIE_ASSEMBLE_KBETA = 4   /* K_beta */
};

typedef struct wmfie_quadrature
{
  int far_observer_degree, far_source_degree;
  int near_observer_degree, near_source_degree;
  double near_factor;
} wmfie_quadrature;

WMFIE_API void wmfie_quadrature_default(wmfie_quadrature *q);

/* quadrature may be NULL for defaults. The mesh must outlive the problem. */
WMFIE_API wmfie_status wmfie_problem_create(const wmfie_mesh *mesh, double frequency, unsigned assemble_flags,
                                            const wmfie_quadrature *quadrature, wmfie_problem **out);
/* E0 = pol_re + j pol_im, transverse to the unit direction. */
WMFIE_API wmfie_status wmfie_problem_set_plane_wave(wmfie_problem *problem, const double direction[3],
                                                    const double pol_re[3], const double pol_im[3]);
WMFIE_API wmfie_status wmfie_problem_unknowns(const wmfie_problem *problem, int *out);

typedef enum wmfie_matrix
{
  WMFIE_MATRIX_B = 0,
  WMFIE_MATRIX_C = 1,
  WMFIE_MATRIX_K_ALPHA = 2,
  WMFIE_MATRIX_K_BETA = 3,
  WMFIE_MATRIX_G_BB = 4,
  WMFIE_MATRIX_G_BA = 5
} wmfie_matrix;

WMFIE_API wmfie_status wmfie_problem_dump_matrix(const wmfie_problem *problem, wmfie_matrix which, const char *path);
WMFIE_API void wmfie_problem_free(wmfie_problem *problem);

/* ---- formulations and solves ---- */

typedef enum wmfie_formulation
{
  WMFIE_EFIE = 0,
  WMFIE_MFIE = 1,
  WMFIE_WMFIE1 = 2,
  WMFIE_WMFIE2 = 3,
  WMFIE_WMFIE3 = 4,
  WMFIE_CFIE = 5,
  WMFIE_WCFIE = 6,
  WMFIE_CSIE = 7
} wmfie_formulation;

typedef enum wmfie_solver
{
  WMFIE_SOLVER_GMRES = 0,
  WMFIE_SOLVER_DIRECT = 1
} wmfie_solver;

typedef struct wmfie_solve_options
{
  wmfie_formulation formulation;
  double gamma;      /* WMFIE / WCFIE weighting, default 0.5 */
  double alpha_cfie; /* default 0.5 */
  double beta_cs;    /* default 10 */
  double inner_tol;  /* Gram solves, default 1e-10 */
  int inner_maxit;   /* default 1000 */
  wmfie_solver solver;
  double tol;        /* GMRES relative residual, default 1e-4 */
  int maxit;         /* default 2000 */
} wmfie_solve_options;

WMFIE_API void wmfie_solve_options_default(wmfie_solve_options *opt);
WMFIE_API wmfie_status wmfie_formulation_from_name(const char *name, wmfie_formulation *out);
WMFIE_API const char *wmfie_formulation_name(wmfie_formulation f);

/* On GMRES non-convergence returns WMFIE_ERR_NOT_CONVERGED and still stores
   the partial solution in *out (caller frees). */
WMFIE_API wmfie_status wmfie_solve(const wmfie_problem *problem, const wmfie_solve_options *options,
                                   wmfie_solution **out);

typedef struct wmfie_solution_info
{
  int unknowns;
  int iterations;
  int converged;
  double final_residual;  /* last recorded relative residual */
  double true_residual;
  double wall_time;       /* seconds */
  long inner_solves;      /* Gram solves performed */
  long inner_iterations;  /* total CG iterations */
  int inner_max_iterations;
  int has_magnetic;       /* CSIE solutions carry magnetic coefficients */
} wmfie_solution_info;

WMFIE_API wmfie_status wmfie_solution_info_get(const wmfie_solution *solution, wmfie_solution_info *out);
/* count doubles written: history has `iterations` entries. */
WMFIE_API wmfie_status wmfie_solution_residuals(const wmfie_solution *solution, double *out, size_t capacity);
/* 2 * unknowns doubles each. */
WMFIE_API wmfie_status wmfie_solution_currents(const wmfie_solution *solution, double *electric, double *magnetic);
/* Norms of Re/Im of the coefficients and of the per-triangle divergence. */
WMFIE_API wmfie_status wmfie_solution_divergence_norms(const wmfie_problem *problem, const wmfie_solution *solution,
                                                       double out[4]);
WMFIE_API void wmfie_solution_free(wmfie_solution *solution);

/* ---- fields ---- */

/* out: 4 * n doubles per direction (E_theta re, im, E_phi re, im). */
WMFIE_API wmfie_status wmfie_far_field(const wmfie_problem *problem, const wmfie_solution *solution,
                                       const double *theta_deg, const double *phi_deg, size_t n, double *out);
/* out: 12 * n doubles per point (E xyz re/im interleaved, then H). */
WMFIE_API wmfie_status wmfie_near_field(const wmfie_problem *problem, const wmfie_solution *solution,
                                        const double *xyz, size_t n, double *out);

/* Mie series for a PEC sphere at the origin; order <= 0 selects the default. */
WMFIE_API wmfie_status wmfie_mie_far_field(double radius, double frequency, int order, const double direction[3],
                                           const double pol_re[3], const double pol_im[3], const double *theta_deg,
                                           const double *phi_deg, size_t n, double *out);
WMFIE_API wmfie_status wmfie_mie_near_field(double radius, double frequency, int order, const double direction[3],
                                            const double pol_re[3], const double pol_im[3], const double *xyz,
                                            size_t n, double *out);
WMFIE_API wmfie_status wmfie_mie_cross_sections(double radius, double frequency, int order, double *extinction,
                                                double *scattering);

/* ---- metrics ---- */

/* Far-field arrays in the 4 * n layout above. */
WMFIE_API wmfie_status wmfie_far_field_error(const double *candidate, const double *reference, size_t n,
                                             double *eps_max_db, double *eps_avg_db);
WMFIE_API wmfie_status wmfie_current_error(const double *candidate, const double *reference, size_t unknowns,
                                           double *out);
/* sigma in dBsm for both polarizations, 2 * n doubles (theta, phi). */
WMFIE_API wmfie_status wmfie_bistatic_rcs(const double *far_field, size_t n, double e0_magnitude, double *out);

#ifdef __cplusplus
}
#endif

#endif /* WMFIE_WMFIE_H */
