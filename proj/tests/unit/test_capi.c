/* Copyright 2026 The wmfie Authors
   SPDX-License-Identifier: Apache-2.0 */

/* Plain C client of the shared library. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "wmfie/wmfie.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do                                                              \
  {                                                               \
    if (!(cond))                                                  \
    {                                                             \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond);  \
      failures++;                                                 \
    }                                                             \
  } while (0)

static void errors(void)
{
  wmfie_mesh *mesh = NULL;
  wmfie_formulation f;
  EXPECT(wmfie_mesh_load("/nonexistent/x.off", &mesh) == WMFIE_ERR_IO);
  EXPECT(mesh == NULL);
  EXPECT(strlen(wmfie_last_error()) > 0);
  EXPECT(wmfie_mesh_icosphere(1.0, 0, &mesh) == WMFIE_ERR_INVALID_ARGUMENT);
  EXPECT(wmfie_mesh_icosphere(1.0, 2, NULL) == WMFIE_ERR_INVALID_ARGUMENT);
  EXPECT(wmfie_formulation_from_name("nfie", &f) == WMFIE_ERR_INVALID_ARGUMENT);
  EXPECT(strstr(wmfie_last_error(), "WMFIE") != NULL);
  EXPECT(wmfie_formulation_from_name("wcfie", &f) == WMFIE_OK && f == WMFIE_WCFIE);
  EXPECT(strcmp(wmfie_status_name(WMFIE_ERR_TOPOLOGY), "") != 0);
  wmfie_mesh_free(NULL);
  wmfie_problem_free(NULL);
  wmfie_solution_free(NULL);
}

static void open_surface(void)
{
  const double xyz[] = {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1};
  const int32_t tri[] = {0, 2, 1, 0, 1, 3, 0, 3, 2};
  wmfie_mesh *mesh = NULL;
  EXPECT(wmfie_mesh_from_arrays(xyz, 4, tri, 3, &mesh) == WMFIE_ERR_TOPOLOGY);
}

static void sphere_solve(void)
{
  wmfie_mesh *mesh = NULL;
  wmfie_problem *problem = NULL;
  wmfie_solution *sol = NULL;
  wmfie_mesh_stats stats;
  wmfie_solve_options opt;
  wmfie_solution_info info;
  const double dir[3] = {0, 0, 1}, pr[3] = {1, 0, 0}, pi_[3] = {0, 0, 0};
  const double freq = 150e6;
  double theta[19], phi[19], ff[4 * 19], mie[4 * 19], eps_max = 0, eps_avg = 0;
  double *hist;
  int n = 0, i;

  EXPECT(wmfie_set_threads(1) == WMFIE_OK);
  EXPECT(wmfie_mesh_icosphere(1.0, 4, &mesh) == WMFIE_OK);
  EXPECT(wmfie_mesh_stats_get(mesh, &stats) == WMFIE_OK);
  EXPECT(stats.triangles == 320);
  EXPECT(wmfie_problem_create(mesh, freq, WMFIE_ASSEMBLE_EFIE | WMFIE_ASSEMBLE_MFIE, NULL, &problem) == WMFIE_OK);
  EXPECT(wmfie_problem_unknowns(problem, &n) == WMFIE_OK && n == 480);
  EXPECT(wmfie_problem_set_plane_wave(problem, dir, pr, pi_) == WMFIE_OK);

  wmfie_solve_options_default(&opt);
  opt.formulation = WMFIE_WMFIE1;
  opt.tol = 1e-8;
  EXPECT(wmfie_solve(problem, &opt, &sol) == WMFIE_OK);
  EXPECT(wmfie_solution_info_get(sol, &info) == WMFIE_OK);
  EXPECT(info.converged && info.unknowns == 480 && info.inner_solves > 0);
  hist = malloc(sizeof(double) * (size_t)info.iterations);
  EXPECT(wmfie_solution_residuals(sol, hist, (size_t)info.iterations) == WMFIE_OK);
  EXPECT(hist[info.iterations - 1] <= 1e-8);
  free(hist);

  for (i = 0; i < 19; i++)
  {
    theta[i] = 10.0 * i;
    phi[i] = 0.0;
  }
  EXPECT(wmfie_far_field(problem, sol, theta, phi, 19, ff) == WMFIE_OK);
  EXPECT(wmfie_mie_far_field(stats.volume_equivalent_radius, freq, 0, dir, pr, pi_, theta, phi, 19, mie) == WMFIE_OK);
  EXPECT(wmfie_far_field_error(ff, mie, 19, &eps_max, &eps_avg) == WMFIE_OK);
  EXPECT(eps_max < -30.0);

  /* The CSIE needs K_beta, which this problem did not assemble. */
  opt.formulation = WMFIE_CSIE;
  wmfie_solution_free(sol);
  sol = NULL;
  EXPECT(wmfie_solve(problem, &opt, &sol) == WMFIE_ERR_INVALID_ARGUMENT);

  wmfie_solution_free(sol);
  wmfie_problem_free(problem);
  wmfie_mesh_free(mesh);
}

int main(void)
{
  EXPECT(strlen(wmfie_version()) > 0);
  errors();
  open_surface();
  sphere_solve();
  if (failures)
  {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("capi: ok\n");
  return 0;
}
