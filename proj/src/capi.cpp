// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include "wmfie/wmfie.h"

#include <chrono>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include <omp.h>

#include "wmfie/formulations.hpp"
#include "wmfie/mesh.hpp"
#include "wmfie/mie.hpp"
#include "wmfie/postproc.hpp"

using namespace wmfie;

struct wmfie_mesh
{
  TriangleMesh mesh;
};

struct wmfie_problem
{
  const TriangleMesh *mesh;
  std::unique_ptr<RwgSpace> space;
  OperatorSet ops;
  std::optional<PlaneWave> wave;
  ExcitationVectors exc;
};

struct wmfie_solution
{
  CVector i, v;
  SolveReport report;
  long inner_solves = 0, inner_iterations = 0;
  int inner_max = 0;
};

namespace
{

thread_local std::string last_error;

wmfie_status to_status(ErrorCode code)
{
  switch (code)
  {
    case ErrorCode::InvalidArgument:
      return WMFIE_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse:
      return WMFIE_ERR_PARSE;
    case ErrorCode::Io:
      return WMFIE_ERR_IO;
    case ErrorCode::Topology:
      return WMFIE_ERR_TOPOLOGY;
    case ErrorCode::NotConverged:
      return WMFIE_ERR_NOT_CONVERGED;
    case ErrorCode::Numeric:
      return WMFIE_ERR_NUMERIC;
    case ErrorCode::Internal:
      return WMFIE_ERR_INTERNAL;
  }
  return WMFIE_ERR_INTERNAL;
}

template <class F>
wmfie_status guarded(F &&body)
{
  try
  {
    last_error.clear();
    return body();
  }
  catch (const Error &e)
  {
    last_error = e.what();
    return to_status(e.code());
  }
  catch (const std::bad_alloc &)
  {
    last_error = "out of memory";
    return WMFIE_ERR_INTERNAL;
  }
  catch (const std::exception &e)
  {
    last_error = e.what();
    return WMFIE_ERR_INTERNAL;
  }
}

void require(bool cond, const char *what)
{
  if (!cond)
  {
    fail(ErrorCode::InvalidArgument, what);
  }
}

wmfie_status make_mesh(TriangleMesh &&m, wmfie_mesh **out)
{
  *out = new wmfie_mesh{std::move(m)};
  return WMFIE_OK;
}

CanonicalShape to_shape(wmfie_shape s)
{
  switch (s)
  {
    case WMFIE_SHAPE_CUBE:
      return CanonicalShape::Cube;
    case WMFIE_SHAPE_PYRAMID:
      return CanonicalShape::Pyramid;
    case WMFIE_SHAPE_WEDGE:
      return CanonicalShape::Wedge;
  }
  fail(ErrorCode::InvalidArgument, "unknown shape");
}

PlaneWave to_wave(const double *dir, const double *re, const double *im)
{
  require(dir && re, "plane wave direction and polarization are required");
  PlaneWave w;
  w.direction = Vec3(dir[0], dir[1], dir[2]);
  for (int k = 0; k < 3; k++)
  {
    w.polarization[k] = cplx(re[k], im ? im[k] : 0.0);
  }
  validate_plane_wave(w);
  return w;
}

void write_cut(const FarFieldCut &cut, double *out)
{
  for (std::size_t d = 0; d < cut.size(); d++)
  {
    out[4 * d] = cut.e_theta[d].real();
    out[4 * d + 1] = cut.e_theta[d].imag();
    out[4 * d + 2] = cut.e_phi[d].real();
    out[4 * d + 3] = cut.e_phi[d].imag();
  }
}

FarFieldCut read_cut(const double *in, std::size_t n)
{
  FarFieldCut cut;
  for (std::size_t d = 0; d < n; d++)
  {
    cut.directions.push_back({0.0, 0.0});
    cut.e_theta.emplace_back(in[4 * d], in[4 * d + 1]);
    cut.e_phi.emplace_back(in[4 * d + 2], in[4 * d + 3]);
  }
  return cut;
}

std::vector<Direction> read_directions(const double *theta, const double *phi, std::size_t n)
{
  require(n == 0 || (theta && phi), "direction arrays are required");
  std::vector<Direction> d(n);
  for (std::size_t k = 0; k < n; k++)
  {
    d[k] = {theta[k], phi[k]};
  }
  return d;
}

std::vector<Vec3> read_points(const double *xyz, std::size_t n)
{
  require(n == 0 || xyz, "point array is required");
  std::vector<Vec3> p(n);
  for (std::size_t k = 0; k < n; k++)
  {
    p[k] = Vec3(xyz[3 * k], xyz[3 * k + 1], xyz[3 * k + 2]);
  }
  return p;
}

void write_points(const std::vector<NearFieldPoint> &pts, double *out)
{
  for (std::size_t k = 0; k < pts.size(); k++)
  {
    for (int c = 0; c < 3; c++)
    {
      out[12 * k + 2 * c] = pts[k].e[c].real();
      out[12 * k + 2 * c + 1] = pts[k].e[c].imag();
      out[12 * k + 6 + 2 * c] = pts[k].h[c].real();
      out[12 * k + 6 + 2 * c + 1] = pts[k].h[c].imag();
    }
  }
}

CVector read_complex(const double *in, std::size_t n)
{
  CVector v(n);
  for (std::size_t k = 0; k < n; k++)
  {
    v[k] = cplx(in[2 * k], in[2 * k + 1]);
  }
  return v;
}

}  // namespace

extern "C" {

const char *wmfie_version(void) { return "1.0.0"; }

wmfie_status wmfie_set_threads(int threads)
{
  return guarded(
      [&]
      {
        require(threads >= 1, "thread count must be >= 1");
        omp_set_num_threads(threads);
        return WMFIE_OK;
      });
}

const char *wmfie_last_error(void) { return last_error.c_str(); }

const char *wmfie_status_name(wmfie_status status)
{
  switch (status)
  {
    case WMFIE_OK:
      return "ok";
    case WMFIE_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case WMFIE_ERR_PARSE:
      return "parse error";
    case WMFIE_ERR_IO:
      return "I/O error";
    case WMFIE_ERR_TOPOLOGY:
      return "topology error";
    case WMFIE_ERR_NOT_CONVERGED:
      return "not converged";
    case WMFIE_ERR_NUMERIC:
      return "numerical failure";
    case WMFIE_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

wmfie_status wmfie_mesh_load(const char *path, wmfie_mesh **out)
{
  return guarded(
      [&]
      {
        require(path && out, "path and out are required");
        const std::string p(path);
        const auto dot = p.rfind('.');
        const std::string ext = dot == std::string::npos ? "" : p.substr(dot);
        MeshFormat fmt;
        if (ext == ".off" || ext == ".OFF")
        {
          fmt = MeshFormat::Off;
        }
        else if (ext == ".msh" || ext == ".MSH")
        {
          fmt = MeshFormat::GmshAscii;
        }
        else
        {
          fail(ErrorCode::InvalidArgument, "unknown mesh extension '" + ext + "' (expected .off or .msh)");
        }
        return make_mesh(load_mesh(p, fmt), out);
      });
}

wmfie_status wmfie_mesh_from_arrays(const double *xyz, size_t num_vertices, const int32_t *triangles,
                                    size_t num_triangles, wmfie_mesh **out)
{
  return guarded(
      [&]
      {
        require(xyz && triangles && out, "arrays and out are required");
        std::vector<Vec3> v(num_vertices);
        for (size_t k = 0; k < num_vertices; k++)
        {
          v[k] = Vec3(xyz[3 * k], xyz[3 * k + 1], xyz[3 * k + 2]);
        }
        std::vector<TriangleMesh::Triangle> t(num_triangles);
        for (size_t k = 0; k < num_triangles; k++)
        {
          t[k] = {triangles[3 * k], triangles[3 * k + 1], triangles[3 * k + 2]};
        }
        return make_mesh(TriangleMesh::build(std::move(v), std::move(t)), out);
      });
}

wmfie_status wmfie_mesh_sphere(double diameter, double target_edge, wmfie_mesh **out)
{
  return guarded(
      [&]
      {
        require(out, "out is required");
        return make_mesh(generate_sphere(diameter, target_edge), out);
      });
}

wmfie_status wmfie_mesh_icosphere(double diameter, int frequency, wmfie_mesh **out)
{
  return guarded(
      [&]
      {
        require(out, "out is required");
        return make_mesh(generate_icosphere(diameter, frequency), out);
      });
}

wmfie_status wmfie_mesh_sphere_unknowns(double diameter, int unknowns, wmfie_mesh **out)
{
  return guarded(
      [&]
      {
        require(out, "out is required");
        return make_mesh(generate_sphere_by_unknowns(diameter, unknowns), out);
      });
}

wmfie_status wmfie_mesh_canonical(wmfie_shape shape, const double *dims, size_t num_dims, double target_edge,
                                  wmfie_mesh **out)
{
  return guarded(
      [&]
      {
        require(out && (dims || num_dims == 0), "dims and out are required");
        CanonicalDims d{std::vector<double>(dims, dims + num_dims)};
        return make_mesh(generate_canonical(to_shape(shape), d, target_edge), out);
      });
}

wmfie_status wmfie_mesh_canonical_segments(wmfie_shape shape, const double *dims, size_t num_dims, int cross,
                                           int along, wmfie_mesh **out)
{
  return guarded(
      [&]
      {
        require(out && (dims || num_dims == 0), "dims and out are required");
        CanonicalDims d{std::vector<double>(dims, dims + num_dims)};
        return make_mesh(generate_canonical_segments(to_shape(shape), d, cross, along), out);
      });
}

wmfie_status wmfie_mesh_stats_get(const wmfie_mesh *mesh, wmfie_mesh_stats *out)
{
  return guarded(
      [&]
      {
        require(mesh && out, "mesh and out are required");
        const MeshStats s = mesh_stats(mesh->mesh);
        out->vertices = s.vertex_count;
        out->triangles = s.triangle_count;
        out->edges = s.edge_count;
        out->mean_edge = s.mean_edge_length;
        out->max_edge = s.max_edge_length;
        out->min_edge = s.min_edge_length;
        out->total_area = s.total_area;
        out->volume = s.volume;
        out->volume_equivalent_radius = mesh->mesh.volume_equivalent_radius();
        return WMFIE_OK;
      });
}

wmfie_status wmfie_mesh_gram_diagnostics(const wmfie_mesh *mesh, wmfie_gram_diagnostics *out)
{
  return guarded(
      [&]
      {
        require(mesh && out, "mesh and out are required");
        RwgSpace space(mesh->mesh);
        const GramDiagnostics g = gram_diagnostics(space);
        out->bb_spd = g.bb_spd ? 1 : 0;
        out->bb_condition = g.bb_condition;
        out->bb_jacobi_condition = g.bb_jacobi_condition;
        out->ba_skew_residual = g.ba_skew_residual;
        out->ba_singular_ratio = g.ba_singular_ratio;
        return WMFIE_OK;
      });
}

wmfie_status wmfie_mesh_write_off(const wmfie_mesh *mesh, const char *path)
{
  return guarded(
      [&]
      {
        require(mesh && path, "mesh and path are required");
        std::ofstream f(path);
        if (!f)
        {
          fail(ErrorCode::Io, std::string("cannot open ") + path + " for writing");
        }
        write_off(mesh->mesh, f);
        if (!f)
        {
          fail(ErrorCode::Io, std::string("write failed for ") + path);
        }
        return WMFIE_OK;
      });
}

void wmfie_mesh_free(wmfie_mesh *mesh) { delete mesh; }

void wmfie_quadrature_default(wmfie_quadrature *q)
{
  if (!q)
  {
    return;
  }
  const QuadConfig d;
  q->far_observer_degree = d.far_observer_degree;
  q->far_source_degree = d.far_source_degree;
  q->near_observer_degree = d.near_observer_degree;
  q->near_source_degree = d.near_source_degree;
  q->near_factor = d.near_factor;
}

wmfie_status wmfie_problem_create(const wmfie_mesh *mesh, double frequency, unsigned assemble_flags,
                                  const wmfie_quadrature *quadrature, wmfie_problem **out)
{
  return guarded(
      [&]
      {
        require(mesh && out, "mesh and out are required");
        AssemblyOptions opt;
        opt.efie = assemble_flags & WMFIE_ASSEMBLE_EFIE;
        opt.mfie = assemble_flags & WMFIE_ASSEMBLE_MFIE;
        opt.k_beta = assemble_flags & WMFIE_ASSEMBLE_KBETA;
        if (quadrature)
        {
          opt.quad.far_observer_degree = quadrature->far_observer_degree;
          opt.quad.far_source_degree = quadrature->far_source_degree;
          opt.quad.near_observer_degree = quadrature->near_observer_degree;
          opt.quad.near_source_degree = quadrature->near_source_degree;
          opt.quad.near_factor = quadrature->near_factor;
          require(opt.quad.near_factor >= 0.0, "near_factor must be non-negative");
          for (int deg : {opt.quad.far_observer_degree, opt.quad.far_source_degree, opt.quad.near_observer_degree,
                          opt.quad.near_source_degree})
          {
            gauss_rule(deg);
          }
        }
        auto p = std::make_unique<wmfie_problem>();
        p->mesh = &mesh->mesh;
        p->space = std::make_unique<RwgSpace>(mesh->mesh);
        p->ops = assemble(*p->space, frequency, opt);
        *out = p.release();
        return WMFIE_OK;
      });
}

wmfie_status wmfie_problem_set_plane_wave(wmfie_problem *problem, const double direction[3], const double pol_re[3],
                                          const double pol_im[3])
{
  return guarded(
      [&]
      {
        require(problem, "problem is required");
        const PlaneWave w = to_wave(direction, pol_re, pol_im);
        problem->exc = excite_plane_wave(*problem->space, w, problem->ops.frequency);
        problem->wave = w;
        return WMFIE_OK;
      });
}

wmfie_status wmfie_problem_unknowns(const wmfie_problem *problem, int *out)
{
  return guarded(
      [&]
      {
        require(problem && out, "problem and out are required");
        *out = problem->space->size();
        return WMFIE_OK;
      });
}

wmfie_status wmfie_problem_dump_matrix(const wmfie_problem *problem, wmfie_matrix which, const char *path)
{
  return guarded(
      [&]
      {
        require(problem && path, "problem and path are required");
        const OperatorSet &o = problem->ops;
        CMatrix m;
        switch (which)
        {
          case WMFIE_MATRIX_B:
            m = o.B;
            break;
          case WMFIE_MATRIX_C:
            m = o.C;
            break;
          case WMFIE_MATRIX_K_ALPHA:
            m = o.K_alpha;
            break;
          case WMFIE_MATRIX_K_BETA:
            m = o.K_beta;
            break;
          case WMFIE_MATRIX_G_BB:
            m = RMatrix(o.G_bb).cast<cplx>();
            break;
          case WMFIE_MATRIX_G_BA:
            m = RMatrix(o.G_ba).cast<cplx>();
            break;
          default:
            fail(ErrorCode::InvalidArgument, "unknown matrix selector");
        }
        require(m.rows() == o.size(), "requested matrix was not assembled");
        dump_matrix(path, m);
        return WMFIE_OK;
      });
}

void wmfie_problem_free(wmfie_problem *problem) { delete problem; }

void wmfie_solve_options_default(wmfie_solve_options *opt)
{
  if (!opt)
  {
    return;
  }
  const FormulationConfig c;
  opt->formulation = WMFIE_EFIE;
  opt->gamma = c.gamma;
  opt->alpha_cfie = c.alpha_cfie;
  opt->beta_cs = c.beta_cs;
  opt->inner_tol = c.inner_tol;
  opt->inner_maxit = c.inner_maxit;
  opt->solver = WMFIE_SOLVER_GMRES;
  opt->tol = 1e-4;
  opt->maxit = 2000;
}

wmfie_status wmfie_formulation_from_name(const char *name, wmfie_formulation *out)
{
  return guarded(
      [&]
      {
        require(name && out, "name and out are required");
        *out = static_cast<wmfie_formulation>(parse_formulation_kind(name));
        return WMFIE_OK;
      });
}

const char *wmfie_formulation_name(wmfie_formulation f)
{
  static const char *names[] = {"EFIE", "MFIE", "WMFIE1", "WMFIE2", "WMFIE3", "CFIE", "WCFIE", "CSIE"};
  const int k = static_cast<int>(f);
  return k >= 0 && k < 8 ? names[k] : "?";
}

wmfie_status wmfie_solve(const wmfie_problem *problem, const wmfie_solve_options *options, wmfie_solution **out)
{
  return guarded(
      [&]
      {
        require(problem && options && out, "problem, options and out are required");
        require(problem->wave.has_value(), "no excitation set on the problem");
        const int fk = static_cast<int>(options->formulation);
        require(fk >= 0 && fk < 8, "unknown formulation");
        FormulationConfig cfg;
        cfg.kind = static_cast<FormulationKind>(fk);
        cfg.gamma = options->gamma;
        cfg.alpha_cfie = options->alpha_cfie;
        cfg.beta_cs = options->beta_cs;
        cfg.inner_tol = options->inner_tol;
        cfg.inner_maxit = options->inner_maxit;
        const auto op = make_formulation(problem->ops, problem->exc, cfg);
        auto sol = std::make_unique<wmfie_solution>();
        if (options->solver == WMFIE_SOLVER_DIRECT)
        {
          const auto t0 = std::chrono::steady_clock::now();
          const DenseSolveResult r = dense_solve_report(materialize(*op), op->rhs());
          sol->report.solution = r.x;
          sol->report.converged = true;
          sol->report.true_residual = r.residual;
          sol->report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        else if (options->solver == WMFIE_SOLVER_GMRES)
        {
          sol->report = gmres(*op, op->rhs(), options->tol, options->maxit);
        }
        else
        {
          fail(ErrorCode::InvalidArgument, "unknown solver");
        }
        sol->i = sol->report.solution;
        if (cfg.kind == FormulationKind::CSIE)
        {
          sol->v = op->magnetic_coefficients(sol->i);
        }
        sol->inner_solves = op->gram().solves();
        sol->inner_iterations = op->gram().iterations();
        sol->inner_max = op->gram().max_iterations_seen();
        const bool ok = sol->report.converged;
        *out = sol.release();
        if (!ok)
        {
          last_error = "GMRES did not converge within " + std::to_string(options->maxit) + " iterations";
          return WMFIE_ERR_NOT_CONVERGED;
        }
        return WMFIE_OK;
      });
}

wmfie_status wmfie_solution_info_get(const wmfie_solution *s, wmfie_solution_info *out)
{
  return guarded(
      [&]
      {
        require(s && out, "solution and out are required");
        out->unknowns = static_cast<int>(s->i.size());
        out->iterations = s->report.iterations;
        out->converged = s->report.converged ? 1 : 0;
        out->final_residual = s->report.residual_history.empty() ? s->report.true_residual
                                                                 : s->report.residual_history.back();
        out->true_residual = s->report.true_residual;
        out->wall_time = s->report.wall_time;
        out->inner_solves = s->inner_solves;
        out->inner_iterations = s->inner_iterations;
        out->inner_max_iterations = s->inner_max;
        out->has_magnetic = s->v.size() != 0 ? 1 : 0;
        return WMFIE_OK;
      });
}

wmfie_status wmfie_solution_residuals(const wmfie_solution *s, double *out, size_t capacity)
{
  return guarded(
      [&]
      {
        require(s && (out || capacity == 0), "solution and out are required");
        const auto &h = s->report.residual_history;
        require(capacity >= h.size(), "residual buffer too small");
        std::copy(h.begin(), h.end(), out);
        return WMFIE_OK;
      });
}

wmfie_status wmfie_solution_currents(const wmfie_solution *s, double *electric, double *magnetic)
{
  return guarded(
      [&]
      {
        require(s, "solution is required");
        for (Eigen::Index k = 0; electric && k < s->i.size(); k++)
        {
          electric[2 * k] = s->i[k].real();
          electric[2 * k + 1] = s->i[k].imag();
        }
        for (Eigen::Index k = 0; magnetic && k < s->i.size(); k++)
        {
          const cplx v = s->v.size() ? s->v[k] : cplx(0.0);
          magnetic[2 * k] = v.real();
          magnetic[2 * k + 1] = v.imag();
        }
        return WMFIE_OK;
      });
}

wmfie_status wmfie_solution_divergence_norms(const wmfie_problem *problem, const wmfie_solution *s, double out[4])
{
  return guarded(
      [&]
      {
        require(problem && s && out, "problem, solution and out are required");
        const ChargeDiagnostics cd = charge_vector(*problem->space, s->i, 2.0 * pi * problem->ops.frequency);
        out[0] = s->i.real().norm();
        out[1] = s->i.imag().norm();
        out[2] = cd.d.real().norm();
        out[3] = cd.d.imag().norm();
        return WMFIE_OK;
      });
}

void wmfie_solution_free(wmfie_solution *solution) { delete solution; }

wmfie_status wmfie_far_field(const wmfie_problem *problem, const wmfie_solution *s, const double *theta_deg,
                             const double *phi_deg, size_t n, double *out)
{
  return guarded(
      [&]
      {
        require(problem && s && (out || n == 0), "problem, solution and out are required");
        const FarFieldCut cut = far_field(*problem->space, s->i, s->v, problem->ops.k0,
                                          read_directions(theta_deg, phi_deg, n));
        write_cut(cut, out);
        return WMFIE_OK;
      });
}

wmfie_status wmfie_near_field(const wmfie_problem *problem, const wmfie_solution *s, const double *xyz, size_t n,
                              double *out)
{
  return guarded(
      [&]
      {
        require(problem && s && (out || n == 0), "problem, solution and out are required");
        write_points(near_field(*problem->space, s->i, s->v, problem->ops.k0, read_points(xyz, n)), out);
        return WMFIE_OK;
      });
}

wmfie_status wmfie_mie_far_field(double radius, double frequency, int order, const double direction[3],
                                 const double pol_re[3], const double pol_im[3], const double *theta_deg,
                                 const double *phi_deg, size_t n, double *out)
{
  return guarded(
      [&]
      {
        require(out || n == 0, "out is required");
        require(frequency > 0.0, "frequency must be positive");
        const MieSolution sol = mie_coefficients(radius, wavenumber(frequency), order);
        write_cut(mie_far_field(sol, to_wave(direction, pol_re, pol_im), read_directions(theta_deg, phi_deg, n)),
                  out);
        return WMFIE_OK;
      });
}

wmfie_status wmfie_mie_near_field(double radius, double frequency, int order, const double direction[3],
                                  const double pol_re[3], const double pol_im[3], const double *xyz, size_t n,
                                  double *out)
{
  return guarded(
      [&]
      {
        require(out || n == 0, "out is required");
        require(frequency > 0.0, "frequency must be positive");
        const MieSolution sol = mie_coefficients(radius, wavenumber(frequency), order);
        write_points(mie_near_field(sol, to_wave(direction, pol_re, pol_im), read_points(xyz, n)), out);
        return WMFIE_OK;
      });
}

wmfie_status wmfie_mie_cross_sections(double radius, double frequency, int order, double *extinction,
                                      double *scattering)
{
  return guarded(
      [&]
      {
        require(frequency > 0.0, "frequency must be positive");
        const MieSolution sol = mie_coefficients(radius, wavenumber(frequency), order);
        if (extinction)
        {
          *extinction = mie_extinction_cross_section(sol);
        }
        if (scattering)
        {
          *scattering = mie_scattering_cross_section(sol);
        }
        return WMFIE_OK;
      });
}

wmfie_status wmfie_far_field_error(const double *candidate, const double *reference, size_t n, double *eps_max_db,
                                   double *eps_avg_db)
{
  return guarded(
      [&]
      {
        require(candidate && reference, "field arrays are required");
        const ErrorReport r = relative_error_cut(read_cut(candidate, n), read_cut(reference, n));
        if (eps_max_db)
        {
          *eps_max_db = r.eps_max_db;
        }
        if (eps_avg_db)
        {
          *eps_avg_db = r.eps_avg_db;
        }
        return WMFIE_OK;
      });
}

wmfie_status wmfie_current_error(const double *candidate, const double *reference, size_t unknowns, double *out)
{
  return guarded(
      [&]
      {
        require(candidate && reference && out, "arrays and out are required");
        *out = current_error(read_complex(candidate, unknowns), read_complex(reference, unknowns));
        return WMFIE_OK;
      });
}

wmfie_status wmfie_bistatic_rcs(const double *far_field_values, size_t n, double e0_magnitude, double *out)
{
  return guarded(
      [&]
      {
        require((far_field_values && out) || n == 0, "arrays are required");
        const RcsValues r = bistatic_rcs(read_cut(far_field_values, n), e0_magnitude);
        for (size_t k = 0; k < n; k++)
        {
          out[2 * k] = r.sigma_theta_dbsm[k];
          out[2 * k + 1] = r.sigma_phi_dbsm[k];
        }
        return WMFIE_OK;
      });
}

}  // extern "C"
