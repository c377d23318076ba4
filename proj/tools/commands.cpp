// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "csv.hpp"
#include "handles.hpp"

namespace cli
{

namespace
{

constexpr double kSpeedOfLight = 299792458.0;
constexpr double kPi = 3.14159265358979323846;

double wavelength(double f) { return kSpeedOfLight / f; }

template <typename... Args>
void log(fmt::format_string<Args...> format, Args &&...args)
{
  fmt::print(stderr, format, std::forward<Args>(args)...);
  std::fputc('\n', stderr);
}

std::string name(wmfie_formulation f) { return wmfie_formulation_name(f); }

MeshPtr build_mesh(const GeometrySpec &g, double level, double frequency)
{
  wmfie_mesh *m = nullptr;
  const std::string stage = "mesh";
  if (g.kind == "sphere")
  {
    check(wmfie_mesh_sphere(g.diameter, wavelength(frequency) / level, &m), stage);
  }
  else if (g.kind == "icosphere")
  {
    check(wmfie_mesh_icosphere(g.diameter, static_cast<int>(std::lround(level)), &m), stage);
  }
  else if (g.kind == "sphere-unknowns")
  {
    check(wmfie_mesh_sphere_unknowns(g.diameter, static_cast<int>(std::lround(level)), &m), stage);
  }
  else if (g.kind == "canonical")
  {
    check(wmfie_mesh_canonical(g.shape, g.dims.data(), g.dims.size(), wavelength(frequency) / level, &m), stage);
  }
  else if (g.kind == "segments")
  {
    const int cross = static_cast<int>(std::lround(level));
    const int along = std::max(1, static_cast<int>(std::lround(level * g.along_ratio)));
    check(wmfie_mesh_canonical_segments(g.shape, g.dims.data(), g.dims.size(), cross, along, &m), stage);
  }
  else
  {
    check(wmfie_mesh_load(g.path.c_str(), &m), stage);
  }
  return MeshPtr(m);
}

wmfie_mesh_stats stats_of(const wmfie_mesh *m)
{
  wmfie_mesh_stats s;
  check(wmfie_mesh_stats_get(m, &s), "mesh stats");
  return s;
}

struct Directions
{
  std::vector<double> theta, phi;
  std::size_t size() const { return theta.size(); }
};

Directions directions_of(const FarFieldSpec &spec)
{
  Directions d;
  const int n = spec.theta_count;
  for (double phi : spec.phi_deg)
  {
    for (int k = 0; k < n; k++)
    {
      d.theta.push_back(180.0 * k / (n - 1));
      d.phi.push_back(phi);
    }
  }
  return d;
}

bool needs_efie(wmfie_formulation f)
{
  return f == WMFIE_EFIE || f == WMFIE_CFIE || f == WMFIE_WCFIE || f == WMFIE_CSIE;
}

bool needs_mfie(wmfie_formulation f)
{
  return f == WMFIE_MFIE || f == WMFIE_WMFIE1 || f == WMFIE_WMFIE2 || f == WMFIE_WMFIE3 || f == WMFIE_CFIE ||
         f == WMFIE_WCFIE;
}

unsigned flags_for(const std::vector<wmfie_formulation> &fs)
{
  unsigned flags = 0;
  for (auto f : fs)
  {
    if (needs_efie(f))
      flags |= WMFIE_ASSEMBLE_EFIE;
    if (needs_mfie(f))
      flags |= WMFIE_ASSEMBLE_MFIE;
    if (f == WMFIE_CSIE)
      flags |= WMFIE_ASSEMBLE_KBETA;
  }
  return flags;
}

ProblemPtr make_problem(const wmfie_mesh *mesh, double f, unsigned flags, const WaveSpec &w)
{
  wmfie_problem *p = nullptr;
  check(wmfie_problem_create(mesh, f, flags, nullptr, &p), fmt::format("assembly at {} Hz", f));
  ProblemPtr out(p);
  check(wmfie_problem_set_plane_wave(p, w.direction.data(), w.pol_re.data(), w.pol_im.data()), "excitation");
  return out;
}

int unknowns_of(const wmfie_problem *p)
{
  int n = 0;
  check(wmfie_problem_unknowns(p, &n), "unknowns");
  return n;
}

struct Solved
{
  wmfie_formulation formulation;
  SolutionPtr solution;
  wmfie_solution_info info{};
  std::vector<double> far;       // 4 per direction
  std::vector<double> currents;  // 2 per unknown
};

Solved solve(RunContext &ctx, const wmfie_problem *p, const wmfie_solve_options &opt, const Directions *dirs)
{
  Solved out;
  out.formulation = opt.formulation;
  wmfie_solution *s = nullptr;
  const wmfie_status st = wmfie_solve(p, &opt, &s);
  if (st == WMFIE_ERR_NOT_CONVERGED)
  {
    ctx.unconverged = true;
    log("warning: {} did not converge: {}", name(opt.formulation), wmfie_last_error());
  }
  else
  {
    check(st, "solve " + name(opt.formulation));
  }
  out.solution.reset(s);
  check(wmfie_solution_info_get(s, &out.info), "solution info");
  out.currents.resize(2 * static_cast<std::size_t>(out.info.unknowns));
  check(wmfie_solution_currents(s, out.currents.data(), nullptr), "currents");
  if (dirs)
  {
    out.far.resize(4 * dirs->size());
    check(wmfie_far_field(p, s, dirs->theta.data(), dirs->phi.data(), dirs->size(), out.far.data()), "far field");
  }
  log("  {:<7} N={} iterations={} converged={} time={:.2f}s", name(opt.formulation), out.info.unknowns,
      out.info.iterations, out.info.converged, out.info.wall_time);
  return out;
}

struct FieldError
{
  double max_db = std::nan("");
  double avg_db = std::nan("");
};

FieldError far_error(const std::vector<double> &cand, const std::vector<double> &ref)
{
  FieldError e;
  if (ref.empty())
  {
    return e;
  }
  check(wmfie_far_field_error(cand.data(), ref.data(), cand.size() / 4, &e.max_db, &e.avg_db), "far-field error");
  return e;
}

double e0_magnitude(const WaveSpec &w)
{
  double s = 0.0;
  for (int k = 0; k < 3; k++)
  {
    s += w.pol_re[k] * w.pol_re[k] + w.pol_im[k] * w.pol_im[k];
  }
  return std::sqrt(s);
}

void save_far_field(const std::filesystem::path &path, const Directions &d, const std::vector<double> &ff,
                    const WaveSpec &w)
{
  std::vector<double> rcs(2 * d.size());
  check(wmfie_bistatic_rcs(ff.data(), d.size(), e0_magnitude(w), rcs.data()), "rcs");
  write_far_field(path, FarFieldTable{d.theta, d.phi, ff}, rcs);
}

std::vector<double> fibonacci_sphere(double radius, int n)
{
  std::vector<double> xyz;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; i++)
  {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double r = std::sqrt(1.0 - z * z);
    xyz.insert(xyz.end(), {radius * r * std::cos(golden * i), radius * r * std::sin(golden * i), radius * z});
  }
  return xyz;
}

// Mean |E - E_ref| over the points, relative to the largest |E_ref|, in dB.
double near_error_db(const std::vector<double> &cand, const std::vector<double> &ref)
{
  const std::size_t n = ref.size() / 12;
  double peak = 0.0, sum = 0.0;
  for (std::size_t p = 0; p < n; p++)
  {
    double d2 = 0.0, r2 = 0.0;
    for (int k = 0; k < 6; k++)
    {
      const double rv = ref[12 * p + k], cv = cand[12 * p + k];
      d2 += (cv - rv) * (cv - rv);
      r2 += rv * rv;
    }
    sum += std::sqrt(d2);
    peak = std::max(peak, std::sqrt(r2));
  }
  if (peak == 0.0 || sum == 0.0)
  {
    return -200.0;
  }
  return std::max(-200.0, 20.0 * std::log10(sum / n / peak));
}

double resolve_mie_radius(const RunContext &ctx, const wmfie_mesh *mesh)
{
  if (ctx.mie_radius_override)
  {
    return *ctx.mie_radius_override;
  }
  const auto &ref = ctx.scenario.reference;
  if (ref.radius)
  {
    return *ref.radius;
  }
  if (ref.volume_radius && mesh)
  {
    return stats_of(mesh).volume_equivalent_radius;
  }
  return 0.5 * ctx.scenario.geometry.diameter;
}

struct Reference
{
  std::vector<double> far;
  bool mie = false;
  double mie_radius = 0.0;
  MeshPtr mesh;
  ProblemPtr problem;
  std::optional<Solved> efie;
};

Reference make_reference(RunContext &ctx, const wmfie_mesh *mesh, double f, const Directions &d,
                         double fallback_level)
{
  const Scenario &sc = ctx.scenario;
  Reference ref;
  switch (sc.reference.kind)
  {
    case ReferenceKind::None:
      return ref;
    case ReferenceKind::Mie:
    {
      ref.mie = true;
      ref.mie_radius = resolve_mie_radius(ctx, mesh);
      ref.far.resize(4 * d.size());
      check(wmfie_mie_far_field(ref.mie_radius, f, 0, sc.wave.direction.data(), sc.wave.pol_re.data(),
                                sc.wave.pol_im.data(), d.theta.data(), d.phi.data(), d.size(), ref.far.data()),
            "mie reference");
      break;
    }
    case ReferenceKind::Efie:
    {
      const double level = sc.reference.level > 0.0 ? sc.reference.level : fallback_level;
      if (!(level > 0.0))
      {
        throw CliError(kExitConfig, "config: reference.kind = efie needs reference.level");
      }
      GeometrySpec g = sc.geometry;
      g.along_ratio = sc.reference.along_ratio.value_or(g.along_ratio);
      ref.mesh = build_mesh(g, level, sc.frequency);
      ref.problem = make_problem(ref.mesh.get(), f, WMFIE_ASSEMBLE_EFIE, sc.wave);
      log("reference: EFIE on level {} ({} unknowns)", level, unknowns_of(ref.problem.get()));
      wmfie_solve_options opt = sc.solve;
      opt.formulation = WMFIE_EFIE;
      opt.tol = std::min(opt.tol, 1e-6);
      ref.efie = solve(ctx, ref.problem.get(), opt, &d);
      ref.far = ref.efie->far;
      break;
    }
    case ReferenceKind::File:
    {
      FarFieldTable t = read_far_field(sc.reference.file);
      if (t.theta_deg.size() != d.size())
      {
        throw CliError(kExitConfig, fmt::format("reference {}: {} directions, scenario needs {}",
                                                sc.reference.file.string(), t.theta_deg.size(), d.size()));
      }
      for (std::size_t k = 0; k < d.size(); k++)
      {
        if (std::abs(t.theta_deg[k] - d.theta[k]) > 1e-9 || std::abs(t.phi_deg[k] - d.phi[k]) > 1e-9)
        {
          throw CliError(kExitConfig, "reference " + sc.reference.file.string() +
                                          ": direction grid differs from the scenario");
        }
      }
      ref.far = std::move(t.values);
      break;
    }
  }
  if (!sc.reference.save.empty())
  {
    save_far_field(sc.reference.save, d, ref.far, sc.wave);
  }
  return ref;
}

std::vector<double> near_field_of(const wmfie_problem *p, const Solved &s, const std::vector<double> &xyz)
{
  std::vector<double> out(4 * xyz.size());
  check(wmfie_near_field(p, s.solution.get(), xyz.data(), xyz.size() / 3, out.data()), "near field");
  return out;
}

std::vector<double> near_reference(const RunContext &ctx, const Reference &ref, double f,
                                   const std::vector<double> &xyz)
{
  std::vector<double> out;
  const WaveSpec &w = ctx.scenario.wave;
  if (ref.mie)
  {
    out.resize(4 * xyz.size());
    check(wmfie_mie_near_field(ref.mie_radius, f, 0, w.direction.data(), w.pol_re.data(), w.pol_im.data(),
                               xyz.data(), xyz.size() / 3, out.data()),
          "mie near field");
  }
  else if (ref.efie)
  {
    out = near_field_of(ref.problem.get(), *ref.efie, xyz);
  }
  return out;
}

double current_error_of(const Solved &s, const std::vector<double> *efie)
{
  if (!efie || efie->size() != s.currents.size())
  {
    return std::nan("");
  }
  double e = 0.0;
  check(wmfie_current_error(s.currents.data(), efie->data(), s.currents.size() / 2, &e), "current error");
  return e;
}

std::string maybe(double v, std::string (*f)(double))
{
  return std::isnan(v) ? std::string("nan") : f(v);
}

void require_formulations(const Scenario &sc)
{
  if (sc.formulations.empty())
  {
    throw CliError(kExitConfig, "config: formulations.names must list at least one formulation");
  }
}

std::filesystem::path out_file(const RunContext &ctx, const std::string &name) { return ctx.out_dir / name; }

int finish(const RunContext &ctx) { return ctx.unconverged ? kExitSolver : kExitOk; }

// Solves every formulation on one problem; EFIE currents are kept for eps_i.
struct LevelResult
{
  std::vector<Solved> solved;
  const std::vector<double> *efie_currents = nullptr;
};

LevelResult solve_all(RunContext &ctx, const wmfie_problem *p, const std::vector<wmfie_formulation> &fs,
                      const Directions &d, const wmfie_solve_options &base)
{
  LevelResult r;
  for (auto f : fs)
  {
    wmfie_solve_options opt = base;
    opt.formulation = f;
    r.solved.push_back(solve(ctx, p, opt, &d));
  }
  for (const auto &s : r.solved)
  {
    if (s.formulation == WMFIE_EFIE)
    {
      r.efie_currents = &s.currents;
    }
  }
  return r;
}

}  // namespace

int cmd_run(RunContext &ctx)
{
  const Scenario &sc = ctx.scenario;
  require_formulations(sc);
  const double f = sc.frequency;
  MeshPtr mesh = build_mesh(sc.geometry, sc.geometry.level, f);
  const auto st = stats_of(mesh.get());
  const Directions d = directions_of(sc.far_field);
  Reference ref = make_reference(ctx, mesh.get(), f, d, 0.0);
  ProblemPtr prob = make_problem(mesh.get(), f, flags_for(sc.formulations), sc.wave);
  log("run: {} unknowns, mean edge lambda/{:.2f}", unknowns_of(prob.get()), wavelength(f) / st.mean_edge);

  LevelResult lr = solve_all(ctx, prob.get(), sc.formulations, d, sc.solve);

  std::vector<double> xyz, nf_ref;
  if (sc.near_field.radius > 0.0)
  {
    xyz = fibonacci_sphere(sc.near_field.radius, sc.near_field.points);
    nf_ref = near_reference(ctx, ref, f, xyz);
  }

  CsvTable errors("run", {"formulation", "unknowns", "iterations", "converged", "final_residual", "eps_max_db",
                          "eps_avg_db", "eps_i", "eps_nf_db"});
  CsvTable residuals("residuals", {"formulation", "iteration", "relative_residual"});
  for (const auto &s : lr.solved)
  {
    const FieldError fe = far_error(s.far, ref.far);
    double nf = std::nan("");
    if (!nf_ref.empty())
    {
      nf = near_error_db(near_field_of(prob.get(), s, xyz), nf_ref);
    }
    errors.add_row({name(s.formulation), fmt_int(s.info.unknowns), fmt_int(s.info.iterations),
                    fmt_int(s.info.converged), fmt_sci(s.info.final_residual), maybe(fe.max_db, fmt_db),
                    maybe(fe.avg_db, fmt_db), maybe(current_error_of(s, lr.efie_currents), fmt_sci),
                    maybe(nf, fmt_db)});
    std::vector<double> hist(static_cast<std::size_t>(s.info.iterations));
    check(wmfie_solution_residuals(s.solution.get(), hist.data(), hist.size()), "residuals");
    for (std::size_t k = 0; k < hist.size(); k++)
    {
      residuals.add_row({name(s.formulation), fmt_int(static_cast<long long>(k + 1)), fmt_sci(hist[k])});
    }
    save_far_field(out_file(ctx, "farfield_" + name(s.formulation) + ".csv"), d, s.far, sc.wave);
    log("  {:<7} eps_max={} dB", name(s.formulation), maybe(fe.max_db, fmt_db));
  }
  if (!ref.far.empty())
  {
    save_far_field(out_file(ctx, "farfield_reference.csv"), d, ref.far, sc.wave);
  }
  errors.write_atomic(out_file(ctx, "errors.csv"));
  residuals.write_atomic(out_file(ctx, "residuals.csv"));
  return finish(ctx);
}

int cmd_gamma_sweep(RunContext &ctx)
{
  const Scenario &sc = ctx.scenario;
  if (sc.gammas.size() < 2)
  {
    throw CliError(kExitConfig, "config: gamma_sweep.values needs at least two values");
  }
  for (double g : sc.gammas)
  {
    if (!(g > 0.0 && g <= 1.0))
    {
      throw CliError(kExitConfig, fmt::format("config: gamma {} is outside (0, 1]", g));
    }
  }
  std::vector<wmfie_formulation> variants = sc.gamma_variants;
  if (variants.empty())
  {
    variants = {WMFIE_WMFIE1, WMFIE_WMFIE2, WMFIE_WMFIE3};
  }
  const double f = sc.frequency;
  MeshPtr mesh = build_mesh(sc.geometry, sc.geometry.level, f);
  const Directions d = directions_of(sc.far_field);
  Reference ref = make_reference(ctx, mesh.get(), f, d, 0.0);
  std::vector<wmfie_formulation> all = variants;
  all.insert(all.end(), sc.formulations.begin(), sc.formulations.end());
  ProblemPtr prob = make_problem(mesh.get(), f, flags_for(all), sc.wave);
  log("gamma-sweep: {} unknowns", unknowns_of(prob.get()));

  CsvTable t("gamma_sweep", {"gamma", "variant", "eps_max_db", "eps_avg_db", "iterations", "converged"});
  for (auto b : sc.formulations)
  {
    wmfie_solve_options opt = sc.solve;
    opt.formulation = b;
    const Solved s = solve(ctx, prob.get(), opt, &d);
    const FieldError fe = far_error(s.far, ref.far);
    t.add_row({"nan", name(b), maybe(fe.max_db, fmt_db), maybe(fe.avg_db, fmt_db), fmt_int(s.info.iterations),
               fmt_int(s.info.converged)});
  }
  for (double g : sc.gammas)
  {
    for (auto v : variants)
    {
      wmfie_solve_options opt = sc.solve;
      opt.formulation = v;
      opt.gamma = g;
      const Solved s = solve(ctx, prob.get(), opt, &d);
      const FieldError fe = far_error(s.far, ref.far);
      t.add_row({fmt_num(g), name(v), maybe(fe.max_db, fmt_db), maybe(fe.avg_db, fmt_db),
                 fmt_int(s.info.iterations), fmt_int(s.info.converged)});
    }
  }
  t.write_atomic(out_file(ctx, "gamma_sweep.csv"));
  return finish(ctx);
}

int cmd_refine(RunContext &ctx)
{
  const Scenario &sc = ctx.scenario;
  require_formulations(sc);
  if (sc.refine_levels.size() < 3)
  {
    throw CliError(kExitConfig, "config: refine.levels needs at least three levels");
  }
  const double f = sc.frequency;
  const Directions d = directions_of(sc.far_field);
  const double finest = *std::max_element(sc.refine_levels.begin(), sc.refine_levels.end());

  // A refined-EFIE or file reference is shared by all levels; Mie depends on
  // the mesh only through an optional volume radius.
  std::optional<Reference> shared;
  if (sc.reference.kind == ReferenceKind::Efie || sc.reference.kind == ReferenceKind::File)
  {
    shared = make_reference(ctx, nullptr, f, d, finest);
  }

  CsvTable t("refine", {"level", "mean_edge_m", "wavelength_over_edge", "unknowns", "formulation", "iterations",
                        "converged", "eps_max_db", "eps_avg_db", "eps_i", "eps_nf_db"});
  for (double level : sc.refine_levels)
  {
    MeshPtr mesh = build_mesh(sc.geometry, level, f);
    const auto st = stats_of(mesh.get());
    Reference local;
    const Reference *ref = shared ? &*shared : nullptr;
    if (!ref)
    {
      local = make_reference(ctx, mesh.get(), f, d, 0.0);
      ref = &local;
    }
    ProblemPtr prob = make_problem(mesh.get(), f, flags_for(sc.formulations), sc.wave);
    log("refine: level {} with {} unknowns", level, unknowns_of(prob.get()));
    LevelResult lr = solve_all(ctx, prob.get(), sc.formulations, d, sc.solve);
    std::vector<double> xyz, nf_ref;
    if (sc.near_field.radius > 0.0)
    {
      xyz = fibonacci_sphere(sc.near_field.radius, sc.near_field.points);
      nf_ref = near_reference(ctx, *ref, f, xyz);
    }
    for (const auto &s : lr.solved)
    {
      const FieldError fe = far_error(s.far, ref->far);
      double nf = std::nan("");
      if (!nf_ref.empty())
      {
        nf = near_error_db(near_field_of(prob.get(), s, xyz), nf_ref);
      }
      t.add_row({fmt_num(level), fmt_sci(st.mean_edge), fmt_num(std::round(1e4 * wavelength(f) / st.mean_edge) / 1e4),
                 fmt_int(s.info.unknowns), name(s.formulation), fmt_int(s.info.iterations),
                 fmt_int(s.info.converged), maybe(fe.max_db, fmt_db), maybe(fe.avg_db, fmt_db),
                 maybe(current_error_of(s, lr.efie_currents), fmt_sci), maybe(nf, fmt_db)});
    }
  }
  t.write_atomic(out_file(ctx, "refine.csv"));
  return finish(ctx);
}

int cmd_freq_sweep(RunContext &ctx)
{
  const Scenario &sc = ctx.scenario;
  require_formulations(sc);
  if (!(sc.sweep_step > 0.0) || !(sc.sweep_start > 0.0) || sc.sweep_stop < sc.sweep_start)
  {
    throw CliError(kExitConfig, "config: frequency.start/stop/step must satisfy 0 < start <= stop, step > 0");
  }
  const long count = std::lround(std::floor((sc.sweep_stop - sc.sweep_start) / sc.sweep_step + 1e-9)) + 1;
  MeshPtr mesh = build_mesh(sc.geometry, sc.geometry.level, sc.frequency);
  const Directions d = directions_of(sc.far_field);

  struct Row
  {
    double f;
    wmfie_formulation form;
    int iterations, converged;
    FieldError fe;
  };
  std::vector<Row> rows;
  for (long k = 0; k < count; k++)
  {
    const double f = sc.sweep_start + static_cast<double>(k) * sc.sweep_step;
    Reference ref = make_reference(ctx, mesh.get(), f, d, 0.0);
    ProblemPtr prob = make_problem(mesh.get(), f, flags_for(sc.formulations), sc.wave);
    log("freq-sweep: {} Hz ({}/{})", f, k + 1, count);
    for (auto form : sc.formulations)
    {
      wmfie_solve_options opt = sc.solve;
      opt.formulation = form;
      const Solved s = solve(ctx, prob.get(), opt, &d);
      rows.push_back({f, form, s.info.iterations, s.info.converged, far_error(s.far, ref.far)});
    }
  }
  // Iteration spikes: at least twice the formulation's median count.
  std::map<wmfie_formulation, double> median;
  for (auto form : sc.formulations)
  {
    std::vector<int> it;
    for (const auto &r : rows)
    {
      if (r.form == form)
        it.push_back(r.iterations);
    }
    std::sort(it.begin(), it.end());
    const std::size_t n = it.size();
    median[form] = n % 2 ? it[n / 2] : 0.5 * (it[n / 2 - 1] + it[n / 2]);
  }
  CsvTable t("freq_sweep",
             {"frequency_hz", "formulation", "iterations", "converged", "eps_max_db", "eps_avg_db", "spike"});
  for (const auto &r : rows)
  {
    const bool spike = r.iterations >= 2.0 * median[r.form];
    t.add_row({fmt_num(r.f), name(r.form), fmt_int(r.iterations), fmt_int(r.converged), maybe(r.fe.max_db, fmt_db),
               maybe(r.fe.avg_db, fmt_db), fmt_int(spike ? 1 : 0)});
  }
  t.write_atomic(out_file(ctx, "freq_sweep.csv"));
  return finish(ctx);
}

int cmd_lf_sweep(RunContext &ctx)
{
  const Scenario &sc = ctx.scenario;
  require_formulations(sc);
  if (!(sc.lf_f_max > 0.0) || sc.lf_decades < 3 || sc.lf_points_per_decade < 1)
  {
    throw CliError(kExitConfig,
                   "config: lf_sweep needs f_max > 0, decades >= 3 and points_per_decade >= 1");
  }
  MeshPtr mesh = build_mesh(sc.geometry, sc.geometry.level, sc.frequency);
  const int steps = sc.lf_decades * sc.lf_points_per_decade;
  CsvTable t("lf_sweep", {"frequency_hz", "formulation", "iterations", "re_i", "im_i", "re_d", "im_d"});
  for (int k = steps; k >= 0; k--)
  {
    const double f = sc.lf_f_max * std::pow(10.0, -static_cast<double>(k) / sc.lf_points_per_decade);
    ProblemPtr prob = make_problem(mesh.get(), f, flags_for(sc.formulations), sc.wave);
    log("lf-sweep: {:.6g} Hz", f);
    for (auto form : sc.formulations)
    {
      wmfie_solve_options opt = sc.solve;
      opt.formulation = form;
      const Solved s = solve(ctx, prob.get(), opt, nullptr);
      double norms[4];
      check(wmfie_solution_divergence_norms(prob.get(), s.solution.get(), norms), "divergence norms");
      t.add_row({fmt_sci(f), name(form), fmt_int(s.info.iterations), fmt_sci(norms[0]), fmt_sci(norms[1]),
                 fmt_sci(norms[2]), fmt_sci(norms[3])});
    }
  }
  t.write_atomic(out_file(ctx, "lf_sweep.csv"));
  return finish(ctx);
}

int cmd_mie(RunContext &ctx)
{
  const Scenario &sc = ctx.scenario;
  const double f = sc.frequency;
  MeshPtr mesh;
  if (sc.reference.volume_radius && !ctx.mie_radius_override && !sc.reference.radius)
  {
    mesh = build_mesh(sc.geometry, sc.geometry.level, f);
  }
  const double radius = resolve_mie_radius(ctx, mesh.get());
  const Directions d = directions_of(sc.far_field);
  std::vector<double> ff(4 * d.size());
  check(wmfie_mie_far_field(radius, f, 0, sc.wave.direction.data(), sc.wave.pol_re.data(), sc.wave.pol_im.data(),
                            d.theta.data(), d.phi.data(), d.size(), ff.data()),
        "mie far field");
  save_far_field(out_file(ctx, "mie_farfield.csv"), d, ff, sc.wave);
  double ext = 0.0, sca = 0.0;
  check(wmfie_mie_cross_sections(radius, f, 0, &ext, &sca), "mie cross sections");
  CsvTable t("mie", {"radius_m", "frequency_hz", "extinction_m2", "scattering_m2"});
  t.add_row({fmt_num(radius), fmt_num(f), fmt_sci(ext), fmt_sci(sca)});
  t.write_atomic(out_file(ctx, "mie_summary.csv"));
  log("mie: radius {} m, extinction {:.9e} m^2, scattering {:.9e} m^2", radius, ext, sca);
  return kExitOk;
}

int cmd_mesh_info(RunContext &ctx)
{
  const Scenario &sc = ctx.scenario;
  MeshPtr mesh = build_mesh(sc.geometry, sc.geometry.level, sc.frequency);
  const auto st = stats_of(mesh.get());
  const auto unknowns = static_cast<long long>(st.edges);
  std::vector<std::string> cols = {"vertices", "triangles", "edges", "unknowns", "mean_edge_m", "min_edge_m",
                                   "max_edge_m", "wavelength_over_edge", "area_m2", "volume_m3",
                                   "volume_radius_m", "gram_bb_spd", "gram_bb_cond", "gram_bb_jacobi_cond",
                                   "gram_ba_skew", "gram_ba_sigma_ratio"};
  std::vector<std::string> row = {fmt_int(static_cast<long long>(st.vertices)),
                                  fmt_int(static_cast<long long>(st.triangles)),
                                  fmt_int(static_cast<long long>(st.edges)),
                                  fmt_int(unknowns),
                                  fmt_sci(st.mean_edge),
                                  fmt_sci(st.min_edge),
                                  fmt_sci(st.max_edge),
                                  fmt_sci(wavelength(sc.frequency) / st.mean_edge),
                                  fmt_sci(st.total_area),
                                  fmt_sci(st.volume),
                                  fmt_sci(st.volume_equivalent_radius)};
  wmfie_gram_diagnostics g{};
  if (unknowns <= 4000)
  {
    check(wmfie_mesh_gram_diagnostics(mesh.get(), &g), "gram diagnostics");
    row.insert(row.end(), {fmt_int(g.bb_spd), fmt_sci(g.bb_condition), fmt_sci(g.bb_jacobi_condition),
                           fmt_sci(g.ba_skew_residual), fmt_sci(g.ba_singular_ratio)});
  }
  else
  {
    row.insert(row.end(), 5, "nan");
  }
  CsvTable t("mesh_info", cols);
  t.add_row(row);
  t.write_atomic(out_file(ctx, "mesh_info.csv"));
  for (std::size_t k = 0; k < cols.size(); k++)
  {
    fmt::print("{:<22} {}\n", cols[k], row[k]);
  }
  return kExitOk;
}

}  // namespace cli
