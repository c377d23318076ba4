// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include "scenario.hpp"

#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "handles.hpp"

namespace cli
{

namespace pt = boost::property_tree;

namespace
{

[[noreturn]] void bad(const std::string &msg) { throw CliError(kExitConfig, "config: " + msg); }

std::string lower(std::string s)
{
  for (auto &c : s)
  {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return s;
}

double to_double(const std::string &key, const std::string &text)
{
  std::size_t pos = 0;
  double v = 0.0;
  try
  {
    v = std::stod(text, &pos);
  }
  catch (const std::exception &)
  {
    bad(fmt::format("{}: '{}' is not a number", key, text));
  }
  if (text.find_first_not_of(" \t", pos) != std::string::npos)
  {
    bad(fmt::format("{}: '{}' is not a number", key, text));
  }
  return v;
}

std::vector<std::string> words(const std::string &text)
{
  std::string t = text;
  for (auto &c : t)
  {
    if (c == ',' || c == ';')
    {
      c = ' ';
    }
  }
  std::istringstream in(t);
  std::vector<std::string> out;
  for (std::string w; in >> w;)
  {
    out.push_back(w);
  }
  return out;
}

class Reader
{
public:
  explicit Reader(const pt::ptree &tree) : tree_(tree) {}

  std::optional<std::string> text(const std::string &key) const
  {
    if (auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '.')))
    {
      return *v;
    }
    return std::nullopt;
  }

  double number(const std::string &key, double fallback) const
  {
    auto t = text(key);
    return t ? to_double(key, *t) : fallback;
  }

  std::optional<double> maybe_number(const std::string &key) const
  {
    auto t = text(key);
    if (!t)
    {
      return std::nullopt;
    }
    return to_double(key, *t);
  }

  int integer(const std::string &key, int fallback) const
  {
    auto t = text(key);
    if (!t)
    {
      return fallback;
    }
    const double v = to_double(key, *t);
    if (v != static_cast<double>(static_cast<int>(v)))
    {
      bad(fmt::format("{}: '{}' is not an integer", key, *t));
    }
    return static_cast<int>(v);
  }

  std::vector<double> list(const std::string &key) const
  {
    std::vector<double> out;
    if (auto t = text(key))
    {
      for (const auto &w : words(*t))
      {
        out.push_back(to_double(key, w));
      }
    }
    return out;
  }

  std::array<double, 3> vec3(const std::string &key, std::array<double, 3> fallback) const
  {
    if (!text(key))
    {
      return fallback;
    }
    auto v = list(key);
    if (v.size() != 3)
    {
      bad(fmt::format("{}: expected three components", key));
    }
    return {v[0], v[1], v[2]};
  }

private:
  const pt::ptree &tree_;
};

std::vector<wmfie_formulation> formulation_list(const Reader &r, const std::string &key)
{
  std::vector<wmfie_formulation> out;
  if (auto t = r.text(key))
  {
    for (const auto &w : words(*t))
    {
      wmfie_formulation f;
      if (wmfie_formulation_from_name(w.c_str(), &f) != WMFIE_OK)
      {
        bad(fmt::format("{}: {}", key, wmfie_last_error()));
      }
      out.push_back(f);
    }
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path &base, const std::string &p)
{
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base.parent_path() / path;
}

void require_file(const std::filesystem::path &p, const std::string &what)
{
  if (!std::filesystem::is_regular_file(p))
  {
    throw CliError(kExitIo, fmt::format("config: {} '{}' does not exist", what, p.string()));
  }
}

}  // namespace

Scenario load_scenario(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw CliError(kExitIo, fmt::format("config: cannot open '{}'", path.string()));
  }
  pt::ptree tree;
  try
  {
    pt::read_ini(in, tree);
  }
  catch (const pt::ini_parser_error &e)
  {
    bad(fmt::format("{} line {}: {}", path.string(), e.line(), e.message()));
  }
  const Reader r(tree);
  Scenario sc;
  sc.source = path;

  auto &g = sc.geometry;
  g.kind = lower(r.text("geometry.kind").value_or("sphere"));
  g.diameter = r.number("geometry.diameter", 1.0);
  g.level = r.number("geometry.level", 10.0);
  g.along_ratio = r.number("geometry.along_ratio", 1.0);
  g.dims = r.list("geometry.dims");
  if (auto s = r.text("geometry.shape"))
  {
    const std::string shape = lower(*s);
    if (shape == "cube")
      g.shape = WMFIE_SHAPE_CUBE;
    else if (shape == "pyramid")
      g.shape = WMFIE_SHAPE_PYRAMID;
    else if (shape == "wedge")
      g.shape = WMFIE_SHAPE_WEDGE;
    else
      bad("geometry.shape: expected cube, pyramid or wedge, got '" + *s + "'");
  }
  if (g.kind == "file")
  {
    auto p = r.text("geometry.path");
    if (!p)
    {
      bad("geometry.path is required for kind = file");
    }
    g.path = resolve(path, *p);
    require_file(g.path, "mesh file");
  }
  else if (g.kind != "sphere" && g.kind != "icosphere" && g.kind != "sphere-unknowns" && g.kind != "canonical" &&
           g.kind != "segments")
  {
    bad("geometry.kind: expected sphere, icosphere, sphere-unknowns, canonical, segments or file, got '" + g.kind +
        "'");
  }
  if (!(g.diameter > 0.0) || !(g.level > 0.0) || !(g.along_ratio > 0.0))
  {
    bad("geometry.diameter, geometry.level and geometry.along_ratio must be positive");
  }

  sc.wave.direction = r.vec3("wave.direction", sc.wave.direction);
  sc.wave.pol_re = r.vec3("wave.polarization", sc.wave.pol_re);
  sc.wave.pol_im = r.vec3("wave.polarization_imag", sc.wave.pol_im);

  sc.frequency = r.number("frequency.value", 0.0);
  sc.sweep_start = r.number("frequency.start", 0.0);
  sc.sweep_stop = r.number("frequency.stop", 0.0);
  sc.sweep_step = r.number("frequency.step", 0.0);
  if (sc.frequency == 0.0)
  {
    sc.frequency = sc.sweep_start;
  }
  if (!(sc.frequency > 0.0))
  {
    bad("frequency.value (or frequency.start) must be a positive frequency in Hz");
  }

  sc.formulations = formulation_list(r, "formulations.names");
  wmfie_solve_options_default(&sc.solve);
  sc.solve.gamma = r.number("formulations.gamma", sc.solve.gamma);
  sc.solve.alpha_cfie = r.number("formulations.alpha", sc.solve.alpha_cfie);
  sc.solve.beta_cs = r.number("formulations.beta", sc.solve.beta_cs);
  const std::string method = lower(r.text("solver.method").value_or("gmres"));
  if (method == "gmres")
    sc.solve.solver = WMFIE_SOLVER_GMRES;
  else if (method == "direct")
    sc.solve.solver = WMFIE_SOLVER_DIRECT;
  else
    bad("solver.method: expected gmres or direct, got '" + method + "'");
  sc.solve.tol = r.number("solver.tol", sc.solve.tol);
  sc.solve.maxit = r.integer("solver.maxit", sc.solve.maxit);
  sc.solve.inner_tol = r.number("solver.inner_tol", sc.solve.inner_tol);
  sc.solve.inner_maxit = r.integer("solver.inner_maxit", sc.solve.inner_maxit);
  if (!(sc.solve.tol > 0.0) || sc.solve.maxit < 1)
  {
    bad("solver.tol must be positive and solver.maxit >= 1");
  }

  auto &ref = sc.reference;
  const std::string rk = lower(r.text("reference.kind").value_or("none"));
  if (rk == "none")
    ref.kind = ReferenceKind::None;
  else if (rk == "mie")
    ref.kind = ReferenceKind::Mie;
  else if (rk == "efie")
    ref.kind = ReferenceKind::Efie;
  else if (rk == "file")
    ref.kind = ReferenceKind::File;
  else
    bad("reference.kind: expected none, mie, efie or file, got '" + rk + "'");
  if (auto rad = r.text("reference.radius"))
  {
    if (lower(*rad) == "volume")
      ref.volume_radius = true;
    else
      ref.radius = to_double("reference.radius", *rad);
  }
  ref.level = r.number("reference.level", 0.0);
  ref.along_ratio = r.maybe_number("reference.along_ratio");
  if (ref.along_ratio && !(*ref.along_ratio > 0.0))
  {
    bad("reference.along_ratio must be positive");
  }
  if (auto f = r.text("reference.file"))
  {
    if (ref.kind != ReferenceKind::File)
    {
      bad("reference.file conflicts with reference.kind = " + rk + "; only one reference source is allowed");
    }
    ref.file = resolve(path, *f);
    require_file(ref.file, "reference file");
  }
  else if (ref.kind == ReferenceKind::File)
  {
    bad("reference.kind = file needs reference.file");
  }
  if (auto s = r.text("reference.save"))
  {
    ref.save = resolve(path, *s);
  }
  if (ref.level < 0.0)
  {
    bad("reference.level must be positive");
  }

  if (auto phis = r.list("far_field.phi"); !phis.empty())
  {
    sc.far_field.phi_deg = phis;
  }
  sc.far_field.theta_count = r.integer("far_field.theta_count", sc.far_field.theta_count);
  if (sc.far_field.theta_count < 2)
  {
    bad("far_field.theta_count must be >= 2");
  }
  sc.near_field.radius = r.number("near_field.radius", 0.0);
  sc.near_field.points = r.integer("near_field.points", sc.near_field.points);
  if (sc.near_field.radius < 0.0 || sc.near_field.points < 1)
  {
    bad("near_field.radius must be >= 0 and near_field.points >= 1");
  }

  sc.gammas = r.list("gamma_sweep.values");
  sc.gamma_variants = formulation_list(r, "gamma_sweep.variants");
  sc.refine_levels = r.list("refine.levels");
  sc.lf_f_max = r.number("lf_sweep.f_max", 0.0);
  sc.lf_decades = r.integer("lf_sweep.decades", 0);
  sc.lf_points_per_decade = r.integer("lf_sweep.points_per_decade", 1);
  return sc;
}

}  // namespace cli
