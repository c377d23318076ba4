// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WMFIE_TOOLS_SCENARIO_HPP
#define WMFIE_TOOLS_SCENARIO_HPP

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wmfie/wmfie.h"

namespace cli
{

// How a mesh is produced. `level` is interpreted per kind:
//   sphere, canonical   mean edge = wavelength / level at the mesh frequency
//   icosphere           subdivision frequency
//   sphere-unknowns     exact RWG count
//   segments            segments per coarse edge (extrusion: level * along_ratio)
//   file                ignored
struct GeometrySpec
{
  std::string kind = "sphere";
  double diameter = 1.0;
  wmfie_shape shape = WMFIE_SHAPE_CUBE;
  std::vector<double> dims;
  double level = 10.0;
  double along_ratio = 1.0;
  std::filesystem::path path;
};

struct WaveSpec
{
  std::array<double, 3> direction{0.0, 0.0, 1.0};
  std::array<double, 3> pol_re{1.0, 0.0, 0.0};
  std::array<double, 3> pol_im{0.0, 0.0, 0.0};
};

enum class ReferenceKind
{
  None,
  Mie,
  Efie,  // EFIE on a refined mesh of the same geometry
  File
};

struct ReferenceSpec
{
  ReferenceKind kind = ReferenceKind::None;
  std::optional<double> radius;  // Mie radius, unset: half the diameter
  bool volume_radius = false;    // Mie radius from the mesh volume
  double level = 0.0;            // refined mesh level for Efie, 0: finest refine level
  std::optional<double> along_ratio;  // segments meshes, unset: geometry.along_ratio
  std::filesystem::path file;    // load (File) or save (Efie/Mie) path
  std::filesystem::path save;
};

struct FarFieldSpec
{
  std::vector<double> phi_deg{0.0, 90.0};
  int theta_count = 181;
};

struct NearFieldSpec
{
  double radius = 0.0;  // 0 disables near-field output
  int points = 200;
};

struct Scenario
{
  std::filesystem::path source;
  GeometrySpec geometry;
  WaveSpec wave;
  double frequency = 0.0;       // run, mesh frequency for sweeps
  std::vector<wmfie_formulation> formulations;
  wmfie_solve_options solve{};
  ReferenceSpec reference;
  FarFieldSpec far_field;
  NearFieldSpec near_field;

  std::vector<double> gammas;
  std::vector<wmfie_formulation> gamma_variants;
  std::vector<double> refine_levels;
  double sweep_start = 0.0, sweep_stop = 0.0, sweep_step = 0.0;
  double lf_f_max = 0.0;
  int lf_decades = 0;
  int lf_points_per_decade = 1;
};

// Throws CliError(kExitConfig) on malformed input, CliError(kExitIo) when the
// file or a referenced mesh cannot be read.
Scenario load_scenario(const std::filesystem::path &path);

}  // namespace cli

#endif  // WMFIE_TOOLS_SCENARIO_HPP
