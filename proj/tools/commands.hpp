// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WMFIE_TOOLS_COMMANDS_HPP
#define WMFIE_TOOLS_COMMANDS_HPP

#include <filesystem>
#include <optional>

#include "scenario.hpp"

namespace cli
{

struct RunContext
{
  Scenario scenario;
  std::filesystem::path out_dir;
  std::optional<double> mie_radius_override;
  bool unconverged = false;  // set by any solve that missed its tolerance
};

// Each command writes its CSV files into ctx.out_dir and returns an exit code.
int cmd_run(RunContext &ctx);
int cmd_gamma_sweep(RunContext &ctx);
int cmd_refine(RunContext &ctx);
int cmd_freq_sweep(RunContext &ctx);
int cmd_lf_sweep(RunContext &ctx);
int cmd_mie(RunContext &ctx);
int cmd_mesh_info(RunContext &ctx);

}  // namespace cli

#endif  // WMFIE_TOOLS_COMMANDS_HPP
