// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "commands.hpp"
#include "handles.hpp"

int main(int argc, char **argv)
{
  CLI::App app{"Surface integral equation scattering experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(wmfie_version()));

  std::string config;
  std::string out_dir = ".";
  int threads = 0;
  double radius_override = 0.0;
  long seed = 0;

  const std::map<std::string, std::pair<std::string, std::function<int(cli::RunContext &)>>> commands = {
      {"run", {"solve the listed formulations and compare against the reference", cli::cmd_run}},
      {"gamma-sweep", {"sweep the WMFIE weighting factor", cli::cmd_gamma_sweep}},
      {"refine", {"mesh refinement study", cli::cmd_refine}},
      {"freq-sweep", {"frequency sweep with iteration-spike detection", cli::cmd_freq_sweep}},
      {"lf-sweep", {"low-frequency current and divergence norms", cli::cmd_lf_sweep}},
      {"mie", {"Mie series far field and cross sections only", cli::cmd_mie}},
      {"mesh-info", {"mesh statistics and Gram matrix diagnostics", cli::cmd_mesh_info}},
  };
  for (const auto &[name, entry] : commands)
  {
    CLI::App *sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", config, "scenario file (INI)")->required();
    sub->add_option("--out-dir", out_dir, "directory for CSV output");
    sub->add_option("--threads", threads, "worker threads (default: OpenMP default)")->check(CLI::PositiveNumber);
    sub->add_option("--mie-radius-override", radius_override, "Mie sphere radius in meters")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "reserved; results do not depend on it");
  }

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitConfig;
  }

  try
  {
    cli::RunContext ctx;
    ctx.scenario = cli::load_scenario(config);
    ctx.out_dir = out_dir;
    if (radius_override > 0.0)
    {
      ctx.mie_radius_override = radius_override;
    }
    std::error_code ec;
    std::filesystem::create_directories(ctx.out_dir, ec);
    if (ec)
    {
      throw cli::CliError(cli::kExitIo, "cannot create output directory " + out_dir + ": " + ec.message());
    }
    if (threads > 0)
    {
      cli::check(wmfie_set_threads(threads), "threads");
    }
    for (const auto &[name, entry] : commands)
    {
      if (app.got_subcommand(name))
      {
        return entry.second(ctx);
      }
    }
  }
  catch (const cli::CliError &e)
  {
    fmt::print(stderr, "error: {}\n", e.what());
    return e.code();
  }
  catch (const std::exception &e)
  {
    fmt::print(stderr, "error: {}\n", e.what());
    return cli::kExitSolver;
  }
  return cli::kExitOk;
}
