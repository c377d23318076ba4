// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WMFIE_TOOLS_HANDLES_HPP
#define WMFIE_TOOLS_HANDLES_HPP

#include <memory>
#include <stdexcept>
#include <string>

#include "wmfie/wmfie.h"

namespace cli
{

// Process exit codes.
enum ExitCode
{
  kExitOk = 0,
  kExitSolver = 1,
  kExitConfig = 2,
  kExitIo = 3
};

class CliError : public std::runtime_error
{
public:
  CliError(int code, const std::string &what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

private:
  int code_;
};

inline int exit_code_for(wmfie_status s)
{
  switch (s)
  {
    case WMFIE_OK:
      return kExitOk;
    case WMFIE_ERR_IO:
      return kExitIo;
    case WMFIE_ERR_INVALID_ARGUMENT:
    case WMFIE_ERR_PARSE:
    case WMFIE_ERR_TOPOLOGY:
      return kExitConfig;
    default:
      return kExitSolver;
  }
}

// Throws CliError carrying the library message, prefixed by the stage name.
inline void check(wmfie_status s, const std::string &stage)
{
  if (s != WMFIE_OK)
  {
    throw CliError(exit_code_for(s), stage + ": " + wmfie_status_name(s) + ": " + wmfie_last_error());
  }
}

struct MeshDeleter
{
  void operator()(wmfie_mesh *m) const { wmfie_mesh_free(m); }
};
struct ProblemDeleter
{
  void operator()(wmfie_problem *p) const { wmfie_problem_free(p); }
};
struct SolutionDeleter
{
  void operator()(wmfie_solution *s) const { wmfie_solution_free(s); }
};

using MeshPtr = std::unique_ptr<wmfie_mesh, MeshDeleter>;
using ProblemPtr = std::unique_ptr<wmfie_problem, ProblemDeleter>;
using SolutionPtr = std::unique_ptr<wmfie_solution, SolutionDeleter>;

}  // namespace cli

#endif  // WMFIE_TOOLS_HANDLES_HPP
