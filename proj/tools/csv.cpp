// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include "csv.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "handles.hpp"

namespace cli
{

CsvTable::CsvTable(std::string kind, std::vector<std::string> columns)
    : kind_(std::move(kind)), columns_(std::move(columns))
{
}

void CsvTable::add_row(std::vector<std::string> cells)
{
  if (cells.size() != columns_.size())
  {
    throw CliError(kExitSolver, fmt::format("csv {}: row has {} cells, expected {}", kind_, cells.size(),
                                            columns_.size()));
  }
  rows_.push_back(std::move(cells));
}

void CsvTable::write_atomic(const std::filesystem::path &path) const
{
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
    {
      throw CliError(kExitIo, "cannot write " + tmp.string());
    }
    out << "# wmfie-csv v" << kCsvSchemaVersion << ' ' << kind_ << '\n';
    auto line = [&](const std::vector<std::string> &cells)
    {
      for (std::size_t i = 0; i < cells.size(); i++)
      {
        out << (i ? "," : "") << cells[i];
      }
      out << '\n';
    };
    line(columns_);
    for (const auto &r : rows_)
    {
      line(r);
    }
    out.flush();
    if (!out)
    {
      throw CliError(kExitIo, "write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
  {
    throw CliError(kExitIo, fmt::format("cannot rename {} to {}: {}", tmp.string(), path.string(), ec.message()));
  }
}

std::string fmt_db(double db) { return fmt::format("{:.4f}", db); }
std::string fmt_sci(double v) { return fmt::format("{:.8e}", v); }
std::string fmt_num(double v) { return fmt::format("{}", v); }
std::string fmt_int(long long v) { return fmt::format("{}", v); }

void write_far_field(const std::filesystem::path &path, const FarFieldTable &ff, const std::vector<double> &rcs)
{
  CsvTable t("far_field", {"theta_deg", "phi_deg", "e_theta_re", "e_theta_im", "e_phi_re", "e_phi_im",
                           "rcs_theta_dbsm", "rcs_phi_dbsm"});
  for (std::size_t k = 0; k < ff.theta_deg.size(); k++)
  {
    t.add_row({fmt_num(ff.theta_deg[k]), fmt_num(ff.phi_deg[k]), fmt_sci(ff.values[4 * k]),
               fmt_sci(ff.values[4 * k + 1]), fmt_sci(ff.values[4 * k + 2]), fmt_sci(ff.values[4 * k + 3]),
               fmt_db(rcs[2 * k]), fmt_db(rcs[2 * k + 1])});
  }
  t.write_atomic(path);
}

FarFieldTable read_far_field(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw CliError(kExitIo, "cannot open reference " + path.string());
  }
  auto fail = [&](const std::string &msg) { throw CliError(kExitConfig, "reference " + path.string() + ": " + msg); };
  std::string line;
  if (!std::getline(in, line) || line.rfind("# wmfie-csv v", 0) != 0)
  {
    fail("missing schema line");
  }
  if (line.find(" far_field") == std::string::npos)
  {
    fail("not a far-field table");
  }
  if (!std::getline(in, line))
  {
    fail("missing header");
  }
  std::map<std::string, std::size_t> col;
  {
    std::istringstream hs(line);
    std::size_t i = 0;
    for (std::string c; std::getline(hs, c, ',');)
    {
      col[c] = i++;
    }
  }
  const char *need[] = {"theta_deg", "phi_deg", "e_theta_re", "e_theta_im", "e_phi_re", "e_phi_im"};
  for (const char *n : need)
  {
    if (!col.count(n))
    {
      fail(std::string("missing column ") + n);
    }
  }
  FarFieldTable ff;
  int row = 0;
  while (std::getline(in, line))
  {
    row++;
    if (line.empty())
    {
      continue;
    }
    std::vector<double> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');)
    {
      try
      {
        cells.push_back(std::stod(c));
      }
      catch (const std::exception &)
      {
        fail(fmt::format("row {}: bad number '{}'", row, c));
      }
    }
    if (cells.size() < col.size())
    {
      fail(fmt::format("row {}: too few cells", row));
    }
    ff.theta_deg.push_back(cells[col["theta_deg"]]);
    ff.phi_deg.push_back(cells[col["phi_deg"]]);
    for (const char *n : {"e_theta_re", "e_theta_im", "e_phi_re", "e_phi_im"})
    {
      ff.values.push_back(cells[col[n]]);
    }
  }
  if (ff.theta_deg.empty())
  {
    fail("no rows");
  }
  return ff;
}

}  // namespace cli
