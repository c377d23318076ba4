// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WMFIE_TOOLS_CSV_HPP
#define WMFIE_TOOLS_CSV_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace cli
{

inline constexpr int kCsvSchemaVersion = 1;

// First line "# wmfie-csv v<version> <kind>", then the column header.
class CsvTable
{
public:
  CsvTable(std::string kind, std::vector<std::string> columns);

  void add_row(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }

  // Writes to a sibling temporary file and renames it over `path`.
  void write_atomic(const std::filesystem::path &path) const;

private:
  std::string kind_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

std::string fmt_db(double db);          // 4 decimals
std::string fmt_sci(double v);          // 9 significant digits, scientific
std::string fmt_num(double v);          // shortest round-trip form
std::string fmt_int(long long v);

struct FarFieldTable
{
  std::vector<double> theta_deg, phi_deg;
  std::vector<double> values;  // 4 per direction: E_theta re, im, E_phi re, im
};

void write_far_field(const std::filesystem::path &path, const FarFieldTable &ff, const std::vector<double> &rcs);
FarFieldTable read_far_field(const std::filesystem::path &path);

}  // namespace cli

#endif  // WMFIE_TOOLS_CSV_HPP
