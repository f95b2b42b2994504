// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_CLI_CSV_HPP
#define WEP_CLI_CSV_HPP

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace wep::cli
{

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Comma-separated output with "# key=value" metadata lines above a header row.
/// Doubles are written with %.17g so they read back bit-exact.
class CsvWriter
{
public:
  CsvWriter(const std::filesystem::path &path, const Metadata &meta,
            std::vector<std::string> columns);

  CsvWriter &operator<<(double v);
  CsvWriter &operator<<(std::size_t v);
  CsvWriter &operator<<(const std::string &v);
  CsvWriter &operator<<(const char *v) { return *this << std::string(v); }
  /// Ends the current row; throws if its width differs from the header.
  void end_row();

private:
  void cell(const std::string &text);

  std::ofstream out_;
  std::filesystem::path path_;
  std::size_t width_ = 0;
  std::size_t filled_ = 0;
};

struct CsvTable
{
  Metadata meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Index of a column; throws ConfigError if absent.
  std::size_t column(const std::string &name) const;
  double number(std::size_t row, const std::string &name) const;
  std::string meta_value(const std::string &key) const;
};

/// Throws IoError if unreadable, ConfigError on a ragged row.
CsvTable read_csv(const std::filesystem::path &path);

std::string format_double(double v);

}  // namespace wep::cli

#endif  // WEP_CLI_CSV_HPP
