// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "wep/cli/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "wep/common.hpp"

namespace wep::cli
{

std::string format_double(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path &path, const Metadata &meta,
                     std::vector<std::string> columns)
  : path_(path), width_(columns.size())
{
  if (path.has_parent_path())
  {
    std::filesystem::create_directories(path.parent_path());
  }
  out_.open(path);
  if (!out_)
  {
    throw Error(ErrorCode::IoError, "cannot write " + path.string());
  }
  for (const auto &[k, v] : meta)
  {
    out_ << "# " << k << '=' << v << '\n';
  }
  for (std::size_t i = 0; i < columns.size(); ++i)
  {
    out_ << (i ? "," : "") << columns[i];
  }
  out_ << '\n';
}

void CsvWriter::cell(const std::string &text)
{
  if (filled_ == width_)
  {
    throw Error(ErrorCode::InvalidArgument, "CSV row wider than the header in " + path_.string());
  }
  out_ << (filled_ ? "," : "") << text;
  ++filled_;
}

CsvWriter &CsvWriter::operator<<(double v)
{
  cell(format_double(v));
  return *this;
}

CsvWriter &CsvWriter::operator<<(std::size_t v)
{
  cell(std::to_string(v));
  return *this;
}

CsvWriter &CsvWriter::operator<<(const std::string &v)
{
  if (v.find_first_of(",\n\"") != std::string::npos)
  {
    throw Error(ErrorCode::InvalidArgument, "CSV field needs quoting: " + v);
  }
  cell(v);
  return *this;
}

void CsvWriter::end_row()
{
  if (filled_ != width_)
  {
    throw Error(ErrorCode::InvalidArgument, "CSV row has " + std::to_string(filled_) +
                                                " fields, header has " + std::to_string(width_));
  }
  out_ << '\n';
  out_.flush();
  filled_ = 0;
}

std::size_t CsvTable::column(const std::string &name) const
{
  for (std::size_t i = 0; i < columns.size(); ++i)
  {
    if (columns[i] == name)
    {
      return i;
    }
  }
  throw Error(ErrorCode::ConfigError, "CSV has no column '" + name + "'");
}

double CsvTable::number(std::size_t row, const std::string &name) const
{
  return std::strtod(rows.at(row).at(column(name)).c_str(), nullptr);
}

std::string CsvTable::meta_value(const std::string &key) const
{
  for (const auto &[k, v] : meta)
  {
    if (k == key)
    {
      return v;
    }
  }
  return {};
}

CsvTable read_csv(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw Error(ErrorCode::IoError, "cannot read " + path.string());
  }
  auto split = [](const std::string &line)
  {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');)
    {
      f.push_back(x);
    }
    if (!line.empty() && line.back() == ',')
    {
      f.emplace_back();
    }
    return f;
  };
  CsvTable t;
  bool header = false;
  for (std::string line; std::getline(in, line);)
  {
    if (line.rfind("# ", 0) == 0 && !header)
    {
      const auto eq = line.find('=');
      t.meta.emplace_back(line.substr(2, eq - 2), eq == std::string::npos ? "" : line.substr(eq + 1));
    }
    else if (!header)
    {
      t.columns = split(line);
      header = true;
    }
    else if (!line.empty())
    {
      auto f = split(line);
      if (f.size() != t.columns.size())
      {
        throw Error(ErrorCode::ConfigError, path.string() + ": ragged row " + line);
      }
      t.rows.push_back(std::move(f));
    }
  }
  return t;
}

}  // namespace wep::cli
