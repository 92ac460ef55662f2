// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

#include "fwm/io.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace fwm {

using nlohmann::json;

namespace {

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else {
          return v;
        }
      },
      c);
}

json cell_json(const Cell& c) {
  return std::visit([](const auto& v) { return json(v); }, c);
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw std::runtime_error("number formatting failed");
  return {buf, res.ptr};
}

std::string render_csv(const Table& table, const json& config, const json& metadata) {
  std::ostringstream out;
  out << "# config: " << config.dump() << "\n";
  out << "# metadata: " << metadata.dump() << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << "\n";
  }
  return out.str();
}

std::string render_json(const Table& table, const json& config, const json& metadata) {
  json doc;
  doc["config"] = config;
  doc["metadata"] = metadata;
  doc["columns"] = table.columns;
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::array();
    for (const auto& c : row) r.push_back(cell_json(c));
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string render_grid_csv(const Grid2D& grid, const json& config, const json& metadata) {
  std::ostringstream out;
  out << "# config: " << config.dump() << "\n";
  out << "# metadata: " << metadata.dump() << "\n";
  out << "x\\y";
  for (std::size_t j = 0; j < grid.ny; ++j) out << "," << format_double(grid.y(j));
  out << "\n";
  for (std::size_t i = 0; i < grid.nx; ++i) {
    out << format_double(grid.x(i));
    for (std::size_t j = 0; j < grid.ny; ++j) out << "," << format_double(grid.at(i, j));
    out << "\n";
  }
  return out.str();
}

std::string render_grid_json(const Grid2D& grid, const json& config, const json& metadata) {
  json doc;
  doc["config"] = config;
  doc["metadata"] = metadata;
  json xs = json::array();
  json ys = json::array();
  for (std::size_t i = 0; i < grid.nx; ++i) xs.push_back(grid.x(i));
  for (std::size_t j = 0; j < grid.ny; ++j) ys.push_back(grid.y(j));
  doc["x"] = xs;
  doc["y"] = ys;
  json rows = json::array();
  for (std::size_t i = 0; i < grid.nx; ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < grid.ny; ++j) r.push_back(grid.at(i, j));
    rows.push_back(std::move(r));
  }
  doc["values"] = std::move(rows);
  return doc.dump(2) + "\n";
}

Table amplitude_table(const BiphotonAmplitudes& amps) {
  Table t;
  t.columns = {"ell_pr", "p_pr", "ell_s", "p_s", "re", "im", "method"};
  const auto modes = amps.subspace.modes();
  for (std::size_t a = 0; a < modes.size(); ++a) {
    for (std::size_t b = 0; b < modes.size(); ++b) {
      const auto v = amps.at(a, b);
      t.rows.push_back({static_cast<long long>(modes[a].ell), static_cast<long long>(modes[a].p),
                        static_cast<long long>(modes[b].ell), static_cast<long long>(modes[b].p), v.real(),
                        v.imag(), to_string(amps.methods[a * modes.size() + b])});
    }
  }
  return t;
}

Table expansion_table(const ProductExpansion& expansion) {
  Table t;
  t.columns = {"m", "n", "re", "im", "abs2", "normalized"};
  const auto norm = expansion.normalized();
  for (std::size_t i = 0; i < expansion.terms.size(); ++i) {
    const auto& term = expansion.terms[i];
    t.rows.push_back({static_cast<long long>(term.mode.ell), static_cast<long long>(term.mode.p), term.a.real(),
                      term.a.imag(), std::norm(term.a), std::abs(norm[i])});
  }
  return t;
}

void write_outputs(const std::filesystem::path& directory, const std::vector<OutputFile>& files) {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  std::vector<std::pair<fs::path, fs::path>> staged;
  try {
    for (const auto& f : files) {
      const fs::path target = directory / f.name;
      const fs::path temp = directory / ("." + f.name + ".partial");
      std::ofstream out(temp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write '" + temp.string() + "'");
      staged.emplace_back(temp, target);
      out << f.content;
      out.close();
      if (!out) throw std::runtime_error("failed writing '" + temp.string() + "'");
    }
  } catch (...) {
    std::error_code ec;
    for (const auto& [temp, target] : staged) fs::remove(temp, ec);
    throw;
  }
  for (const auto& [temp, target] : staged) fs::rename(temp, target);
}

void append_run_log(const std::filesystem::path& directory, const std::string& line) {
  std::filesystem::create_directories(directory);
  std::ofstream out(directory / "run.log", std::ios::app);
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ") << " " << line << "\n";
}

}  // namespace fwm
