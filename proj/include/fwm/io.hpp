// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file io.hpp
 * @brief Tabular and map serialisation with the resolved config embedded,
 *        and all-or-nothing writes of output sets.
 */

#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fwm/amplitudes.hpp"
#include "fwm/correlations.hpp"
#include "fwm/pump.hpp"

namespace fwm {

using Cell = std::variant<long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest round-trip decimal form of a double.
[[nodiscard]] std::string format_double(double v);

/// CSV with '#'-prefixed header lines carrying the config and metadata.
[[nodiscard]] std::string render_csv(const Table& table, const nlohmann::json& config,
                                     const nlohmann::json& metadata);
/// {"config", "metadata", "columns", "rows"} pretty-printed.
[[nodiscard]] std::string render_json(const Table& table, const nlohmann::json& config,
                                      const nlohmann::json& metadata);

/// Grid as a CSV matrix (first row and column are the axes) or JSON.
[[nodiscard]] std::string render_grid_csv(const Grid2D& grid, const nlohmann::json& config,
                                          const nlohmann::json& metadata);
[[nodiscard]] std::string render_grid_json(const Grid2D& grid, const nlohmann::json& config,
                                           const nlohmann::json& metadata);

[[nodiscard]] Table amplitude_table(const BiphotonAmplitudes& amps);
[[nodiscard]] Table expansion_table(const ProductExpansion& expansion);

struct OutputFile {
  std::string name;
  std::string content;
};

/// Writes every file to a temporary name first and renames only when all
/// writes succeeded, so a failure leaves no partial outputs behind.
void write_outputs(const std::filesystem::path& directory, const std::vector<OutputFile>& files);

/// Appends a timestamped line to run.log in `directory`.
void append_run_log(const std::filesystem::path& directory, const std::string& line);

}  // namespace fwm
