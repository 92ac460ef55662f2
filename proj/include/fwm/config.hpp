// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file config.hpp
 * @brief Experiment configuration: a JSON document with a fixed schema.
 *
 * Every key is optional and defaults are explicit in to_json(). Unknown keys
 * are rejected. Lengths are in metres.
 */

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fwm/amplitudes.hpp"
#include "fwm/correlations.hpp"
#include "fwm/momentum.hpp"
#include "fwm/pump.hpp"

namespace fwm {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxLMax = 6;
inline constexpr int kMaxPMax = 8;

enum class MomentumMethod { Analytic, Quadrature };
enum class DetectionKind { PointPinholes, FullProbe };
enum class OutputFormat { Csv, Json };
enum class SweepParameter { Length, Waist, EllTotal };

struct DetectionSettings {
  DetectionKind kind = DetectionKind::PointPinholes;
  /// Detection planes; empty means the medium exit.
  std::vector<double> planes;
  /// Half-width of the map in metres; when unset, extent_widths * w(z).
  std::optional<double> extent;
  double extent_widths = 3.0;
  int samples = 81;
  bool reference = false;
};

struct SweepSettings {
  SweepParameter parameter = SweepParameter::Length;
  std::vector<double> values;
};

struct ExperimentConfig {
  double waist = 1e-3;
  double wavelength = kDefaultWavelength;
  std::vector<PumpComponent> pump{{{0, 0}, {1.0, 0.0}}};
  int truncation = kDefaultTruncation;
  MediumGeometry medium = UniformCell{1e-3};
  Subspace subspace{2, 1, 0};
  Representation representation = Representation::Position;
  MomentumMethod method = MomentumMethod::Analytic;
  QuadratureConfig quadrature;
  DetectionSettings detection;
  SweepSettings sweep;
  std::string output_directory = "out";
  OutputFormat format = OutputFormat::Csv;
  int threads = 1;

  /// Parses and validates; throws ConfigError.
  static ExperimentConfig from_json(const nlohmann::json& doc);
  static ExperimentConfig from_file(const std::string& path);

  /// Fully resolved document, defaults included.
  [[nodiscard]] nlohmann::json to_json() const;
  /// Throws ConfigError when a field is out of range.
  void validate() const;

  [[nodiscard]] BeamGeometry beam() const { return BeamGeometry(waist, wavelength); }
  [[nodiscard]] PumpSpec pump_spec() const;
  [[nodiscard]] ProductExpansion expansion() const;
  [[nodiscard]] PhaseMatchKernel kernel() const { return {beam(), medium}; }
  /// Medium exit plane: L/2 for a cell, 2L for a cloud.
  [[nodiscard]] double exit_plane() const;
};

}  // namespace fwm
