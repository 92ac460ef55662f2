// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file correlations.hpp
 * @brief Spatial mode function and coincidence maps for point detectors and
 *        for a bucket probe detector with a point signal detector.
 */

#pragma once

#include <variant>
#include <vector>

#include "fwm/amplitudes.hpp"
#include "fwm/pump.hpp"

namespace fwm {

/// Both detectors are pinholes on the x axis at plane z.
struct PointPinholesX {
  double z = 0.0;
};

/// Probe collected over the whole plane, signal through a pinhole at plane z.
struct FullProbePointSignal {
  double z = 0.0;
};

using DetectionConfig = std::variant<PointPinholesX, FullProbePointSignal>;

/// Detectors must sit outside the medium: z >= L/2 (or 2L for a cloud).
void validate_detection(const DetectionConfig& detection, const MediumGeometry& medium);

/// Uniform sample grid on [-extent_x, extent_x] x [-extent_y, extent_y];
/// sample (i, j) sits at (x(i), y(j)) and is stored at i * ny + j.
struct Grid2D {
  double extent_x = 0.0;
  double extent_y = 0.0;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> samples;

  /// Throws std::invalid_argument for a non-positive extent or < 2 samples per axis.
  static Grid2D make(double extent_x, double extent_y, std::size_t nx, std::size_t ny);

  [[nodiscard]] double x(std::size_t i) const;
  [[nodiscard]] double y(std::size_t j) const;
  [[nodiscard]] double& at(std::size_t i, std::size_t j) { return samples[i * ny + j]; }
  [[nodiscard]] double at(std::size_t i, std::size_t j) const { return samples[i * ny + j]; }
};

/// Psi(r_pr, r_s) = sum C u_pr(r_pr) u_s(r_s). Both points must share z.
[[nodiscard]] complex spatial_mode_function(const BiphotonAmplitudes& amps, const PolarPoint& r_pr,
                                            const PolarPoint& r_s);

/// |Psi(X_pr, 0; X_s, 0)|^2 at plane z.
[[nodiscard]] double g2_point_detectors(const BiphotonAmplitudes& amps, double x_pr, double x_s, double z);

/// The point-detector coincidence map over (X_pr, X_s) = (x(i), y(j)).
[[nodiscard]] Grid2D g2_point_detector_map(const BiphotonAmplitudes& amps, Grid2D grid, double z);

/// sum_pr |sum_s C u_s(R)|^2 over signal positions R = (x(i), y(j)) at plane z.
/// Scaled to unit peak unless `unit_peak` is false.
[[nodiscard]] Grid2D g2_full_probe_map(const BiphotonAmplitudes& amps, Grid2D grid, double z = 0.0,
                                       bool unit_peak = true);

/// |V_p(R)|^4 at the waist plane, unit peak.
[[nodiscard]] Grid2D pump_transfer_reference(const PumpSpec& pump, Grid2D grid);

/// Pearson correlation of (x, y) with the map as a joint density.
[[nodiscard]] double pearson_sign(const Grid2D& map);

/// Zero-mean normalised cross-correlation of two maps on the same grid.
[[nodiscard]] double normalized_cross_correlation(const Grid2D& a, const Grid2D& b);

}  // namespace fwm
