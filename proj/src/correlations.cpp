// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

#include "fwm/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <type_traits>

#include "fwm/parallel.hpp"

namespace fwm {

namespace {

void scale_to_unit_peak(Grid2D& grid) {
  const double peak = *std::max_element(grid.samples.begin(), grid.samples.end());
  if (!(peak > 0.0)) throw std::domain_error("coincidence map vanishes on the grid");
  for (auto& v : grid.samples) v /= peak;
}

}  // namespace

void validate_detection(const DetectionConfig& detection, const MediumGeometry& medium) {
  const double z = std::visit([](const auto& d) { return d.z; }, detection);
  const double exit = std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, UniformCell>) {
          return 0.5 * m.length;
        } else {
          return 2.0 * m.longitudinal_length;
        }
      },
      medium);
  if (z < exit * (1.0 - 1e-12)) throw std::invalid_argument("detection plane lies inside the medium");
}

Grid2D Grid2D::make(double extent_x, double extent_y, std::size_t nx, std::size_t ny) {
  if (!(extent_x > 0.0) || !(extent_y > 0.0)) throw std::invalid_argument("grid extent must be positive");
  if (nx < 2 || ny < 2) throw std::invalid_argument("grid needs at least two samples per axis");
  Grid2D g;
  g.extent_x = extent_x;
  g.extent_y = extent_y;
  g.nx = nx;
  g.ny = ny;
  g.samples.assign(nx * ny, 0.0);
  return g;
}

double Grid2D::x(std::size_t i) const {
  return -extent_x + 2.0 * extent_x * static_cast<double>(i) / static_cast<double>(nx - 1);
}

double Grid2D::y(std::size_t j) const {
  return -extent_y + 2.0 * extent_y * static_cast<double>(j) / static_cast<double>(ny - 1);
}

complex spatial_mode_function(const BiphotonAmplitudes& amps, const PolarPoint& r_pr, const PolarPoint& r_s) {
  if (r_pr.z != r_s.z) throw std::invalid_argument("probe and signal points must share a plane");
  const auto modes = amps.subspace.modes();
  std::vector<complex> us;
  for (const auto& m : modes) us.push_back(lg_mode(m, amps.beam, r_s));
  complex acc{};
  for (std::size_t a = 0; a < modes.size(); ++a) {
    complex row{};
    for (std::size_t b = 0; b < modes.size(); ++b) row += amps.at(a, b) * us[b];
    acc += lg_mode(modes[a], amps.beam, r_pr) * row;
  }
  return acc;
}

double g2_point_detectors(const BiphotonAmplitudes& amps, double x_pr, double x_s, double z) {
  return std::norm(spatial_mode_function(amps, PolarPoint::from_cartesian(x_pr, 0.0, z),
                                         PolarPoint::from_cartesian(x_s, 0.0, z)));
}

Grid2D g2_point_detector_map(const BiphotonAmplitudes& amps, Grid2D grid, double z) {
  const auto modes = amps.subspace.modes();
  const std::size_t n = modes.size();
  auto sample_axis = [&](std::size_t count, auto coord) {
    std::vector<complex> u(count * n);
    for (std::size_t i = 0; i < count; ++i) {
      const auto p = PolarPoint::from_cartesian(coord(i), 0.0, z);
      for (std::size_t a = 0; a < n; ++a) u[i * n + a] = lg_mode(modes[a], amps.beam, p);
    }
    return u;
  };
  const auto upr = sample_axis(grid.nx, [&](std::size_t i) { return grid.x(i); });
  const auto us = sample_axis(grid.ny, [&](std::size_t j) { return grid.y(j); });

  // W(j, a) = sum_b C(a, b) u_b(X_s(j))
  std::vector<complex> w(grid.ny * n);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t a = 0; a < n; ++a) {
      complex acc{};
      for (std::size_t b = 0; b < n; ++b) acc += amps.at(a, b) * us[j * n + b];
      w[j * n + a] = acc;
    }
  }
  parallel_for(grid.nx, [&](std::size_t i) {
    for (std::size_t j = 0; j < grid.ny; ++j) {
      complex acc{};
      for (std::size_t a = 0; a < n; ++a) acc += upr[i * n + a] * w[j * n + a];
      grid.at(i, j) = std::norm(acc);
    }
  });
  return grid;
}

Grid2D g2_full_probe_map(const BiphotonAmplitudes& amps, Grid2D grid, double z, bool unit_peak) {
  const auto modes = amps.subspace.modes();
  const std::size_t n = modes.size();
  parallel_for(grid.nx, [&](std::size_t i) {
    std::vector<complex> us(n);
    for (std::size_t j = 0; j < grid.ny; ++j) {
      const auto p = PolarPoint::from_cartesian(grid.x(i), grid.y(j), z);
      for (std::size_t b = 0; b < n; ++b) us[b] = lg_mode(modes[b], amps.beam, p);
      double total = 0.0;
      for (std::size_t a = 0; a < n; ++a) {
        complex acc{};
        for (std::size_t b = 0; b < n; ++b) acc += amps.at(a, b) * us[b];
        total += std::norm(acc);
      }
      grid.at(i, j) = total;
    }
  });
  if (unit_peak) scale_to_unit_peak(grid);
  return grid;
}

Grid2D pump_transfer_reference(const PumpSpec& pump, Grid2D grid) {
  for (std::size_t i = 0; i < grid.nx; ++i) {
    for (std::size_t j = 0; j < grid.ny; ++j) {
      const auto p = PolarPoint::from_cartesian(grid.x(i), grid.y(j));
      const double a2 = std::norm(pump.field(p.r, p.phi));
      grid.at(i, j) = a2 * a2;
    }
  }
  scale_to_unit_peak(grid);
  return grid;
}

double pearson_sign(const Grid2D& map) {
  double mass = 0.0;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < map.nx; ++i) {
    for (std::size_t j = 0; j < map.ny; ++j) {
      const double w = map.at(i, j);
      if (w < 0.0) throw std::invalid_argument("density map has negative samples");
      mass += w;
      mx += w * map.x(i);
      my += w * map.y(j);
    }
  }
  if (!(mass > 0.0)) throw std::invalid_argument("density map has zero mass");
  mx /= mass;
  my /= mass;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < map.nx; ++i) {
    for (std::size_t j = 0; j < map.ny; ++j) {
      const double w = map.at(i, j) / mass;
      const double dx = map.x(i) - mx;
      const double dy = map.y(j) - my;
      sxx += w * dx * dx;
      syy += w * dy * dy;
      sxy += w * dx * dy;
    }
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

double normalized_cross_correlation(const Grid2D& a, const Grid2D& b) {
  if (a.samples.size() != b.samples.size() || a.nx != b.nx) {
    throw std::invalid_argument("cross-correlation needs maps on the same grid");
  }
  const double n = static_cast<double>(a.samples.size());
  double ma = 0.0;
  double mb = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    ma += a.samples[i];
    mb += b.samples[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double da = a.samples[i] - ma;
    const double db = b.samples[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) throw std::domain_error("cross-correlation of a constant map");
  return sab / std::sqrt(saa * sbb);
}

}  // namespace fwm
