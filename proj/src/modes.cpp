// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

#include "fwm/modes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fwm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kFiniteSumMaxDegree = 12;
// Beyond this argument the alternating sum cancels (terms grow like e^x) and
// loses up to 1e-8 relative accuracy at p = 12, x = 9.5.
constexpr double kFiniteSumMaxArgument = 2.0;

complex i_power(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

BeamGeometry::BeamGeometry(double waist, double wavelength)
    : waist_(waist), wavelength_(wavelength) {
  if (!(waist > 0.0) || !std::isfinite(waist)) {
    throw std::invalid_argument("beam waist must be positive and finite");
  }
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
    throw std::invalid_argument("wavelength must be positive and finite");
  }
  k_ = 2.0 * kPi / wavelength_;
  z_r_ = 0.5 * k_ * waist_ * waist_;
}

double BeamGeometry::width_at(double z) const {
  const double t = z / z_r_;
  return waist_ * std::sqrt(1.0 + t * t);
}

double BeamGeometry::inverse_curvature_at(double z) const {
  // 1/R = z / (z^2 + z_R^2), finite at the waist.
  return z / (z * z + z_r_ * z_r_);
}

double BeamGeometry::gouy_phase(int mode_order, double z) const {
  return static_cast<double>(mode_order + 1) * std::atan(z / z_r_);
}

PolarPoint PolarPoint::from_cartesian(double x, double y, double z) {
  double phi = std::atan2(y, x);
  if (phi < 0.0) phi += 2.0 * kPi;
  return {std::hypot(x, y), phi, z};
}

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k)));
}

std::vector<double> laguerre_coefficients(int p, int alpha) {
  if (p < 0 || alpha < 0) {
    throw std::invalid_argument("laguerre_coefficients: negative index");
  }
  std::vector<double> b(static_cast<std::size_t>(p) + 1);
  for (int k = 0; k <= p; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    b[static_cast<std::size_t>(k)] =
        sign * std::exp(log_factorial(p + alpha) - log_factorial(p - k) -
                        log_factorial(alpha + k) - log_factorial(k));
  }
  return b;
}

double assoc_laguerre(int p, int alpha, double x) {
  if (p < 0 || alpha < 0) {
    throw std::invalid_argument("assoc_laguerre: p and alpha must be non-negative");
  }
  if (p <= kFiniteSumMaxDegree && x <= kFiniteSumMaxArgument) {
    const auto b = laguerre_coefficients(p, alpha);
    double acc = 0.0;
    for (int k = p; k >= 0; --k) acc = acc * x + b[static_cast<std::size_t>(k)];
    return acc;
  }
  if (p == 0) return 1.0;
  double prev = 1.0;
  double curr = 1.0 + alpha - x;
  for (int k = 1; k < p; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * curr - (k + alpha) * prev) / (k + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

double lg_normalization(ModeIndex idx) {
  if (!idx.valid()) throw std::invalid_argument("lg_normalization: negative radial index");
  const int a = std::abs(idx.ell);
  return std::sqrt(2.0 / kPi * std::exp(log_factorial(idx.p) - log_factorial(idx.p + a)));
}

complex lg_radial(ModeIndex idx, const BeamGeometry& beam, double r, double z) {
  const int a = std::abs(idx.ell);
  const double w = beam.width_at(z);
  const double x = 2.0 * r * r / (w * w);
  const double amp = lg_normalization(idx) / w * std::pow(std::sqrt(x), a) *
                     assoc_laguerre(idx.p, a, x) * std::exp(-0.5 * x);
  const double phase = -0.5 * beam.wavenumber() * r * r * beam.inverse_curvature_at(z) +
                       beam.gouy_phase(idx.order(), z);
  return std::polar(amp, phase);
}

complex lg_mode(ModeIndex idx, const BeamGeometry& beam, const PolarPoint& point) {
  return lg_radial(idx, beam, point.r, point.z) *
         std::polar(1.0, static_cast<double>(idx.ell) * point.phi);
}

complex lg_spectrum_radial(ModeIndex idx, const BeamGeometry& beam, double rho) {
  return beam.waist() * unit::spectrum_radial(idx, rho * beam.waist());
}

complex lg_spectrum(ModeIndex idx, const BeamGeometry& beam, double rho, double varphi) {
  return lg_spectrum_radial(idx, beam, rho) *
         std::polar(1.0, static_cast<double>(idx.ell) * varphi);
}

complex propagate_spectrum(complex value, const BeamGeometry& beam, double rho, double z) {
  return value * std::polar(1.0, rho * rho * z / (2.0 * beam.wavenumber()));
}

namespace unit {

complex spectrum_radial(ModeIndex idx, double rho) {
  const int a = std::abs(idx.ell);
  const double x = 0.5 * rho * rho;
  const double amp = 0.5 * lg_normalization(idx) * std::pow(std::sqrt(x), a) *
                     assoc_laguerre(idx.p, a, x) * std::exp(-0.5 * x);
  return amp * i_power(idx.order());
}

}  // namespace unit

}  // namespace fwm
