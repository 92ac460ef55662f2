// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "fwm/amplitudes.hpp"
#include "fwm/modes.hpp"
#include "fwm/quadrature.hpp"

using namespace fwm;

namespace {

constexpr double kPi = std::numbers::pi;

complex overlap(ModeIndex a, ModeIndex b, const BeamGeometry& beam, double z) {
  const Rule radial = Rule::make({128, 0.0, 7.0 * beam.width_at(z), RuleKind::RadialPosition});
  const Rule az = Rule::make(RuleSpec::azimuthal(32));
  return integrate_polar(
      [&](double r, double phi) {
        return lg_mode(a, beam, {r, phi, z}) * std::conj(lg_mode(b, beam, {r, phi, z}));
      },
      radial, az);
}

}  // namespace

TEST_CASE("associated Laguerre reference values") {
  CHECK(assoc_laguerre(0, 3, 7.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(assoc_laguerre(1, 0, 2.0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(assoc_laguerre(2, 1, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("associated Laguerre matches the standard library on both branches") {
  for (int p = 0; p <= 24; ++p) {
    for (int alpha = 0; alpha <= 6; ++alpha) {
      for (double x : {0.0, 0.3, 1.7, 4.2, 9.5}) {
        const double ref = std::assoc_laguerre(static_cast<unsigned>(p), static_cast<unsigned>(alpha), x);
        const double scale = std::max(1.0, std::abs(ref));
        CHECK(std::abs(assoc_laguerre(p, alpha, x) - ref) / scale < 1e-11);
      }
    }
  }
}

TEST_CASE("beam geometry derived quantities") {
  const BeamGeometry beam(1e-3);
  CHECK(beam.wavelength() == 780e-9);
  CHECK(beam.rayleigh_range() == 0.5 * beam.wavenumber() * 1e-6);
  CHECK(beam.width_at(beam.rayleigh_range()) == doctest::Approx(std::sqrt(2.0) * 1e-3));
  CHECK(beam.inverse_curvature_at(0.0) == 0.0);
  CHECK_THROWS_AS(BeamGeometry(0.0), std::invalid_argument);
  CHECK_THROWS_AS(BeamGeometry(1e-3, -1.0), std::invalid_argument);
}

TEST_CASE("LG mode point values") {
  const BeamGeometry beam(0.7e-3);
  const auto u00 = lg_mode({0, 0}, beam, {0.0, 0.0, 0.0});
  CHECK(u00.real() == doctest::Approx(std::sqrt(2.0 / kPi) / beam.waist()).epsilon(1e-14));
  CHECK(u00.imag() == 0.0);
  CHECK(std::abs(lg_mode({1, 0}, beam, {0.0, 1.3, 0.0})) == 0.0);
  CHECK(std::abs(lg_mode({-2, 1}, beam, {0.0, 0.4, 0.3 * beam.rayleigh_range()})) == 0.0);
}

TEST_CASE("normalisation of u_{2,3} away from the waist") {
  const BeamGeometry beam(1e-3);
  const auto n = overlap({2, 3}, {2, 3}, beam, 0.7 * beam.rayleigh_range());
  CHECK(std::abs(n - 1.0) < 1e-10);
}

TEST_CASE("orthonormality over S(2,2) at the waist and at z_R/2") {
  const BeamGeometry beam(1e-3);
  const auto modes = Subspace{2, 2, 0}.modes();
  for (double z : {0.0, 0.5 * beam.rayleigh_range()}) {
    double worst = 0.0;
    for (const auto& a : modes) {
      for (const auto& b : modes) {
        const double expected = a == b ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(overlap(a, b, beam, z) - expected));
      }
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("angular spectrum point values") {
  const BeamGeometry beam(1e-3);
  const auto s00 = lg_spectrum({0, 0}, beam, 0.0, 0.0);
  CHECK(s00.real() == doctest::Approx(std::sqrt(2.0 / kPi) * beam.waist() / 2.0).epsilon(1e-14));
  CHECK(s00.imag() == 0.0);
  CHECK(std::abs(lg_spectrum({1, 1}, beam, 0.0, 0.0)) == 0.0);
  // L_1^0 changes sign at rho_w = 1, i.e. rho = sqrt(2)/w0.
  const double root = std::sqrt(2.0) / beam.waist();
  const auto inside = lg_spectrum({0, 1}, beam, 0.9 * root, 0.0);
  const auto outside = lg_spectrum({0, 1}, beam, 1.1 * root, 0.0);
  CHECK(inside.real() * outside.real() < 0.0);
  CHECK(std::abs(lg_spectrum({0, 1}, beam, root, 0.0)) < 1e-15);
}

TEST_CASE("discrete Fourier transform of sampled modes matches the closed spectrum") {
  const BeamGeometry beam(1e-3);
  const double w0 = beam.waist();
  const int n = 160;
  const double half = 6.0 * w0;
  const double h = 2.0 * half / n;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> radius(0.0, 4.0 / w0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::vector<std::pair<double, double>> probes;
  for (int i = 0; i < 60; ++i) probes.emplace_back(radius(rng), angle(rng));

  for (const auto& m : Subspace{2, 2, 0}.modes()) {
    std::vector<complex> samples;
    std::vector<std::pair<double, double>> xy;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double x = -half + (i + 0.5) * h;
        const double y = -half + (j + 0.5) * h;
        samples.push_back(lg_mode(m, beam, PolarPoint::from_cartesian(x, y)));
        xy.emplace_back(x, y);
      }
    }
    double err = 0.0;
    double ref_norm = 0.0;
    for (const auto& [rho, varphi] : probes) {
      const double kx = rho * std::cos(varphi);
      const double ky = rho * std::sin(varphi);
      complex dft{};
      for (std::size_t s = 0; s < samples.size(); ++s) {
        dft += samples[s] * std::polar(1.0, kx * xy[s].first + ky * xy[s].second);
      }
      dft *= h * h / (2.0 * kPi);
      const auto ref = lg_spectrum(m, beam, rho, varphi);
      err += std::norm(dft - ref);
      ref_norm += std::norm(ref);
    }
    CHECK(std::sqrt(err / ref_norm) < 1e-3);
  }
}

TEST_CASE("paraxial spectrum propagation") {
  const BeamGeometry beam(1e-3);
  const complex v(0.3, -0.7);
  CHECK(propagate_spectrum(v, beam, 1234.0, 0.0) == v);
  for (double z : {0.01, 0.5, 3.0}) {
    CHECK(std::abs(propagate_spectrum(v, beam, 800.0, z)) == doctest::Approx(std::abs(v)).epsilon(1e-15));
  }
  const double z = 0.25;
  const double rho = std::sqrt(2.0 * beam.wavenumber() * 2.0 * kPi / z);
  CHECK(std::abs(propagate_spectrum(v, beam, rho, z) - v) < 1e-12);
}

TEST_CASE("Gouy phase on axis") {
  const BeamGeometry beam(1e-3);
  for (int p = 0; p <= 3; ++p) {
    const ModeIndex m{0, p};
    for (double t : {0.2, 0.5, 1.0, 2.5}) {
      const double z = t * beam.rayleigh_range();
      const double d = std::arg(lg_mode(m, beam, {0.0, 0.0, z})) - std::arg(lg_mode(m, beam, {0.0, 0.0, 0.0}));
      const double expected = (m.order() + 1) * std::atan(t);
      CHECK(std::abs(std::remainder(d - expected, 2.0 * kPi)) < 1e-12);
    }
  }
}

TEST_CASE("closure residual shrinks as the subspace grows") {
  const BeamGeometry beam(1e-3);
  const double w0 = beam.waist();
  const std::vector<std::array<double, 4>> points{{0.3 * w0, 0.1, 0.4 / w0, 1.9},
                                                  {0.5 * w0, 2.0, 0.8 / w0, 0.3},
                                                  {0.2 * w0, 4.1, 0.6 / w0, 5.0},
                                                  {0.6 * w0, 1.1, 0.2 / w0, 3.3}};
  double previous = 1e300;
  for (const auto& s : {Subspace{1, 1, 0}, Subspace{2, 3, 0}, Subspace{4, 6, 0}, Subspace{6, 12, 0},
                        Subspace{10, 20, 0}}) {
    double residual = 0.0;
    for (const auto& [r, phi, rho, varphi] : points) {
      complex sum{};
      for (const auto& m : s.modes()) sum += lg_spectrum(m, beam, rho, varphi) * std::conj(lg_mode(m, beam, {r, phi, 0.0}));
      const double dot = rho * r * std::cos(varphi - phi);
      residual += std::norm(sum - std::polar(1.0, dot) / (2.0 * kPi));
    }
    residual = std::sqrt(residual / points.size());
    CHECK(residual < previous);
    previous = residual;
  }
}
