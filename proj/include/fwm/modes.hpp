// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file modes.hpp
 * @brief Laguerre-Gaussian modes, their angular spectra and the special
 *        functions they are built from.
 *
 * Conventions used everywhere in the library:
 *  - fields carry the carrier e^{-i(kz - wt)}, so a mode at z picks up the
 *    curvature phase e^{-ikr^2/2R(z)} and the Gouy phase e^{+i(N+1)atan(z/z_R)};
 *  - the azimuthal factor is e^{+i l phi} in position space and e^{+i l varphi}
 *    in momentum space;
 *  - the angular spectrum is u~(rho) = (1/2pi) Int u(r) e^{+i rho.r} d^2r, which
 *    yields the e^{i pi N/2} phase of the closed form;
 *  - SI units (metres, radians).
 */

#pragma once

#include <compare>
#include <complex>
#include <cstdlib>
#include <vector>

namespace fwm {

using complex = std::complex<double>;

inline constexpr double kDefaultWavelength = 780e-9;

/// Discrete LG label: topological charge `ell` and radial index `p`.
struct ModeIndex {
  int ell = 0;
  int p = 0;

  [[nodiscard]] int order() const { return 2 * p + std::abs(ell); }
  [[nodiscard]] bool valid() const { return p >= 0; }

  friend auto operator<=>(const ModeIndex&, const ModeIndex&) = default;
};

/// Pump/basis beam: waist at z = 0 and vacuum wavelength; k and z_R derived.
class BeamGeometry {
 public:
  explicit BeamGeometry(double waist, double wavelength = kDefaultWavelength);

  [[nodiscard]] double waist() const { return waist_; }
  [[nodiscard]] double wavelength() const { return wavelength_; }
  [[nodiscard]] double wavenumber() const { return k_; }
  [[nodiscard]] double rayleigh_range() const { return z_r_; }

  /// w(z) = w0 sqrt(1 + (z/z_R)^2)
  [[nodiscard]] double width_at(double z) const;
  /// Inverse curvature radius 1/R(z); zero at the waist plane.
  [[nodiscard]] double inverse_curvature_at(double z) const;
  /// (N+1) atan(z/z_R)
  [[nodiscard]] double gouy_phase(int mode_order, double z) const;

 private:
  double waist_;
  double wavelength_;
  double k_;
  double z_r_;
};

/// Cylindrical point (r, phi, z) in position space.
struct PolarPoint {
  double r = 0.0;
  double phi = 0.0;
  double z = 0.0;

  static PolarPoint from_cartesian(double x, double y, double z = 0.0);
};

// ---------------------------------------------------------------------------
// Special functions

/// ln(n!) via lgamma.
[[nodiscard]] double log_factorial(int n);
/// Binomial coefficient as a double (exact for the small arguments used here).
[[nodiscard]] double binomial(int n, int k);

/// Coefficients b_k of L_p^alpha(x) = sum_k b_k x^k.
[[nodiscard]] std::vector<double> laguerre_coefficients(int p, int alpha);

/// Associated Laguerre polynomial L_p^alpha(x). Finite sum for p <= 12 and
/// x <= 2, three-term recurrence otherwise.
[[nodiscard]] double assoc_laguerre(int p, int alpha, double x);

/// sqrt(2 p! / (pi (p+|l|)!))
[[nodiscard]] double lg_normalization(ModeIndex idx);

// ---------------------------------------------------------------------------
// Modes

/// Radial part of u_{l,p}(r, z): everything except e^{i l phi}.
[[nodiscard]] complex lg_radial(ModeIndex idx, const BeamGeometry& beam, double r, double z = 0.0);

/// u_{l,p}(r, phi, z), units 1/m.
[[nodiscard]] complex lg_mode(ModeIndex idx, const BeamGeometry& beam, const PolarPoint& point);

/// Radial part of the angular spectrum at z = 0, including e^{i pi N/2}.
[[nodiscard]] complex lg_spectrum_radial(ModeIndex idx, const BeamGeometry& beam, double rho);

/// u~_{l,p}(rho, varphi) at z = 0, units m.
[[nodiscard]] complex lg_spectrum(ModeIndex idx, const BeamGeometry& beam, double rho, double varphi);

/// Paraxial free-space propagation of a spectral amplitude: value * e^{i rho^2 z / 2k}.
[[nodiscard]] complex propagate_spectrum(complex value, const BeamGeometry& beam, double rho, double z);

namespace unit {
// Waist-normalised helpers (w0 = 1) shared by the momentum-space engines.

/// Radial spectrum for w0 = 1: N/2 (rho/sqrt2)^|l| L_p^|l|(rho^2/2) e^{-rho^2/4} i^N.
[[nodiscard]] complex spectrum_radial(ModeIndex idx, double rho);

}  // namespace unit

}  // namespace fwm
