// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file momentum.hpp
 * @brief Momentum-representation amplitudes: phase-matching kernel, direct
 *        nested quadrature, the closed nested-sum evaluation and the trace
 *        distance between representations.
 */

#pragma once

#include <vector>

#include "fwm/amplitudes.hpp"
#include "fwm/pump.hpp"
#include "fwm/quadrature.hpp"

namespace fwm {

/// Transverse wavevector (rad/m).
struct Wavevector {
  double x = 0.0;
  double y = 0.0;
};

struct QuadratureConfig {
  int radial_nodes = 96;
  double radial_extent = 12.0;  // in units of 1/w0
  int azimuthal_nodes = 64;
  int z_nodes = 32;
  double series_tolerance = 1e-12;
  int series_cap = 200;
  /// Allowed change of any normalised entry when the radial nodes double.
  double convergence_tolerance = 1e-6;
  bool check_convergence = false;

  void validate() const;
};

/// Longitudinal sample of the medium: position and normalised weight.
struct WindowNode {
  double z;
  double weight;
};

/// Degenerate phase-matching kernel for a medium centred on the pump waist.
class PhaseMatchKernel {
 public:
  PhaseMatchKernel(BeamGeometry beam, MediumGeometry medium);

  [[nodiscard]] const BeamGeometry& beam() const { return beam_; }
  [[nodiscard]] const MediumGeometry& medium() const { return medium_; }

  /// alpha_{+/-}^2(z) = w0^2/8 +/- i z/4k
  [[nodiscard]] complex alpha_plus_sq(double z) const;
  [[nodiscard]] complex alpha_minus_sq(double z) const;

  /// Longitudinal rule whose weights sum to one: uniform window on
  /// [-L/2, L/2] for a cell, e^{-4z^2/L^2} on [-2L, 2L] for a cloud.
  [[nodiscard]] std::vector<WindowNode> window(int nodes) const;

  /// Delta(q) in closed form: sinc(L q^2 / 8k) for a cell,
  /// exp(-(q^2 L / 16k)^2) for a cloud.
  [[nodiscard]] complex phase_matching(double q) const;
  /// Delta(q) = sum_z w_z e^{-i z q^2 / 4k} over window(nodes).
  [[nodiscard]] complex phase_matching_quadrature(double q, int nodes) const;

  /// Waist of the transverse Gaussian factor: w0 for a cell, w_eff for a cloud.
  [[nodiscard]] double transverse_waist() const;

 private:
  BeamGeometry beam_;
  MediumGeometry medium_;
};

/// Gaussian-pump kernel (1/2pi) exp(-w^2 |rho_pr + rho_s|^2 / 8) Delta(|rho_pr - rho_s|).
[[nodiscard]] complex biphoton_kernel(Wavevector rho_pr, Wavevector rho_s, const PhaseMatchKernel& kernel);

/// General kernel V~(rho_pr + rho_s) Delta(|rho_pr - rho_s|) from a pump expansion.
[[nodiscard]] complex biphoton_kernel(Wavevector rho_pr, Wavevector rho_s, const PhaseMatchKernel& kernel,
                                      const ProductExpansion& expansion);

/// Nested z x radial x radial x angle quadrature. With check_convergence the
/// run is repeated with doubled radial nodes and ConvergenceError is thrown
/// when a normalised entry moves by more than the tolerance.
[[nodiscard]] BiphotonAmplitudes amplitudes_momentum_quadrature(const ProductExpansion& expansion,
                                                                const Subspace& subspace,
                                                                const PhaseMatchKernel& kernel,
                                                                const QuadratureConfig& qcfg = {});

/// Closed nested-sum evaluation with the Bessel series summed adaptively and
/// the z integral by quadrature. Entries whose series does not converge are
/// recomputed by quadrature and flagged as QuadratureFallback.
[[nodiscard]] BiphotonAmplitudes amplitudes_momentum_analytic(const ProductExpansion& expansion,
                                                              const Subspace& subspace,
                                                              const PhaseMatchKernel& kernel,
                                                              const QuadratureConfig& qcfg = {});

/// D = sqrt(1 - |<a|b>|^2); both tensors must be normalised on the same subspace.
[[nodiscard]] double trace_distance(const BiphotonAmplitudes& a, const BiphotonAmplitudes& b);

}  // namespace fwm
