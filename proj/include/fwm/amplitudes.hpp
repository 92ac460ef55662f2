// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file amplitudes.hpp
 * @brief Truncated LG subspaces, the biphoton amplitude tensor and its
 *        position-representation construction from four-mode overlaps.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fwm/modes.hpp"
#include "fwm/pump.hpp"

namespace fwm {

/// S(l_max, p_max): charges ell_center - l_max .. ell_center + l_max and
/// radial indices 0 .. p_max for each photon. `ell_center` shifts the charge
/// window for pumps carrying OAM; it is 0 for the symmetric subspace.
struct Subspace {
  int l_max = 0;
  int p_max = 0;
  int ell_center = 0;

  void validate() const;
  /// One-photon modes ordered by charge, then radial index.
  [[nodiscard]] std::vector<ModeIndex> modes() const;
  [[nodiscard]] std::size_t one_photon_count() const;
  /// Two-photon mode count [(2 l_max + 1)(p_max + 1)]^2.
  [[nodiscard]] std::size_t mode_count() const;
  /// Position of `m` in modes(), or nullopt when outside the subspace.
  [[nodiscard]] std::optional<std::size_t> index_of(ModeIndex m) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;
};

enum class Representation { Position, Momentum };

enum class EntryMethod { Overlap, Quadrature, Analytic, QuadratureFallback };

[[nodiscard]] std::string to_string(Representation rep);
[[nodiscard]] std::string to_string(EntryMethod method);

/// Coincidence amplitudes C (or C~) over a subspace. `values` is row-major
/// with the probe mode as row and the signal mode as column.
struct BiphotonAmplitudes {
  Subspace subspace;
  BeamGeometry beam{1e-3};
  Representation representation = Representation::Position;
  std::vector<complex> values;
  std::vector<EntryMethod> methods;
  bool normalized = false;
  /// Largest change of a normalised entry under radial-node doubling, when probed.
  std::optional<double> doubling_change;

  [[nodiscard]] std::size_t side() const { return subspace.one_photon_count(); }
  [[nodiscard]] complex& at(std::size_t probe, std::size_t signal) { return values[probe * side() + signal]; }
  [[nodiscard]] complex at(std::size_t probe, std::size_t signal) const {
    return values[probe * side() + signal];
  }
  /// Entry for explicit modes; 0 outside the subspace.
  [[nodiscard]] complex at(ModeIndex probe, ModeIndex signal) const;

  [[nodiscard]] double norm_squared() const;
  /// Scales to unit norm; throws std::domain_error for an all-zero tensor.
  void normalize();
  [[nodiscard]] std::size_t flagged_count() const;
};

/// Lambda = Int u_a u_b u_c^* u_d^* d^2r at z = 0 (units 1/m^2).
[[nodiscard]] complex lambda_overlap(ModeIndex a, ModeIndex b, ModeIndex c, ModeIndex d,
                                     const BeamGeometry& beam, int radial_nodes = 96);

/// C = sum c c' Lambda over the subspace, normalised. Radial Gauss-Legendre
/// on [0, 6 w0]; the azimuthal integral is the exact Kronecker delta.
[[nodiscard]] BiphotonAmplitudes coincidence_amplitudes_position(const PumpSpec& pump,
                                                                 const Subspace& subspace,
                                                                 int radial_nodes = 96);

}  // namespace fwm
