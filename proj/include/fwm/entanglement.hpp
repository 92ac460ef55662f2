// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file entanglement.hpp
 * @brief OAM marginals, spiral bandwidth, entropy, purity and Schmidt numbers.
 */

#pragma once

#include <map>
#include <utility>

#include "fwm/amplitudes.hpp"

namespace fwm {

inline constexpr double kSchmidtGamma = 0.257;

/// Joint OAM probabilities P_{l, l'} after tracing the radial indices.
struct OamDistribution {
  std::map<std::pair<int, int>, double> joint;

  /// Marginal over the probe charge l.
  [[nodiscard]] std::map<int, double> probe_marginal() const;
  [[nodiscard]] double total() const;
};

[[nodiscard]] OamDistribution oam_distribution(const BiphotonAmplitudes& amps);

/// Standard deviation of the probe charge.
[[nodiscard]] double spiral_bandwidth(const OamDistribution& dist);

/// Shannon entropy of the joint distribution in bits.
[[nodiscard]] double entanglement_entropy(const OamDistribution& dist);

struct PurityReport {
  double purity;
  double schmidt_k;
};

/// Reduced-state purity tr(rho_s^2) from the eight-index contraction and K = 1/purity.
[[nodiscard]] PurityReport purity_and_schmidt(const BiphotonAmplitudes& amps);

/// Gaussian-approximation Schmidt number K_G(zeta), zeta = L / z_R.
[[nodiscard]] double schmidt_gaussian(double zeta, double gamma = kSchmidtGamma);

}  // namespace fwm
