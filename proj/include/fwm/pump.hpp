// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file pump.hpp
 * @brief Structured pumps, the squared-pump LG expansion and the medium
 *        geometry that weights it.
 */

#pragma once

#include <variant>
#include <vector>

#include "fwm/modes.hpp"

namespace fwm {

struct PumpComponent {
  ModeIndex mode;
  complex coefficient;
};

/// Pump field V_p = sum c_{l,q} u_{l,q} with sum |c|^2 = 1.
class PumpSpec {
 public:
  /// Throws std::invalid_argument when empty, duplicated or not unit norm
  /// (tolerance 1e-12).
  PumpSpec(std::vector<PumpComponent> components, BeamGeometry beam);

  /// Rescales the coefficients to unit norm before validating.
  static PumpSpec normalized(std::vector<PumpComponent> components, BeamGeometry beam);
  /// Single LG mode with unit coefficient.
  static PumpSpec pure(ModeIndex mode, BeamGeometry beam);
  static PumpSpec gaussian(BeamGeometry beam) { return pure({0, 0}, beam); }

  [[nodiscard]] const std::vector<PumpComponent>& components() const { return components_; }
  [[nodiscard]] const BeamGeometry& beam() const { return beam_; }

  /// V_p(r, phi) at z = 0.
  [[nodiscard]] complex field(double r, double phi) const;

 private:
  std::vector<PumpComponent> components_;
  BeamGeometry beam_;
};

struct UniformCell {
  double length;
};

struct ColdCloud {
  double transverse_radius;
  double longitudinal_length;
};

using MediumGeometry = std::variant<UniformCell, ColdCloud>;

/// Throws std::invalid_argument when a length is not positive.
void validate_medium(const MediumGeometry& medium);

struct ExpansionTerm {
  ModeIndex mode;  // (m, n)
  complex a;
};

/// Truncated expansion V(r) = sum a_{m,n} u_{m,n}(r) in the pump-waist basis.
struct ProductExpansion {
  std::vector<ExpansionTerm> terms;  // sorted by (m, n)
  int g = 0;
  double fidelity = 0.0;
  double total_norm = 0.0;  // Int |V|^2 d^2r of the expanded function
  BeamGeometry beam{1e-3};

  /// Coefficients scaled to unit Euclidean norm over the kept terms.
  [[nodiscard]] std::vector<complex> normalized() const;
  /// Coefficients divided by sqrt(total_norm).
  [[nodiscard]] std::vector<complex> parseval_normalized() const;
  /// Coefficient for (m, n) or 0 when not kept.
  [[nodiscard]] complex coefficient(ModeIndex mode) const;
  /// Distinct charges m present, ascending.
  [[nodiscard]] std::vector<int> charges() const;
};

/// s = Int u_a u_b u_target^* d^2r at z = 0 (units 1/m).
[[nodiscard]] complex product_expansion_coeff(ModeIndex a, ModeIndex b, ModeIndex target,
                                              const BeamGeometry& beam);

inline constexpr int kDefaultTruncation = 2;

/// Expands V = V_p^2 over n <= g for every reachable charge m.
[[nodiscard]] ProductExpansion square_pump_expansion(const PumpSpec& pump, int g = kDefaultTruncation);

/// (1/w0^2 + 1/(2 R_t^2))^{-1/2}
[[nodiscard]] double effective_waist(double w0, double transverse_radius);

/// Expands e^{-r^2/R_t^2} V_p^2 in the pump-waist basis.
[[nodiscard]] ProductExpansion cloud_modified_expansion(const PumpSpec& pump, const ColdCloud& medium,
                                                        int g = kDefaultTruncation);

}  // namespace fwm
