// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file quadrature.hpp
 * @brief Fixed, deterministic integration rules and convergence probes.
 */

#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fwm {

enum class RuleKind { RadialPosition, RadialMomentum, AzimuthalUniform, Longitudinal };

/// Raised when an integrand is not finite or a convergence contract fails.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RuleSpec {
  int nodes = 96;
  double lower = 0.0;
  double upper = 1.0;
  RuleKind kind = RuleKind::RadialPosition;

  /// Azimuthal rules always span [0, 2pi).
  static RuleSpec azimuthal(int nodes);
};

/// Materialised nodes and weights of a RuleSpec. Gauss-Legendre for every
/// kind except AzimuthalUniform (equispaced, equal weights).
class Rule {
 public:
  static Rule make(const RuleSpec& spec);
  /// Gauss-Legendre without the nodes >= 8 contract; used for tests and
  /// small exact integrations.
  static Rule gauss_legendre(int nodes, double lower, double upper);

  [[nodiscard]] const RuleSpec& spec() const { return spec_; }
  [[nodiscard]] std::size_t size() const { return nodes_.size(); }
  [[nodiscard]] const std::vector<double>& nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }

 private:
  RuleSpec spec_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

using RealToComplex = std::function<std::complex<double>(double)>;
using PolarIntegrand = std::function<std::complex<double>(double r, double phi)>;

/// Weighted sum in node order. Throws ConvergenceError on a non-finite sample.
[[nodiscard]] std::complex<double> integrate_1d(const RealToComplex& f, const Rule& rule);

/// Product rule over (r, phi) with the Jacobian r.
[[nodiscard]] std::complex<double> integrate_polar(const PolarIntegrand& f, const Rule& radial,
                                                   const Rule& azimuthal);

struct ConvergenceReport {
  std::vector<int> node_counts;
  std::vector<std::complex<double>> values;
  double max_relative_change = 0.0;
  double last_relative_change = 0.0;
  bool converged = false;
};

/// Evaluates `computation(n)` for n = base, 2 base, ... (levels + 1 values)
/// and reports successive relative changes against `tolerance`.
[[nodiscard]] ConvergenceReport convergence_probe(
    const std::function<std::complex<double>(int)>& computation, int base_nodes, int levels,
    double tolerance = 1e-8);

}  // namespace fwm
