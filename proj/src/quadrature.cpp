// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

#include "fwm/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

namespace fwm {

namespace {

constexpr int kMinNodes = 8;

struct FixedDeleter {
  void operator()(gsl_integration_fixed_workspace* t) const { gsl_integration_fixed_free(t); }
};

// Golub-Welsch rule from GSL. Its glfixed tables are exact only for a few
// tabulated sizes and lose about 1e-10 in the weights elsewhere.
void fill_gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  std::unique_ptr<gsl_integration_fixed_workspace, FixedDeleter> table(
      gsl_integration_fixed_alloc(gsl_integration_fixed_legendre, static_cast<std::size_t>(n), a, b, 0.0, 0.0));
  if (!table) throw std::runtime_error("failed to allocate Gauss-Legendre table");
  const double* nodes = gsl_integration_fixed_nodes(table.get());
  const double* weights = gsl_integration_fixed_weights(table.get());
  x.assign(nodes, nodes + n);
  w.assign(weights, weights + n);
  // Ascending node order regardless of the table layout.
  std::vector<std::size_t> order(x.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return x[i] < x[j]; });
  std::vector<double> xs(x.size()), ws(w.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    xs[i] = x[order[i]];
    ws[i] = w[order[i]];
  }
  x = std::move(xs);
  w = std::move(ws);
}

void check_finite(std::complex<double> v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw ConvergenceError(std::string(what) + ": non-finite integrand value");
  }
}

}  // namespace

RuleSpec RuleSpec::azimuthal(int nodes) {
  return {nodes, 0.0, 2.0 * std::numbers::pi, RuleKind::AzimuthalUniform};
}

Rule Rule::make(const RuleSpec& spec) {
  if (spec.nodes < kMinNodes) throw std::invalid_argument("quadrature rules need at least 8 nodes");
  if (!(spec.upper > spec.lower)) throw std::invalid_argument("quadrature interval is empty");
  Rule rule;
  rule.spec_ = spec;
  if (spec.kind == RuleKind::AzimuthalUniform) {
    const double h = (spec.upper - spec.lower) / spec.nodes;
    for (int i = 0; i < spec.nodes; ++i) {
      rule.nodes_.push_back(spec.lower + h * i);
      rule.weights_.push_back(h);
    }
  } else {
    fill_gauss_legendre(spec.nodes, spec.lower, spec.upper, rule.nodes_, rule.weights_);
  }
  return rule;
}

Rule Rule::gauss_legendre(int nodes, double lower, double upper) {
  if (nodes < 1) throw std::invalid_argument("Gauss-Legendre needs at least one node");
  Rule rule;
  rule.spec_ = {nodes, lower, upper, RuleKind::RadialPosition};
  fill_gauss_legendre(nodes, lower, upper, rule.nodes_, rule.weights_);
  return rule;
}

std::complex<double> integrate_1d(const RealToComplex& f, const Rule& rule) {
  std::complex<double> acc{};
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto v = f(rule.nodes()[i]);
    check_finite(v, "integrate_1d");
    acc += rule.weights()[i] * v;
  }
  return acc;
}

std::complex<double> integrate_polar(const PolarIntegrand& f, const Rule& radial, const Rule& azimuthal) {
  std::complex<double> acc{};
  for (std::size_t i = 0; i < radial.size(); ++i) {
    const double r = radial.nodes()[i];
    std::complex<double> ring{};
    for (std::size_t j = 0; j < azimuthal.size(); ++j) {
      const auto v = f(r, azimuthal.nodes()[j]);
      check_finite(v, "integrate_polar");
      ring += azimuthal.weights()[j] * v;
    }
    acc += radial.weights()[i] * r * ring;
  }
  return acc;
}

ConvergenceReport convergence_probe(const std::function<std::complex<double>(int)>& computation,
                                    int base_nodes, int levels, double tolerance) {
  if (levels < 1) throw std::invalid_argument("convergence_probe needs at least one doubling level");
  ConvergenceReport report;
  int n = base_nodes;
  for (int level = 0; level <= levels; ++level) {
    report.node_counts.push_back(n);
    report.values.push_back(computation(n));
    n *= 2;
  }
  for (std::size_t i = 1; i < report.values.size(); ++i) {
    const double scale = std::max(std::abs(report.values[i]), 1e-300);
    const double change = std::abs(report.values[i] - report.values[i - 1]) / scale;
    report.max_relative_change = std::max(report.max_relative_change, change);
    report.last_relative_change = change;
  }
  report.converged = report.last_relative_change <= tolerance;
  return report;
}

}  // namespace fwm
