// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

#include "fwm/pump.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "fwm/quadrature.hpp"

namespace fwm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kRadialNodes = 96;
constexpr double kRadialExtent = 6.0;  // in units of w0

Rule radial_rule(const BeamGeometry& beam) {
  return Rule::make({kRadialNodes, 0.0, kRadialExtent * beam.waist(), RuleKind::RadialPosition});
}

// V(r, phi) = sum_m e^{i m phi} V_m(r), sampled on the radial rule and
// multiplied by an optional real envelope.
std::map<int, std::vector<complex>> azimuthal_components(const PumpSpec& pump, const Rule& rule,
                                                         const std::vector<double>& envelope) {
  const auto& comps = pump.components();
  std::vector<std::vector<complex>> radial(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (double r : rule.nodes()) radial[c].push_back(lg_radial(comps[c].mode, pump.beam(), r));
  }
  std::map<int, std::vector<complex>> out;
  for (std::size_t a = 0; a < comps.size(); ++a) {
    for (std::size_t b = 0; b < comps.size(); ++b) {
      const int m = comps[a].mode.ell + comps[b].mode.ell;
      auto& vm = out[m];
      vm.resize(rule.size());
      const complex cc = comps[a].coefficient * comps[b].coefficient;
      for (std::size_t i = 0; i < rule.size(); ++i) vm[i] += cc * radial[a][i] * radial[b][i] * envelope[i];
    }
  }
  return out;
}

ProductExpansion expand(const PumpSpec& pump, int g, const std::vector<double>& envelope, const Rule& rule) {
  if (g < 0) throw std::invalid_argument("truncation order must be non-negative");
  const auto& beam = pump.beam();
  const auto components = azimuthal_components(pump, rule, envelope);

  ProductExpansion out;
  out.g = g;
  out.beam = beam;
  double kept = 0.0;
  for (const auto& [m, vm] : components) {
    double norm_m = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      norm_m += rule.weights()[i] * rule.nodes()[i] * std::norm(vm[i]);
    }
    out.total_norm += kTwoPi * norm_m;
    for (int n = 0; n <= g; ++n) {
      const ModeIndex target{m, n};
      complex acc{};
      for (std::size_t i = 0; i < rule.size(); ++i) {
        const double r = rule.nodes()[i];
        acc += rule.weights()[i] * r * vm[i] * std::conj(lg_radial(target, beam, r));
      }
      acc *= kTwoPi;
      out.terms.push_back({target, acc});
      kept += std::norm(acc);
    }
  }
  if (!(out.total_norm > 0.0)) throw std::invalid_argument("pump function vanishes identically");
  out.fidelity = kept / out.total_norm;
  return out;
}

}  // namespace

PumpSpec::PumpSpec(std::vector<PumpComponent> components, BeamGeometry beam)
    : components_(std::move(components)), beam_(beam) {
  if (components_.empty()) throw std::invalid_argument("pump has no components");
  std::sort(components_.begin(), components_.end(),
            [](const PumpComponent& a, const PumpComponent& b) { return a.mode < b.mode; });
  double norm = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& c = components_[i];
    if (!c.mode.valid()) throw std::invalid_argument("pump mode has negative radial index");
    if (!std::isfinite(c.coefficient.real()) || !std::isfinite(c.coefficient.imag())) {
      throw std::invalid_argument("pump coefficient is not finite");
    }
    if (i > 0 && components_[i - 1].mode == c.mode) throw std::invalid_argument("duplicate pump mode");
    norm += std::norm(c.coefficient);
  }
  if (std::abs(norm - 1.0) > 1e-12) throw std::invalid_argument("pump coefficients are not unit norm");
}

PumpSpec PumpSpec::normalized(std::vector<PumpComponent> components, BeamGeometry beam) {
  double norm = 0.0;
  for (const auto& c : components) norm += std::norm(c.coefficient);
  if (!(norm > 0.0)) throw std::invalid_argument("pump coefficients are all zero");
  const double s = 1.0 / std::sqrt(norm);
  for (auto& c : components) c.coefficient *= s;
  return {std::move(components), beam};
}

PumpSpec PumpSpec::pure(ModeIndex mode, BeamGeometry beam) { return {{{mode, {1.0, 0.0}}}, beam}; }

complex PumpSpec::field(double r, double phi) const {
  complex acc{};
  for (const auto& c : components_) acc += c.coefficient * lg_mode(c.mode, beam_, {r, phi, 0.0});
  return acc;
}

void validate_medium(const MediumGeometry& medium) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, UniformCell>) {
          if (!(m.length > 0.0)) throw std::invalid_argument("cell length must be positive");
        } else {
          if (!(m.transverse_radius > 0.0) || !(m.longitudinal_length > 0.0)) {
            throw std::invalid_argument("cloud radii must be positive");
          }
        }
      },
      medium);
}

std::vector<complex> ProductExpansion::normalized() const {
  double norm = 0.0;
  for (const auto& t : terms) norm += std::norm(t.a);
  std::vector<complex> out;
  const double s = norm > 0.0 ? 1.0 / std::sqrt(norm) : 0.0;
  for (const auto& t : terms) out.push_back(t.a * s);
  return out;
}

std::vector<complex> ProductExpansion::parseval_normalized() const {
  std::vector<complex> out;
  const double s = 1.0 / std::sqrt(total_norm);
  for (const auto& t : terms) out.push_back(t.a * s);
  return out;
}

complex ProductExpansion::coefficient(ModeIndex mode) const {
  for (const auto& t : terms) {
    if (t.mode == mode) return t.a;
  }
  return {};
}

std::vector<int> ProductExpansion::charges() const {
  std::vector<int> out;
  for (const auto& t : terms) {
    if (out.empty() || out.back() != t.mode.ell) out.push_back(t.mode.ell);
  }
  return out;
}

complex product_expansion_coeff(ModeIndex a, ModeIndex b, ModeIndex target, const BeamGeometry& beam) {
  if (a.ell + b.ell != target.ell) return {};
  const Rule rule = radial_rule(beam);
  complex acc{};
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double r = rule.nodes()[i];
    acc += rule.weights()[i] * r * lg_radial(a, beam, r) * lg_radial(b, beam, r) *
           std::conj(lg_radial(target, beam, r));
  }
  return kTwoPi * acc;
}

ProductExpansion square_pump_expansion(const PumpSpec& pump, int g) {
  const Rule rule = radial_rule(pump.beam());
  return expand(pump, g, std::vector<double>(rule.size(), 1.0), rule);
}

double effective_waist(double w0, double transverse_radius) {
  if (!(w0 > 0.0) || !(transverse_radius > 0.0)) {
    throw std::invalid_argument("effective_waist needs positive lengths");
  }
  return 1.0 / std::sqrt(1.0 / (w0 * w0) + 1.0 / (2.0 * transverse_radius * transverse_radius));
}

ProductExpansion cloud_modified_expansion(const PumpSpec& pump, const ColdCloud& medium, int g) {
  validate_medium(medium);
  const Rule rule = radial_rule(pump.beam());
  std::vector<double> envelope;
  const double inv_r2 = 1.0 / (medium.transverse_radius * medium.transverse_radius);
  for (double r : rule.nodes()) envelope.push_back(std::exp(-r * r * inv_r2));
  return expand(pump, g, envelope, rule);
}

}  // namespace fwm
