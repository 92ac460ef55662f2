// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

#include "fwm/amplitudes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fwm/parallel.hpp"
#include "fwm/quadrature.hpp"

namespace fwm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRadialExtent = 6.0;

std::vector<double> radial_samples(ModeIndex m, const BeamGeometry& beam, const Rule& rule) {
  // At z = 0 every LG radial profile is real.
  std::vector<double> out;
  out.reserve(rule.size());
  for (double r : rule.nodes()) out.push_back(lg_radial(m, beam, r).real());
  return out;
}

}  // namespace

void Subspace::validate() const {
  if (l_max < 0 || p_max < 0) throw std::invalid_argument("subspace limits must be non-negative");
}

std::vector<ModeIndex> Subspace::modes() const {
  std::vector<ModeIndex> out;
  for (int l = ell_center - l_max; l <= ell_center + l_max; ++l) {
    for (int p = 0; p <= p_max; ++p) out.push_back({l, p});
  }
  return out;
}

std::size_t Subspace::one_photon_count() const {
  return static_cast<std::size_t>(2 * l_max + 1) * static_cast<std::size_t>(p_max + 1);
}

std::size_t Subspace::mode_count() const { return one_photon_count() * one_photon_count(); }

std::optional<std::size_t> Subspace::index_of(ModeIndex m) const {
  if (m.p < 0 || m.p > p_max || std::abs(m.ell - ell_center) > l_max) return std::nullopt;
  return static_cast<std::size_t>(m.ell - ell_center + l_max) * static_cast<std::size_t>(p_max + 1) +
         static_cast<std::size_t>(m.p);
}

std::string to_string(Representation rep) {
  return rep == Representation::Position ? "position" : "momentum";
}

std::string to_string(EntryMethod method) {
  switch (method) {
    case EntryMethod::Overlap: return "overlap";
    case EntryMethod::Quadrature: return "quadrature";
    case EntryMethod::Analytic: return "analytic";
    case EntryMethod::QuadratureFallback: return "quadrature-fallback";
  }
  return "unknown";
}

complex BiphotonAmplitudes::at(ModeIndex probe, ModeIndex signal) const {
  const auto i = subspace.index_of(probe);
  const auto j = subspace.index_of(signal);
  if (!i || !j) return {};
  return at(*i, *j);
}

double BiphotonAmplitudes::norm_squared() const {
  double acc = 0.0;
  for (const auto& v : values) acc += std::norm(v);
  return acc;
}

void BiphotonAmplitudes::normalize() {
  const double n2 = norm_squared();
  if (!(n2 > 0.0)) throw std::domain_error("amplitude tensor vanishes on the subspace");
  const double s = 1.0 / std::sqrt(n2);
  for (auto& v : values) v *= s;
  normalized = true;
}

std::size_t BiphotonAmplitudes::flagged_count() const {
  std::size_t n = 0;
  for (auto m : methods) n += (m == EntryMethod::QuadratureFallback) ? 1 : 0;
  return n;
}

complex lambda_overlap(ModeIndex a, ModeIndex b, ModeIndex c, ModeIndex d, const BeamGeometry& beam,
                       int radial_nodes) {
  if (a.ell + b.ell != c.ell + d.ell) return {};
  const Rule rule = Rule::make({radial_nodes, 0.0, kRadialExtent * beam.waist(), RuleKind::RadialPosition});
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double r = rule.nodes()[i];
    const double prod = lg_radial(a, beam, r).real() * lg_radial(b, beam, r).real() *
                        lg_radial(c, beam, r).real() * lg_radial(d, beam, r).real();
    acc += rule.weights()[i] * r * prod;
  }
  return {kTwoPi * acc, 0.0};
}

BiphotonAmplitudes coincidence_amplitudes_position(const PumpSpec& pump, const Subspace& subspace,
                                                   int radial_nodes) {
  subspace.validate();
  const auto& beam = pump.beam();
  const Rule rule = Rule::make({radial_nodes, 0.0, kRadialExtent * beam.waist(), RuleKind::RadialPosition});
  const auto modes = subspace.modes();
  const auto& comps = pump.components();

  std::vector<std::vector<double>> pump_radial;
  for (const auto& c : comps) pump_radial.push_back(radial_samples(c.mode, beam, rule));
  std::vector<std::vector<double>> mode_radial;
  for (const auto& m : modes) mode_radial.push_back(radial_samples(m, beam, rule));

  // Lambda for a pump pair and a subspace pair, reusing the sampled profiles.
  auto lambda = [&](std::size_t pa, std::size_t pb, std::size_t c, std::size_t d) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      acc += rule.weights()[i] * rule.nodes()[i] *
             (pump_radial[pa][i] * pump_radial[pb][i] * mode_radial[c][i] * mode_radial[d][i]);
    }
    return kTwoPi * acc;
  };

  BiphotonAmplitudes out;
  out.subspace = subspace;
  out.beam = beam;
  out.representation = Representation::Position;
  const std::size_t n = modes.size();
  out.values.assign(n * n, complex{});
  out.methods.assign(n * n, EntryMethod::Overlap);

  parallel_for(n, [&](std::size_t row) {
    for (std::size_t col = row; col < n; ++col) {
      complex acc{};
      for (std::size_t a = 0; a < comps.size(); ++a) {
        for (std::size_t b = 0; b < comps.size(); ++b) {
          if (comps[a].mode.ell + comps[b].mode.ell != modes[row].ell + modes[col].ell) continue;
          acc += comps[a].coefficient * comps[b].coefficient * lambda(a, b, row, col);
        }
      }
      out.values[row * n + col] = acc;
    }
  });
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < row; ++col) out.values[row * n + col] = out.values[col * n + row];
  }
  out.normalize();
  return out;
}

}  // namespace fwm
