// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

#include "fwm/entanglement.hpp"

#include <cmath>
#include <stdexcept>

namespace fwm {

std::map<int, double> OamDistribution::probe_marginal() const {
  std::map<int, double> out;
  for (const auto& [key, p] : joint) out[key.first] += p;
  return out;
}

double OamDistribution::total() const {
  double acc = 0.0;
  for (const auto& [key, p] : joint) acc += p;
  return acc;
}

OamDistribution oam_distribution(const BiphotonAmplitudes& amps) {
  const auto modes = amps.subspace.modes();
  const std::size_t n = modes.size();
  OamDistribution dist;
  double total = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double p = std::norm(amps.at(a, b));
      dist.joint[{modes[a].ell, modes[b].ell}] += p;
      total += p;
    }
  }
  if (!(total > 0.0)) throw std::domain_error("OAM distribution of a vanishing tensor");
  for (auto it = dist.joint.begin(); it != dist.joint.end();) {
    if (it->second == 0.0) {
      it = dist.joint.erase(it);
    } else {
      it->second /= total;
      ++it;
    }
  }
  return dist;
}

double spiral_bandwidth(const OamDistribution& dist) {
  double mean = 0.0;
  double second = 0.0;
  for (const auto& [l, p] : dist.probe_marginal()) {
    mean += l * p;
    second += static_cast<double>(l) * l * p;
  }
  return std::sqrt(std::max(0.0, second - mean * mean));
}

double entanglement_entropy(const OamDistribution& dist) {
  double s = 0.0;
  for (const auto& [key, p] : dist.joint) {
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s;
}

PurityReport purity_and_schmidt(const BiphotonAmplitudes& amps) {
  // sum C(a,b) C(a',b)^* C(a',b') C(a,b')^* with the inner signal sums
  // factored: X(a,a') = sum_b C(a,b) C(a',b)^*, purity = sum X(a,a') X(a',a).
  const std::size_t n = amps.side();
  const double n2 = amps.norm_squared();
  if (!(n2 > 0.0)) throw std::domain_error("purity of a vanishing tensor");
  std::vector<complex> x(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t ap = 0; ap < n; ++ap) {
      complex acc{};
      for (std::size_t b = 0; b < n; ++b) acc += amps.at(a, b) * std::conj(amps.at(ap, b));
      x[a * n + ap] = acc;
    }
  }
  complex total{};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t ap = 0; ap < n; ++ap) total += x[a * n + ap] * x[ap * n + a];
  }
  const double purity = total.real() / (n2 * n2);
  return {purity, 1.0 / purity};
}

double schmidt_gaussian(double zeta, double gamma) {
  if (!(zeta > 0.0) || !std::isfinite(zeta)) throw std::invalid_argument("zeta must be positive");
  const double g2 = gamma * gamma;
  const double t = std::sqrt(zeta) + (2.0 / g2) / std::sqrt(zeta);
  return g2 / 8.0 * t * t;
}

}  // namespace fwm
