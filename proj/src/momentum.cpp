// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

#include "fwm/momentum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <type_traits>
#include <variant>

#include "fwm/parallel.hpp"

namespace fwm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr int kTailRun = 10;
constexpr int kSmallRun = 3;

complex i_power(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double horner(const std::vector<double>& b, double x) {
  double acc = 0.0;
  for (auto it = b.rbegin(); it != b.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void check_beam(const ProductExpansion& expansion, const PhaseMatchKernel& kernel) {
  if (expansion.beam.waist() != kernel.beam().waist() ||
      expansion.beam.wavelength() != kernel.beam().wavelength()) {
    throw std::invalid_argument("pump expansion and kernel use different beams");
  }
}

// Waist-normalised window: z_hat = z / (4 k w0^2) and weights summing to 1.
struct UnitWindow {
  std::vector<double> kappa;
  std::vector<double> weight;
};

UnitWindow unit_window(const PhaseMatchKernel& kernel, int nodes) {
  const double scale = 1.0 / (4.0 * kernel.beam().wavenumber() * kernel.beam().waist() * kernel.beam().waist());
  UnitWindow out;
  for (const auto& node : kernel.window(nodes)) {
    out.kappa.push_back(node.z * scale);
    out.weight.push_back(node.weight);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Direct nested quadrature in waist units.
//
// With rho' rotated by psi relative to rho, the outer azimuth gives
// 2pi delta_{m, l_pr + l_s}, leaving
//   C~ = 2pi Int rho drho Int rho' drho' conj(R_pr(rho)) conj(R_s(rho')) F_{m, l_s}(rho, rho')
//   F_{m, l_s} = Int dpsi e^{-i l_s psi} S_m(rho, rho', psi)
//   S_m = sum_n a_mn K_mn(|rho_+|) (rho + rho' e^{i sgn(m) psi})^{|m|} Delta(|rho - rho'|)
class QuadratureEngine {
 public:
  QuadratureEngine(const ProductExpansion& expansion, const Subspace& subspace, const PhaseMatchKernel& kernel,
                   const QuadratureConfig& qcfg, int radial_nodes)
      : expansion_(expansion), subspace_(subspace), modes_(subspace.modes()) {
    radial_ = Rule::make({radial_nodes, 0.0, qcfg.radial_extent, RuleKind::RadialMomentum});
    azimuth_ = Rule::make(RuleSpec::azimuthal(qcfg.azimuthal_nodes));
    nr_ = radial_.size();
    np_ = azimuth_.size();
    const auto window = unit_window(kernel, qcfg.z_nodes);

    // Delta(|rho - rho'|) on the (rho, rho', psi) grid.
    delta_.assign(nr_ * nr_ * np_, complex{});
    parallel_for(nr_, [&](std::size_t i) {
      const double r1 = radial_.nodes()[i];
      for (std::size_t j = 0; j < nr_; ++j) {
        const double r2 = radial_.nodes()[j];
        for (std::size_t t = 0; t < np_; ++t) {
          const double q2 = r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * std::cos(azimuth_.nodes()[t]);
          complex acc{};
          for (std::size_t z = 0; z < window.kappa.size(); ++z) {
            acc += window.weight[z] * std::polar(1.0, -window.kappa[z] * q2);
          }
          delta_[(i * nr_ + j) * np_ + t] = acc;
        }
      }
    });

    for (const auto& m : modes_) {
      std::vector<complex> conj_radial;
      for (double r : radial_.nodes()) conj_radial.push_back(std::conj(unit::spectrum_radial(m, r)));
      mode_radial_.push_back(std::move(conj_radial));
    }
  }

  // Unnormalised entry in waist units (multiply by 1/w0 for SI).
  complex entry(std::size_t probe, std::size_t signal) {
    const int m = modes_[probe].ell + modes_[signal].ell;
    const auto& f = table(m, modes_[signal].ell);
    if (f.empty()) return {};
    const auto& rp = mode_radial_[probe];
    const auto& rs = mode_radial_[signal];
    complex acc{};
    for (std::size_t i = 0; i < nr_; ++i) {
      complex row{};
      for (std::size_t j = 0; j < nr_; ++j) {
        row += radial_.weights()[j] * radial_.nodes()[j] * rs[j] * f[i * nr_ + j];
      }
      acc += radial_.weights()[i] * radial_.nodes()[i] * rp[i] * row;
    }
    return kTwoPi * acc;
  }

  // Builds every F table the subspace needs; entry() is then read-only.
  void prepare() {
    for (const auto& pr : modes_) {
      for (const auto& s : modes_) table(pr.ell + s.ell, s.ell);
    }
  }

 private:
  const std::vector<complex>& table(int m, int ell_s) {
    const auto key = std::make_pair(m, ell_s);
    if (auto it = tables_.find(key); it != tables_.end()) return it->second;
    auto& f = tables_[key];
    const auto& s = source(m);
    if (s.empty()) return f;
    f.assign(nr_ * nr_, complex{});
    std::vector<complex> harmonic(np_);
    for (std::size_t t = 0; t < np_; ++t) {
      harmonic[t] = azimuth_.weights()[t] * std::polar(1.0, -ell_s * azimuth_.nodes()[t]);
    }
    parallel_for(nr_, [&](std::size_t i) {
      for (std::size_t j = 0; j < nr_; ++j) {
        complex acc{};
        const complex* row = &s[(i * nr_ + j) * np_];
        for (std::size_t t = 0; t < np_; ++t) acc += harmonic[t] * row[t];
        f[i * nr_ + j] = acc;
      }
    });
    return f;
  }

  const std::vector<complex>& source(int m) {
    if (auto it = sources_.find(m); it != sources_.end()) return it->second;
    auto& s = sources_[m];
    std::vector<std::pair<complex, std::vector<double>>> radial_terms;  // (a * prefactor, Laguerre coeffs)
    const int am = std::abs(m);
    for (const auto& term : expansion_.terms) {
      if (term.mode.ell != m) continue;
      const double pref = 0.5 * lg_normalization(term.mode) * std::pow(2.0, -0.5 * am);
      auto b = laguerre_coefficients(term.mode.p, am);
      radial_terms.emplace_back(term.a * pref * i_power(term.mode.order()), std::move(b));
    }
    if (radial_terms.empty()) return s;
    s.assign(nr_ * nr_ * np_, complex{});
    const double sigma = m >= 0 ? 1.0 : -1.0;
    parallel_for(nr_, [&](std::size_t i) {
      const double r1 = radial_.nodes()[i];
      for (std::size_t j = 0; j < nr_; ++j) {
        const double r2 = radial_.nodes()[j];
        for (std::size_t t = 0; t < np_; ++t) {
          const double psi = azimuth_.nodes()[t];
          const double plus2 = r1 * r1 + r2 * r2 + 2.0 * r1 * r2 * std::cos(psi);
          const double x = 0.5 * std::max(plus2, 0.0);
          complex k{};
          for (const auto& [coef, b] : radial_terms) k += coef * horner(b, x);
          k *= std::exp(-0.5 * x);
          const complex vortex = std::pow(complex(r1 + r2 * std::cos(psi), sigma * r2 * std::sin(psi)), am);
          const std::size_t idx = (i * nr_ + j) * np_ + t;
          s[idx] = k * vortex * delta_[idx];
        }
      }
    });
    return s;
  }

  const ProductExpansion& expansion_;
  Subspace subspace_;
  std::vector<ModeIndex> modes_;
  Rule radial_;
  Rule azimuth_;
  std::size_t nr_ = 0;
  std::size_t np_ = 0;
  std::vector<complex> delta_;
  std::vector<std::vector<complex>> mode_radial_;
  std::map<int, std::vector<complex>> sources_;
  std::map<std::pair<int, int>, std::vector<complex>> tables_;
};

BiphotonAmplitudes make_tensor(const Subspace& subspace, const BeamGeometry& beam, EntryMethod method) {
  BiphotonAmplitudes out;
  out.subspace = subspace;
  out.beam = beam;
  out.representation = Representation::Momentum;
  const std::size_t n = subspace.one_photon_count();
  out.values.assign(n * n, complex{});
  out.methods.assign(n * n, method);
  return out;
}

BiphotonAmplitudes run_quadrature(const ProductExpansion& expansion, const Subspace& subspace,
                                  const PhaseMatchKernel& kernel, const QuadratureConfig& qcfg, int radial_nodes) {
  QuadratureEngine engine(expansion, subspace, kernel, qcfg, radial_nodes);
  engine.prepare();
  auto out = make_tensor(subspace, kernel.beam(), EntryMethod::Quadrature);
  const std::size_t n = out.side();
  const double scale = 1.0 / kernel.beam().waist();
  parallel_for(n, [&](std::size_t row) {
    for (std::size_t col = row; col < n; ++col) out.values[row * n + col] = scale * engine.entry(row, col);
  });
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < row; ++col) out.values[row * n + col] = out.values[col * n + row];
  }
  out.normalize();
  return out;
}

// ---------------------------------------------------------------------------
// Closed nested sums in waist units.

struct SeriesResult {
  complex value;
  bool converged;
};

// Y = sum_g tau_{g,nu} beta^{2g+nu} Gamma((P+2g+nu+1)/2) Gamma((Q+2g+nu+1)/2)
//         / (4 alpha^{(P+Q)/2 + 1 + 2g + nu})
// with tau_{g,nu} = (-1)^g 2^{-2g-nu} / (g! (g+nu)!). P and Q include the
// Jacobian power.
SeriesResult bessel_series(int P, int Q, int nu, complex alpha, complex beta, const QuadratureConfig& qcfg) {
  const complex log_alpha = std::log(alpha);
  const complex log_beta = std::log(beta);
  const int tail_start = (P + Q + nu) / 2;
  complex sum{};
  int small_run = 0;
  int rising_run = 0;
  double previous = -1.0;
  for (int g = 0; g < qcfg.series_cap; ++g) {
    const int e = 2 * g + nu;
    const double log_real = -e * std::log(2.0) - std::lgamma(g + 1.0) - std::lgamma(g + nu + 1.0) +
                            std::lgamma(0.5 * (P + e + 1)) + std::lgamma(0.5 * (Q + e + 1)) - std::log(4.0);
    const complex log_term = log_real + static_cast<double>(e) * log_beta -
                             (0.5 * (P + Q) + 1.0 + e) * log_alpha;
    complex term = std::exp(log_term);
    if (g % 2 == 1) term = -term;
    sum += term;
    const double mag = std::abs(term);
    if (!std::isfinite(mag)) return {sum, false};
    if (mag < qcfg.series_tolerance * std::abs(sum)) {
      if (++small_run >= kSmallRun) return {sum, true};
    } else {
      small_run = 0;
    }
    if (g >= tail_start && previous >= 0.0 && mag >= previous) {
      if (++rising_run >= kTailRun) return {sum, false};
    } else {
      rising_run = 0;
    }
    previous = mag;
  }
  return {sum, false};
}

class AnalyticEngine {
 public:
  AnalyticEngine(const ProductExpansion& expansion, const PhaseMatchKernel& kernel, const QuadratureConfig& qcfg)
      : expansion_(expansion), qcfg_(qcfg), window_(unit_window(kernel, qcfg.z_nodes)) {}

  // Unnormalised entry in waist units, or nullopt when a series fails.
  std::optional<complex> entry(ModeIndex pr, ModeIndex s) {
    const int m = pr.ell + s.ell;
    complex total{};
    bool any = false;
    for (const auto& term : expansion_.terms) {
      if (term.mode.ell != m) continue;
      any = true;
      complex integrated{};
      for (std::size_t z = 0; z < window_.kappa.size(); ++z) {
        const auto t = tensor(pr, s, term.mode, z);
        if (!t) return std::nullopt;
        integrated += window_.weight[z] * *t;
      }
      total += term.a * integrated;
    }
    if (!any) return complex{};
    return total;
  }

 private:
  // T(z) for one expansion mode (m, n) in waist units.
  std::optional<complex> tensor(ModeIndex pr, ModeIndex s, ModeIndex mn, std::size_t zi) {
    const int l1 = std::abs(pr.ell);
    const int l2 = std::abs(s.ell);
    const int am = std::abs(mn.ell);
    const int sigma = mn.ell >= 0 ? 1 : -1;
    const auto b1 = laguerre_coefficients(pr.p, l1);
    const auto b2 = laguerre_coefficients(s.p, l2);
    const auto bm = laguerre_coefficients(mn.p, am);

    complex sum{};
    for (int j = 0; j <= pr.p; ++j) {
      const double c1 = b1[static_cast<std::size_t>(j)] * std::ldexp(1.0, -j);
      for (int k = 0; k <= s.p; ++k) {
        const double c2 = b2[static_cast<std::size_t>(k)] * std::ldexp(1.0, -k);
        for (int l = 0; l <= mn.p; ++l) {
          const double c3 = bm[static_cast<std::size_t>(l)] * std::ldexp(1.0, -l);
          for (int v = 0; v <= am; ++v) {
            const double c4 = binomial(am, v);
            for (int u = 0; u <= l; ++u) {
              for (int f = 0; f <= l - u; ++f) {
                const double c5 = binomial(l, u) * binomial(l - u, f);
                for (int d = 0; d <= u; ++d) {
                  const int a = sigma * v + u - 2 * d - s.ell;
                  const int nu = std::abs(a);
                  const int P = l1 + 1 + 2 * j + (am - v) + 2 * (l - u - f) + u;
                  const int Q = l2 + 1 + 2 * k + v + 2 * f + u;
                  const auto y = series(P, Q, nu, zi);
                  if (!y) return std::nullopt;
                  const double coeff = c1 * c2 * c3 * c4 * c5 * binomial(u, d);
                  sum += coeff * i_power(-nu) * *y;
                }
              }
            }
          }
        }
      }
    }
    const double norm = lg_normalization(pr) * lg_normalization(s) * lg_normalization(mn) / 8.0 *
                        std::pow(2.0, -0.5 * (l1 + l2 + am));
    const complex phase = i_power(mn.order() - pr.order() - s.order());
    return kTwoPi * kTwoPi * norm * phase * sum;
  }

  std::optional<complex> series(int P, int Q, int nu, std::size_t zi) {
    const auto key = std::make_tuple(P, Q, nu, zi);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const double kappa = window_.kappa[zi];
    const complex alpha(0.5, kappa);
    const complex beta(-2.0 * kappa, -0.5);
    const auto r = bessel_series(P, Q, nu, alpha, beta, qcfg_);
    std::optional<complex> out;
    if (r.converged) out = r.value;
    cache_.emplace(key, out);
    return out;
  }

  const ProductExpansion& expansion_;
  QuadratureConfig qcfg_;
  UnitWindow window_;
  std::map<std::tuple<int, int, int, std::size_t>, std::optional<complex>> cache_;
};

}  // namespace

void QuadratureConfig::validate() const {
  if (radial_nodes < 8 || azimuthal_nodes < 8 || z_nodes < 8) {
    throw std::invalid_argument("quadrature node counts must be at least 8");
  }
  if (!(radial_extent >= 8.0)) throw std::invalid_argument("radial truncation must be at least 8/w0");
  if (!(series_tolerance > 0.0) || series_cap < 1) throw std::invalid_argument("invalid series controls");
  if (!(convergence_tolerance > 0.0)) throw std::invalid_argument("convergence tolerance must be positive");
}

PhaseMatchKernel::PhaseMatchKernel(BeamGeometry beam, MediumGeometry medium)
    : beam_(beam), medium_(medium) {
  validate_medium(medium_);
}

complex PhaseMatchKernel::alpha_plus_sq(double z) const {
  return {beam_.waist() * beam_.waist() / 8.0, z / (4.0 * beam_.wavenumber())};
}

complex PhaseMatchKernel::alpha_minus_sq(double z) const { return std::conj(alpha_plus_sq(z)); }

std::vector<WindowNode> PhaseMatchKernel::window(int nodes) const {
  std::vector<WindowNode> out;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, UniformCell>) {
          const Rule rule = Rule::make({nodes, -0.5 * m.length, 0.5 * m.length, RuleKind::Longitudinal});
          for (std::size_t i = 0; i < rule.size(); ++i) {
            out.push_back({rule.nodes()[i], rule.weights()[i] / m.length});
          }
        } else {
          const double ll = m.longitudinal_length;
          const Rule rule = Rule::make({nodes, -2.0 * ll, 2.0 * ll, RuleKind::Longitudinal});
          double total = 0.0;
          for (std::size_t i = 0; i < rule.size(); ++i) {
            const double z = rule.nodes()[i];
            const double w = rule.weights()[i] * std::exp(-4.0 * z * z / (ll * ll));
            out.push_back({z, w});
            total += w;
          }
          for (auto& node : out) node.weight /= total;
        }
      },
      medium_);
  return out;
}

complex PhaseMatchKernel::phase_matching(double q) const {
  const double k = beam_.wavenumber();
  return std::visit(
      [&](const auto& m) -> complex {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, UniformCell>) {
          const double x = m.length * q * q / (8.0 * k);
          return x == 0.0 ? 1.0 : std::sin(x) / x;
        } else {
          const double x = q * q * m.longitudinal_length / (16.0 * k);
          return std::exp(-x * x);
        }
      },
      medium_);
}

complex PhaseMatchKernel::phase_matching_quadrature(double q, int nodes) const {
  complex acc{};
  const double k = beam_.wavenumber();
  for (const auto& node : window(nodes)) acc += node.weight * std::polar(1.0, -node.z * q * q / (4.0 * k));
  return acc;
}

double PhaseMatchKernel::transverse_waist() const {
  if (const auto* cloud = std::get_if<ColdCloud>(&medium_)) {
    return effective_waist(beam_.waist(), cloud->transverse_radius);
  }
  return beam_.waist();
}

complex biphoton_kernel(Wavevector rho_pr, Wavevector rho_s, const PhaseMatchKernel& kernel) {
  const double w = kernel.transverse_waist();
  const double sx = rho_pr.x + rho_s.x;
  const double sy = rho_pr.y + rho_s.y;
  const double q = std::hypot(rho_pr.x - rho_s.x, rho_pr.y - rho_s.y);
  return std::exp(-w * w * (sx * sx + sy * sy) / 8.0) / kTwoPi * kernel.phase_matching(q);
}

complex biphoton_kernel(Wavevector rho_pr, Wavevector rho_s, const PhaseMatchKernel& kernel,
                        const ProductExpansion& expansion) {
  check_beam(expansion, kernel);
  const double sx = rho_pr.x + rho_s.x;
  const double sy = rho_pr.y + rho_s.y;
  const double rho = std::hypot(sx, sy);
  const double varphi = std::atan2(sy, sx);
  complex v{};
  for (const auto& t : expansion.terms) v += t.a * lg_spectrum(t.mode, expansion.beam, rho, varphi);
  const double q = std::hypot(rho_pr.x - rho_s.x, rho_pr.y - rho_s.y);
  return v * kernel.phase_matching(q);
}

BiphotonAmplitudes amplitudes_momentum_quadrature(const ProductExpansion& expansion, const Subspace& subspace,
                                                  const PhaseMatchKernel& kernel, const QuadratureConfig& qcfg) {
  subspace.validate();
  qcfg.validate();
  check_beam(expansion, kernel);
  auto out = run_quadrature(expansion, subspace, kernel, qcfg, qcfg.radial_nodes);
  if (qcfg.check_convergence) {
    const auto fine = run_quadrature(expansion, subspace, kernel, qcfg, 2 * qcfg.radial_nodes);
    double change = 0.0;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
      change = std::max(change, std::abs(out.values[i] - fine.values[i]));
    }
    out.doubling_change = change;
    if (change > qcfg.convergence_tolerance) {
      throw ConvergenceError("momentum quadrature not converged: doubling radial nodes changed an entry by " +
                             std::to_string(change));
    }
  }
  return out;
}

BiphotonAmplitudes amplitudes_momentum_analytic(const ProductExpansion& expansion, const Subspace& subspace,
                                                const PhaseMatchKernel& kernel, const QuadratureConfig& qcfg) {
  subspace.validate();
  qcfg.validate();
  check_beam(expansion, kernel);
  const auto modes = subspace.modes();
  const std::size_t n = modes.size();
  auto out = make_tensor(subspace, kernel.beam(), EntryMethod::Analytic);
  std::vector<char> failed(n * n, 0);
  const double scale = 1.0 / kernel.beam().waist();

  parallel_for(n, [&](std::size_t row) {
    AnalyticEngine engine(expansion, kernel, qcfg);
    for (std::size_t col = row; col < n; ++col) {
      const auto v = engine.entry(modes[row], modes[col]);
      if (v) {
        out.values[row * n + col] = scale * *v;
      } else {
        failed[row * n + col] = 1;
      }
    }
  });

  const bool any_failed = std::find(failed.begin(), failed.end(), 1) != failed.end();
  if (any_failed) {
    QuadratureEngine fallback(expansion, subspace, kernel, qcfg, qcfg.radial_nodes);
    fallback.prepare();
    for (std::size_t row = 0; row < n; ++row) {
      for (std::size_t col = row; col < n; ++col) {
        if (!failed[row * n + col]) continue;
        out.values[row * n + col] = scale * fallback.entry(row, col);
        out.methods[row * n + col] = EntryMethod::QuadratureFallback;
      }
    }
  }
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < row; ++col) {
      out.values[row * n + col] = out.values[col * n + row];
      out.methods[row * n + col] = out.methods[col * n + row];
    }
  }
  out.normalize();
  return out;
}

double trace_distance(const BiphotonAmplitudes& a, const BiphotonAmplitudes& b) {
  if (!(a.subspace == b.subspace)) throw std::invalid_argument("trace distance needs a common subspace");
  if (!a.normalized || !b.normalized) throw std::invalid_argument("trace distance needs normalised tensors");
  complex overlap{};
  for (std::size_t i = 0; i < a.values.size(); ++i) overlap += std::conj(a.values[i]) * b.values[i];
  return std::sqrt(std::max(0.0, 1.0 - std::norm(overlap)));
}

}  // namespace fwm
