// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: reads an experiment config, runs one computation
// and writes its data files. Exit codes: 0 success, 2 config error,
// 3 convergence failure, 1 anything else.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fwm/amplitudes.hpp"
#include "fwm/config.hpp"
#include "fwm/correlations.hpp"
#include "fwm/entanglement.hpp"
#include "fwm/io.hpp"
#include "fwm/momentum.hpp"
#include "fwm/parallel.hpp"

namespace {

using fwm::ExperimentConfig;
using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;

struct Options {
  std::string config_path;
  std::string rep;
  std::string out;
  std::string format;
  std::optional<int> threads;
  bool print_config = false;
};

class Emitter {
 public:
  // Thread count and output directory do not change results, so they stay
  // out of the embedded config and reruns produce identical files.
  explicit Emitter(const ExperimentConfig& cfg) : cfg_(cfg), config_json_(cfg.to_json()) {
    config_json_.erase("threads");
    config_json_["output"].erase("directory");
  }

  void table(const std::string& stem, const fwm::Table& t, const json& metadata) {
    if (cfg_.format == fwm::OutputFormat::Csv) {
      files_.push_back({stem + ".csv", fwm::render_csv(t, config_json_, metadata)});
    } else {
      files_.push_back({stem + ".json", fwm::render_json(t, config_json_, metadata)});
    }
  }

  void grid(const std::string& stem, const fwm::Grid2D& g, const json& metadata) {
    if (cfg_.format == fwm::OutputFormat::Csv) {
      files_.push_back({stem + ".csv", fwm::render_grid_csv(g, config_json_, metadata)});
    } else {
      files_.push_back({stem + ".json", fwm::render_grid_json(g, config_json_, metadata)});
    }
  }

  void flush() const { fwm::write_outputs(cfg_.output_directory, files_); }

 private:
  const ExperimentConfig& cfg_;
  json config_json_;
  std::vector<fwm::OutputFile> files_;
};

double zeta(const ExperimentConfig& cfg) {
  const double zr = cfg.beam().rayleigh_range();
  if (const auto* cell = std::get_if<fwm::UniformCell>(&cfg.medium)) return cell->length / zr;
  return std::get<fwm::ColdCloud>(cfg.medium).longitudinal_length / zr;
}

fwm::BiphotonAmplitudes momentum_amplitudes(const ExperimentConfig& cfg) {
  const auto expansion = cfg.expansion();
  const auto kernel = cfg.kernel();
  if (cfg.method == fwm::MomentumMethod::Analytic) {
    return fwm::amplitudes_momentum_analytic(expansion, cfg.subspace, kernel, cfg.quadrature);
  }
  return fwm::amplitudes_momentum_quadrature(expansion, cfg.subspace, kernel, cfg.quadrature);
}

fwm::BiphotonAmplitudes amplitudes(const ExperimentConfig& cfg) {
  if (cfg.representation == fwm::Representation::Momentum) return momentum_amplitudes(cfg);
  return fwm::coincidence_amplitudes_position(cfg.pump_spec(), cfg.subspace);
}

json amplitude_metadata(const fwm::BiphotonAmplitudes& amps) {
  json meta{{"representation", fwm::to_string(amps.representation)},
            {"normalized", amps.normalized},
            {"norm_squared", amps.norm_squared()},
            {"flagged_entries", amps.flagged_count()}};
  meta["doubling_change"] = amps.doubling_change ? json(*amps.doubling_change) : json(nullptr);
  return meta;
}

json entanglement_report(const fwm::BiphotonAmplitudes& amps) {
  const auto dist = fwm::oam_distribution(amps);
  const auto purity = fwm::purity_and_schmidt(amps);
  double lt = 0.0;
  for (const auto& [key, p] : dist.joint) lt += (key.first + key.second) * p;
  return {{"sbw", fwm::spiral_bandwidth(dist)},
          {"entropy_bits", fwm::entanglement_entropy(dist)},
          {"purity", purity.purity},
          {"schmidt_k", purity.schmidt_k},
          {"lT", lt},
          {"subspace", {{"l_max", amps.subspace.l_max}, {"p_max", amps.subspace.p_max},
                        {"ell_center", amps.subspace.ell_center}}}};
}

void run_modes(const ExperimentConfig& cfg, Emitter& out) {
  const auto beam = cfg.beam();
  std::vector<double> planes = cfg.detection.planes;
  if (planes.empty()) planes.push_back(0.0);
  fwm::Table t;
  t.columns = {"ell", "p", "z", "x", "re", "im"};
  for (const auto& m : cfg.subspace.modes()) {
    for (double z : planes) {
      const double extent = cfg.detection.extent.value_or(cfg.detection.extent_widths * beam.width_at(z));
      const auto axis = fwm::Grid2D::make(extent, extent, static_cast<std::size_t>(cfg.detection.samples), 2);
      for (std::size_t i = 0; i < axis.nx; ++i) {
        const auto v = fwm::lg_mode(m, beam, fwm::PolarPoint::from_cartesian(axis.x(i), 0.0, z));
        t.rows.push_back({static_cast<long long>(m.ell), static_cast<long long>(m.p), z, axis.x(i), v.real(),
                          v.imag()});
      }
    }
  }
  out.table("modes", t, {{"rayleigh_range", beam.rayleigh_range()}, {"wavenumber", beam.wavenumber()}});
}

void run_pump_expand(const ExperimentConfig& cfg, Emitter& out) {
  const auto e = cfg.expansion();
  json meta{{"g", e.g}, {"fidelity", e.fidelity}, {"total_norm", e.total_norm}};
  if (const auto* cloud = std::get_if<fwm::ColdCloud>(&cfg.medium)) {
    meta["effective_waist"] = fwm::effective_waist(cfg.waist, cloud->transverse_radius);
  }
  out.table("pump_expansion", fwm::expansion_table(e), meta);
}

void run_amplitudes(const ExperimentConfig& cfg, Emitter& out) {
  const auto amps = amplitudes(cfg);
  out.table("amplitudes", fwm::amplitude_table(amps), amplitude_metadata(amps));
}

void run_entanglement(const ExperimentConfig& cfg, Emitter& out) {
  const auto amps = amplitudes(cfg);
  auto report = entanglement_report(amps);
  const double z = zeta(cfg);
  report["zeta"] = z;
  report["k_gaussian"] = fwm::schmidt_gaussian(z);
  fwm::Table t;
  t.columns = {"quantity", "value"};
  for (const char* key : {"sbw", "entropy_bits", "purity", "schmidt_k", "lT", "zeta", "k_gaussian"}) {
    t.rows.push_back({std::string(key), report[key].get<double>()});
  }
  out.table("entanglement", t, report);
}

void run_g2(const ExperimentConfig& cfg, Emitter& out) {
  const auto amps = amplitudes(cfg);
  const auto beam = cfg.beam();
  std::vector<double> planes = cfg.detection.planes;
  if (planes.empty()) planes.push_back(cfg.exit_plane());
  const auto n = static_cast<std::size_t>(cfg.detection.samples);
  std::optional<fwm::Grid2D> reference;
  for (std::size_t k = 0; k < planes.size(); ++k) {
    const double z = planes[k];
    const double extent = cfg.detection.extent.value_or(cfg.detection.extent_widths * beam.width_at(z));
    const auto grid = fwm::Grid2D::make(extent, extent, n, n);
    json meta{{"z", z}, {"z_over_rayleigh", z / beam.rayleigh_range()}};
    if (cfg.detection.kind == fwm::DetectionKind::PointPinholes) {
      const auto map = fwm::g2_point_detector_map(amps, grid, z);
      meta["detection"] = "point";
      meta["pearson"] = fwm::pearson_sign(map);
      out.grid("g2_plane" + std::to_string(k), map, meta);
    } else {
      const auto map = fwm::g2_full_probe_map(amps, grid, z);
      meta["detection"] = "full_probe";
      if (cfg.detection.reference) {
        const auto ref = fwm::pump_transfer_reference(cfg.pump_spec(), grid);
        meta["cross_correlation"] = fwm::normalized_cross_correlation(map, ref);
        if (!reference) reference = ref;
      }
      out.grid("g2_plane" + std::to_string(k), map, meta);
    }
  }
  if (reference) out.grid("g2_reference", *reference, {{"quantity", "pump_intensity_squared"}});
}

void run_distance(const ExperimentConfig& cfg, Emitter& out) {
  const auto pos = fwm::coincidence_amplitudes_position(cfg.pump_spec(), cfg.subspace);
  const auto mom = momentum_amplitudes(cfg);
  const double d = fwm::trace_distance(pos, mom);
  fwm::Table t;
  t.columns = {"zeta", "trace_distance", "flagged_entries"};
  t.rows.push_back({zeta(cfg), d, static_cast<long long>(mom.flagged_count())});
  out.table("distance", t, amplitude_metadata(mom));
}

void run_sweep(const ExperimentConfig& cfg, Emitter& out) {
  if (cfg.sweep.values.empty()) throw fwm::ConfigError("sweep needs at least one value");
  fwm::Table t;
  if (cfg.sweep.parameter == fwm::SweepParameter::EllTotal) {
    t.columns = {"lT", "sbw", "entropy_bits", "purity", "schmidt_k"};
    for (double v : cfg.sweep.values) {
      const int lt = static_cast<int>(std::lround(v));
      auto local = cfg;
      local.pump = {{{lt / 2, 0}, {1.0, 0.0}}};
      local.subspace.ell_center = lt / 2;
      const auto rep = entanglement_report(amplitudes(local));
      t.rows.push_back({static_cast<long long>(lt), rep["sbw"].get<double>(), rep["entropy_bits"].get<double>(),
                        rep["purity"].get<double>(), rep["schmidt_k"].get<double>()});
    }
  } else {
    t.columns = {"length", "waist", "zeta", "trace_distance", "sbw", "entropy_bits", "purity", "schmidt_k",
                 "k_gaussian", "flagged_entries"};
    for (double v : cfg.sweep.values) {
      auto local = cfg;
      if (cfg.sweep.parameter == fwm::SweepParameter::Waist) {
        local.waist = v;
      } else if (auto* cell = std::get_if<fwm::UniformCell>(&local.medium)) {
        cell->length = v;
      } else {
        std::get<fwm::ColdCloud>(local.medium).longitudinal_length = v;
      }
      local.validate();
      const auto pos = fwm::coincidence_amplitudes_position(local.pump_spec(), local.subspace);
      const auto mom = momentum_amplitudes(local);
      const auto rep = entanglement_report(mom);
      const double z = zeta(local);
      const double length = z * local.beam().rayleigh_range();
      t.rows.push_back({length, local.waist, z, fwm::trace_distance(pos, mom), rep["sbw"].get<double>(),
                        rep["entropy_bits"].get<double>(), rep["purity"].get<double>(),
                        rep["schmidt_k"].get<double>(), fwm::schmidt_gaussian(z),
                        static_cast<long long>(mom.flagged_count())});
    }
  }
  out.table("sweep", t, {{"points", cfg.sweep.values.size()}});
}

ExperimentConfig resolve(const Options& opt) {
  auto cfg = opt.config_path.empty() ? ExperimentConfig::from_json(json::object())
                                     : ExperimentConfig::from_file(opt.config_path);
  auto doc = cfg.to_json();
  if (!opt.rep.empty()) doc["representation"] = opt.rep;
  if (!opt.out.empty()) doc["output"]["directory"] = opt.out;
  if (!opt.format.empty()) doc["output"]["format"] = opt.format;
  if (opt.threads) doc["threads"] = *opt.threads;
  return ExperimentConfig::from_json(doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biphoton states from four-wave mixing with structured pumps"};
  Options opt;
  app.add_option("--config", opt.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("--rep", opt.rep, "Representation override")->check(CLI::IsMember({"position", "momentum"}));
  app.add_option("--out", opt.out, "Output directory override");
  app.add_option("--format", opt.format, "Output format override")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", opt.threads, "Worker threads (0 = hardware)");
  app.add_flag("--print-config", opt.print_config, "Print the resolved config and exit");

  using Runner = void (*)(const ExperimentConfig&, Emitter&);
  const std::vector<std::tuple<std::string, std::string, Runner>> commands{
      {"modes", "Sample LG modes of the subspace along x", run_modes},
      {"pump-expand", "Expand the squared pump in LG modes", run_pump_expand},
      {"amplitudes", "Coincidence amplitude tensor", run_amplitudes},
      {"entanglement", "SBW, entropy, purity and Schmidt numbers", run_entanglement},
      {"g2", "Coincidence maps at the detection planes", run_g2},
      {"distance", "Trace distance between representations", run_distance},
      {"sweep", "Sweep length, waist or total OAM", run_sweep},
  };
  for (const auto& [name, help, runner] : commands) app.add_subcommand(name, help)->fallthrough();
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  std::string command;
  Runner runner = nullptr;
  for (const auto& [name, help, r] : commands) {
    if (app.got_subcommand(name)) {
      command = name;
      runner = r;
    }
  }

  try {
    const auto cfg = resolve(opt);
    if (opt.print_config) {
      std::cout << cfg.to_json().dump(2) << "\n";
      return 0;
    }
    if (!runner) {
      std::cerr << "no command given; see --help\n";
      return kExitConfig;
    }
    fwm::set_thread_count(cfg.threads);
    Emitter emitter(cfg);
    runner(cfg, emitter);
    emitter.flush();
    fwm::append_run_log(cfg.output_directory, command + " ok");
    return 0;
  } catch (const fwm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const fwm::ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
