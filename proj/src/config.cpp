// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

#include "fwm/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace fwm {

using nlohmann::json;

namespace {

// Reads keys from one JSON object and rejects whatever is left unread.
class ObjectReader {
 public:
  ObjectReader(const json& doc, std::string where) : doc_(doc), where_(std::move(where)) {
    if (!doc_.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    seen_.insert(key);
    if (!doc_.contains(key)) return;
    try {
      out = doc_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(where_ + "." + key + ": wrong type");
    }
  }

  [[nodiscard]] const json* child(const std::string& key) {
    seen_.insert(key);
    return doc_.contains(key) ? &doc_.at(key) : nullptr;
  }

  void finish() const {
    for (const auto& [key, value] : doc_.items()) {
      if (!seen_.count(key)) throw ConfigError(where_ + ": unknown key '" + key + "'");
    }
  }

 private:
  const json& doc_;
  std::string where_;
  std::set<std::string> seen_;
};

template <typename Enum>
Enum parse_enum(const std::string& value, const std::vector<std::pair<std::string, Enum>>& table,
                const std::string& where) {
  for (const auto& [name, e] : table) {
    if (name == value) return e;
  }
  throw ConfigError(where + ": unsupported value '" + value + "'");
}

template <typename Enum>
std::string enum_name(Enum e, const std::vector<std::pair<std::string, Enum>>& table) {
  for (const auto& [name, v] : table) {
    if (v == e) return name;
  }
  return "unknown";
}

const std::vector<std::pair<std::string, Representation>> kReps{{"position", Representation::Position},
                                                                {"momentum", Representation::Momentum}};
const std::vector<std::pair<std::string, MomentumMethod>> kMethods{{"analytic", MomentumMethod::Analytic},
                                                                   {"quadrature", MomentumMethod::Quadrature}};
const std::vector<std::pair<std::string, DetectionKind>> kDetections{{"point", DetectionKind::PointPinholes},
                                                                     {"full_probe", DetectionKind::FullProbe}};
const std::vector<std::pair<std::string, OutputFormat>> kFormats{{"csv", OutputFormat::Csv},
                                                                 {"json", OutputFormat::Json}};
const std::vector<std::pair<std::string, SweepParameter>> kSweeps{{"length", SweepParameter::Length},
                                                                  {"waist", SweepParameter::Waist},
                                                                  {"ell_total", SweepParameter::EllTotal}};

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
  ExperimentConfig cfg;
  ObjectReader root(doc, "config");

  if (const auto* beam = root.child("beam")) {
    ObjectReader r(*beam, "beam");
    r.read("waist", cfg.waist);
    r.read("wavelength", cfg.wavelength);
    r.finish();
  }

  if (const auto* pump = root.child("pump")) {
    ObjectReader r(*pump, "pump");
    r.read("truncation", cfg.truncation);
    if (const auto* comps = r.child("components")) {
      require(comps->is_array(), "pump.components: expected an array");
      cfg.pump.clear();
      for (const auto& c : *comps) {
        ObjectReader cr(c, "pump.components[]");
        PumpComponent pc{{0, 0}, {0.0, 0.0}};
        double re = 0.0;
        double im = 0.0;
        cr.read("ell", pc.mode.ell);
        cr.read("q", pc.mode.p);
        cr.read("re", re);
        cr.read("im", im);
        cr.finish();
        pc.coefficient = {re, im};
        cfg.pump.push_back(pc);
      }
    }
    r.finish();
  }

  if (const auto* medium = root.child("medium")) {
    ObjectReader r(*medium, "medium");
    std::string type = "cell";
    r.read("type", type);
    if (type == "cell") {
      UniformCell cell{1e-3};
      r.read("length", cell.length);
      cfg.medium = cell;
    } else if (type == "cloud") {
      ColdCloud cloud{1e-3, 1e-3};
      r.read("transverse_radius", cloud.transverse_radius);
      r.read("longitudinal_length", cloud.longitudinal_length);
      cfg.medium = cloud;
    } else {
      throw ConfigError("medium.type: unsupported value '" + type + "'");
    }
    r.finish();
  }

  if (const auto* sub = root.child("subspace")) {
    ObjectReader r(*sub, "subspace");
    r.read("l_max", cfg.subspace.l_max);
    r.read("p_max", cfg.subspace.p_max);
    r.read("ell_center", cfg.subspace.ell_center);
    r.finish();
  }

  std::string rep = enum_name(cfg.representation, kReps);
  root.read("representation", rep);
  cfg.representation = parse_enum(rep, kReps, "representation");

  if (const auto* mom = root.child("momentum")) {
    ObjectReader r(*mom, "momentum");
    std::string method = enum_name(cfg.method, kMethods);
    r.read("method", method);
    cfg.method = parse_enum(method, kMethods, "momentum.method");
    auto& q = cfg.quadrature;
    r.read("radial_nodes", q.radial_nodes);
    r.read("radial_extent", q.radial_extent);
    r.read("azimuthal_nodes", q.azimuthal_nodes);
    r.read("z_nodes", q.z_nodes);
    r.read("series_tolerance", q.series_tolerance);
    r.read("series_cap", q.series_cap);
    r.read("convergence_tolerance", q.convergence_tolerance);
    r.read("check_convergence", q.check_convergence);
    r.finish();
  }

  if (const auto* det = root.child("detection")) {
    ObjectReader r(*det, "detection");
    std::string kind = enum_name(cfg.detection.kind, kDetections);
    r.read("type", kind);
    cfg.detection.kind = parse_enum(kind, kDetections, "detection.type");
    r.read("planes", cfg.detection.planes);
    if (const auto* extent = r.child("extent"); extent && !extent->is_null()) {
      if (!extent->is_number()) throw ConfigError("detection.extent: wrong type");
      cfg.detection.extent = extent->get<double>();
    }
    r.read("extent_widths", cfg.detection.extent_widths);
    r.read("samples", cfg.detection.samples);
    r.read("reference", cfg.detection.reference);
    r.finish();
  }

  if (const auto* sweep = root.child("sweep")) {
    ObjectReader r(*sweep, "sweep");
    std::string param = enum_name(cfg.sweep.parameter, kSweeps);
    r.read("parameter", param);
    cfg.sweep.parameter = parse_enum(param, kSweeps, "sweep.parameter");
    const bool has_values = sweep->contains("values");
    r.read("values", cfg.sweep.values);
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;
    std::string spacing = "linear";
    r.read("start", start);
    r.read("stop", stop);
    r.read("steps", steps);
    r.read("spacing", spacing);
    r.finish();
    const bool has_range = sweep->contains("steps");
    require(!(has_values && has_range), "sweep: give either values or start/stop/steps");
    if (has_range) {
      require(steps >= 1, "sweep.steps: must be at least 1");
      require(spacing == "linear" || spacing == "log", "sweep.spacing: expected linear or log");
      if (spacing == "log") require(start > 0.0 && stop > 0.0, "sweep: log spacing needs positive bounds");
      cfg.sweep.values.clear();
      for (int i = 0; i < steps; ++i) {
        const double t = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
        cfg.sweep.values.push_back(spacing == "log" ? start * std::pow(stop / start, t)
                                                    : start + (stop - start) * t);
      }
    }
  }

  if (const auto* out = root.child("output")) {
    ObjectReader r(*out, "output");
    r.read("directory", cfg.output_directory);
    std::string format = enum_name(cfg.format, kFormats);
    r.read("format", format);
    cfg.format = parse_enum(format, kFormats, "output.format");
    r.finish();
  }

  root.read("threads", cfg.threads);
  root.finish();
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return from_json(doc);
}

json ExperimentConfig::to_json() const {
  json doc;
  doc["beam"] = {{"waist", waist}, {"wavelength", wavelength}};
  json comps = json::array();
  for (const auto& c : pump) {
    comps.push_back({{"ell", c.mode.ell}, {"q", c.mode.p}, {"re", c.coefficient.real()}, {"im", c.coefficient.imag()}});
  }
  doc["pump"] = {{"components", comps}, {"truncation", truncation}};
  if (const auto* cell = std::get_if<UniformCell>(&medium)) {
    doc["medium"] = {{"type", "cell"}, {"length", cell->length}};
  } else {
    const auto& cloud = std::get<ColdCloud>(medium);
    doc["medium"] = {{"type", "cloud"},
                     {"transverse_radius", cloud.transverse_radius},
                     {"longitudinal_length", cloud.longitudinal_length}};
  }
  doc["subspace"] = {{"l_max", subspace.l_max}, {"p_max", subspace.p_max}, {"ell_center", subspace.ell_center}};
  doc["representation"] = enum_name(representation, kReps);
  doc["momentum"] = {{"method", enum_name(method, kMethods)},
                     {"radial_nodes", quadrature.radial_nodes},
                     {"radial_extent", quadrature.radial_extent},
                     {"azimuthal_nodes", quadrature.azimuthal_nodes},
                     {"z_nodes", quadrature.z_nodes},
                     {"series_tolerance", quadrature.series_tolerance},
                     {"series_cap", quadrature.series_cap},
                     {"convergence_tolerance", quadrature.convergence_tolerance},
                     {"check_convergence", quadrature.check_convergence}};
  doc["detection"] = {{"type", enum_name(detection.kind, kDetections)},
                      {"planes", detection.planes},
                      {"extent", detection.extent ? json(*detection.extent) : json(nullptr)},
                      {"extent_widths", detection.extent_widths},
                      {"samples", detection.samples},
                      {"reference", detection.reference}};
  doc["sweep"] = {{"parameter", enum_name(sweep.parameter, kSweeps)}, {"values", sweep.values}};
  doc["output"] = {{"directory", output_directory}, {"format", enum_name(format, kFormats)}};
  doc["threads"] = threads;
  return doc;
}

void ExperimentConfig::validate() const {
  require(positive(waist), "beam.waist must be positive");
  require(positive(wavelength), "beam.wavelength must be positive");
  require(!pump.empty(), "pump.components must not be empty");
  double norm = 0.0;
  std::set<ModeIndex> seen;
  for (const auto& c : pump) {
    require(c.mode.p >= 0, "pump.components[].q must be non-negative");
    require(seen.insert(c.mode).second, "pump.components has a duplicate mode");
    norm += std::norm(c.coefficient);
  }
  require(norm > 0.0 && std::isfinite(norm), "pump coefficients must not all vanish");
  require(truncation >= 0 && truncation <= 40, "pump.truncation must lie in [0, 40]");
  try {
    validate_medium(medium);
    quadrature.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  require(subspace.l_max >= 0 && subspace.l_max <= kMaxLMax, "subspace.l_max must lie in [0, 6]");
  require(subspace.p_max >= 0 && subspace.p_max <= kMaxPMax, "subspace.p_max must lie in [0, 8]");
  require(std::abs(subspace.ell_center) <= 2 * kMaxLMax, "subspace.ell_center out of range");
  for (double z : detection.planes) {
    require(std::isfinite(z), "detection.planes must be finite");
    require(z >= exit_plane() * (1.0 - 1e-12), "detection planes must lie outside the medium");
  }
  if (detection.extent) require(positive(*detection.extent), "detection.extent must be positive");
  require(positive(detection.extent_widths), "detection.extent_widths must be positive");
  require(detection.samples >= 2 && detection.samples <= 1024, "detection.samples must lie in [2, 1024]");
  for (double v : sweep.values) require(std::isfinite(v), "sweep values must be finite");
  if (sweep.parameter != SweepParameter::EllTotal) {
    for (double v : sweep.values) require(v > 0.0, "length and waist sweep values must be positive");
  } else {
    for (double v : sweep.values) {
      require(v == std::round(v) && static_cast<long>(v) % 2 == 0, "ell_total sweep values must be even integers");
    }
  }
  require(!output_directory.empty(), "output.directory must not be empty");
  require(threads >= 0 && threads <= 256, "threads must lie in [0, 256]");
}

PumpSpec ExperimentConfig::pump_spec() const { return PumpSpec::normalized(pump, beam()); }

ProductExpansion ExperimentConfig::expansion() const {
  const auto spec = pump_spec();
  if (const auto* cloud = std::get_if<ColdCloud>(&medium)) return cloud_modified_expansion(spec, *cloud, truncation);
  return square_pump_expansion(spec, truncation);
}

double ExperimentConfig::exit_plane() const {
  if (const auto* cell = std::get_if<UniformCell>(&medium)) return 0.5 * cell->length;
  return 2.0 * std::get<ColdCloud>(medium).longitudinal_length;
}

}  // namespace fwm
