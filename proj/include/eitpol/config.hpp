#ifndef EITPOL_CONFIG_HPP
#define EITPOL_CONFIG_HPP

// JSON run configuration. Every dimensional value is a string with an explicit
// unit ("80 MHz", "15 mW", "55 C", "1.8e11 cm^-3", "5 cm", "10 G"); bare
// numbers are rejected for those keys. RunSpec keeps each value in one fixed
// display unit so that the echoed configuration parses back to an equal RunSpec.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "eitpol/atomic_model.hpp"
#include "eitpol/errors.hpp"
#include "eitpol/scenarios.hpp"

namespace eitpol {

using json = nlohmann::ordered_json;

enum class Scenario { spectrum, power_scan, temp_scan, eit_peaks, detector_trace, populations };

inline std::string_view to_string(Scenario s)
{
  switch (s) {
    case Scenario::spectrum: return "spectrum";
    case Scenario::power_scan: return "power-scan";
    case Scenario::temp_scan: return "temp-scan";
    case Scenario::eit_peaks: return "eit-peaks";
    case Scenario::detector_trace: return "detector-trace";
    case Scenario::populations: return "populations";
  }
  return "?";
}

inline std::optional<Scenario> parse_scenario(std::string_view s)
{
  for (auto x : {Scenario::spectrum, Scenario::power_scan, Scenario::temp_scan, Scenario::eit_peaks,
                 Scenario::detector_trace, Scenario::populations})
    if (to_string(x) == s) return x;
  return std::nullopt;
}

//
// Units
//

enum class Dimension { frequency, power, temperature, density, length, wavelength, magnetic_field };

struct UnitTable {
  std::string_view canonical;
  std::vector<std::pair<std::string_view, double>> factors;  ///< unit -> multiplier into canonical
};

inline const UnitTable& unit_table(Dimension d)
{
  static const UnitTable frequency{"MHz", {{"Hz", 1e-6}, {"kHz", 1e-3}, {"MHz", 1.0}, {"GHz", 1e3}}};
  static const UnitTable power{"mW", {{"W", 1e3}, {"mW", 1.0}, {"uW", 1e-3}, {"nW", 1e-6}}};
  static const UnitTable temperature{"K", {{"K", 1.0}, {"C", 1.0}}};
  static const UnitTable density{"cm^-3", {{"cm^-3", 1.0}, {"m^-3", 1e-6}}};
  static const UnitTable length{"cm", {{"m", 1e2}, {"cm", 1.0}, {"mm", 1e-1}}};
  static const UnitTable wavelength{"nm", {{"m", 1e9}, {"um", 1e3}, {"nm", 1.0}}};
  static const UnitTable field{"G", {{"T", 1e4}, {"mT", 10.0}, {"G", 1.0}, {"mG", 1e-3}}};
  switch (d) {
    case Dimension::frequency: return frequency;
    case Dimension::power: return power;
    case Dimension::temperature: return temperature;
    case Dimension::density: return density;
    case Dimension::length: return length;
    case Dimension::wavelength: return wavelength;
    case Dimension::magnetic_field: return field;
  }
  return frequency;
}

inline std::string format_number(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// "<number> <unit>" -> value in the dimension's canonical unit.
inline double parse_quantity(const json& value, Dimension dim, const std::string& key)
{
  const auto& table = unit_table(dim);
  if (!value.is_string())
    throw ConfigError("key " + key + " needs a value with an explicit unit, e.g. \"1 " +
                      std::string(table.canonical) + "\"");
  const std::string text = value.get<std::string>();
  const char* begin = text.c_str();
  char* end = nullptr;
  const double number = std::strtod(begin, &end);
  if (end == begin || !std::isfinite(number))
    throw ConfigError("key " + key + ": cannot read a number from \"" + text + "\"");
  std::string unit(end);
  unit.erase(0, unit.find_first_not_of(' '));
  unit.erase(unit.find_last_not_of(' ') + 1);
  if (unit.empty())
    throw ConfigError("key " + key + " needs an explicit unit suffix, e.g. \"" + text + " " +
                      std::string(table.canonical) + "\"");
  for (const auto& [name, factor] : table.factors) {
    if (unit != name) continue;
    if (dim == Dimension::temperature && unit == "C") return number + 273.15;
    return number * factor;
  }
  std::string allowed;
  for (const auto& f : table.factors) allowed += (allowed.empty() ? "" : ", ") + std::string(f.first);
  throw ConfigError("key " + key + ": unit \"" + unit + "\" not accepted (use " + allowed + ")");
}

inline std::string format_quantity(double canonical_value, Dimension dim)
{
  return format_number(canonical_value) + " " + std::string(unit_table(dim).canonical);
}

//
// RunSpec
//

struct RunSpec {
  Scenario scenario = Scenario::spectrum;
  SchemeId scheme = SchemeId::fig1_asym;

  DrivePolarization probe_polarization = DrivePolarization::linear;
  std::optional<double> probe_rabi_mhz;
  std::optional<double> probe_power_mw;

  std::optional<double> coupling_rabi_mhz;
  std::optional<double> coupling_power_mw;
  double coupling_detuning_mhz = 0.0;

  double sweep_start_mhz = -400.0;
  double sweep_stop_mhz = 400.0;
  int sweep_points = 1201;

  double temperature_k = 328.15;
  std::optional<double> density_cm3;
  double length_cm = 5.0;
  double wavelength_nm = 794.979;

  double gamma_ca_mhz = 3.5;
  double gamma_ba_mhz = 1.1;
  std::optional<double> gamma_a_mhz;
  double gamma_mhz = 5.75;
  std::optional<double> ground_exchange_mhz;

  bool stark_enabled = true;
  double far_detuning_mhz = 816.0;

  double b_gauss = 0.0;
  double g_f1 = -0.5;
  double g_f2 = 0.5;
  double g_excited_f2 = 1.0 / 6.0;
  double g_excited_f1 = -1.0 / 6.0;

  std::map<std::string, double> cg_overrides;

  double quad_rel_tol = 1e-9;
  double quad_abs_tol = 0.0;
  int quad_max_intervals = 4000;
  double quad_span = 6.0;

  PopulationPolicy population_policy = PopulationPolicy::once;
  double peak_window_mhz = 30.0;
  double peak_prominence = 1e-4;
  double angle_floor = 1e-12;

  std::vector<double> scan_powers_mw{6.0, 10.0, 15.0};
  std::vector<double> scan_temperatures_k{318.15, 328.15, 338.15};

  double cal_coupling_power_mw = 15.0;
  double cal_coupling_rabi_mhz = 100.0;
  double cal_probe_power_mw = 0.15;
  double cal_probe_rabi_mhz = 10.0;
  double anchor_temperature_k = 328.15;
  double anchor_density_cm3 = 1.62e11;

  std::string output_directory = ".";
  int verbosity = 0;

  friend bool operator==(const RunSpec&, const RunSpec&) = default;
};

namespace detail {

// Reads keys from one JSON object and reports anything left unread.
class Section {
 public:
  Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path))
  {
    if (!obj_.is_object()) throw ConfigError("key " + display() + " must be an object");
  }

  std::string key(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }

  const json* get(const std::string& k)
  {
    seen_.insert(k);
    auto it = obj_.find(k);
    if (it == obj_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  void quantity(const std::string& k, Dimension dim, double& out)
  {
    if (const json* v = get(k)) out = parse_quantity(*v, dim, key(k));
  }
  void quantity(const std::string& k, Dimension dim, std::optional<double>& out)
  {
    if (const json* v = get(k)) out = parse_quantity(*v, dim, key(k));
  }
  void number(const std::string& k, double& out)
  {
    if (const json* v = get(k)) {
      if (!v->is_number()) throw ConfigError("key " + key(k) + " must be a number");
      out = v->get<double>();
    }
  }
  void integer(const std::string& k, int& out)
  {
    if (const json* v = get(k)) {
      if (!v->is_number_integer()) throw ConfigError("key " + key(k) + " must be an integer");
      out = v->get<int>();
    }
  }
  void boolean(const std::string& k, bool& out)
  {
    if (const json* v = get(k)) {
      if (!v->is_boolean()) throw ConfigError("key " + key(k) + " must be true or false");
      out = v->get<bool>();
    }
  }
  std::optional<std::string> string(const std::string& k)
  {
    if (const json* v = get(k)) {
      if (!v->is_string()) throw ConfigError("key " + key(k) + " must be a string");
      return v->get<std::string>();
    }
    return std::nullopt;
  }
  std::optional<Section> child(const std::string& k)
  {
    if (const json* v = get(k)) return Section(*v, key(k));
    return std::nullopt;
  }

  void finish() const
  {
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError("unknown key: " + key(it.key()));
  }

 private:
  std::string display() const { return path_.empty() ? "<root>" : path_; }
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

}  // namespace detail

inline constexpr std::string_view metadata_key = "run_metadata";

/// Parses a configuration document. The reserved top-level key "run_metadata"
/// (written by the tool into its sidecar) is ignored.
inline RunSpec parse_config(const json& doc)
{
  using detail::Section;
  RunSpec s;
  Section root(doc, "");
  root.get(std::string(metadata_key));

  auto scenario = root.string("scenario");
  if (!scenario) throw ConfigError("missing required key: scenario");
  auto sc = parse_scenario(*scenario);
  if (!sc)
    throw ConfigError("key scenario: unknown scenario \"" + *scenario +
                      "\" (spectrum, power-scan, temp-scan, eit-peaks, detector-trace, populations)");
  s.scenario = *sc;

  auto scheme = root.string("scheme");
  if (!scheme) throw ConfigError("missing required key: scheme");
  auto id = parse_scheme_id(*scheme);
  if (!id) throw ConfigError("key scheme: unknown scheme \"" + *scheme + "\" (fig1_asym, fig10_sym, fig11_f1)");
  s.scheme = *id;

  if (auto p = root.child("probe")) {
    if (auto pol = p->string("polarization")) {
      auto dp = parse_drive_polarization(*pol);
      if (!dp || *dp == DrivePolarization::pi)
        throw ConfigError("key probe.polarization: expected linear, sigma_minus or sigma_plus");
      s.probe_polarization = *dp;
    }
    p->quantity("rabi", Dimension::frequency, s.probe_rabi_mhz);
    p->quantity("power", Dimension::power, s.probe_power_mw);
    p->finish();
    if (s.probe_rabi_mhz && s.probe_power_mw)
      throw ConfigError("probe is over-specified: give probe.power or probe.rabi, not both");
  }

  auto coupling = root.child("coupling");
  if (!coupling) throw ConfigError("missing required key: coupling.power (or coupling.rabi)");
  coupling->quantity("rabi", Dimension::frequency, s.coupling_rabi_mhz);
  coupling->quantity("power", Dimension::power, s.coupling_power_mw);
  coupling->quantity("detuning", Dimension::frequency, s.coupling_detuning_mhz);
  coupling->finish();
  if (s.coupling_rabi_mhz && s.coupling_power_mw)
    throw ConfigError("coupling is over-specified: give coupling.power or coupling.rabi, not both");
  if (!s.coupling_rabi_mhz && !s.coupling_power_mw)
    throw ConfigError("missing required key: coupling.power (or coupling.rabi)");

  if (auto g = root.child("sweep")) {
    g->quantity("start", Dimension::frequency, s.sweep_start_mhz);
    g->quantity("stop", Dimension::frequency, s.sweep_stop_mhz);
    g->integer("points", s.sweep_points);
    g->finish();
  }
  if (auto m = root.child("medium")) {
    m->quantity("temperature", Dimension::temperature, s.temperature_k);
    m->quantity("density", Dimension::density, s.density_cm3);
    m->quantity("length", Dimension::length, s.length_cm);
    m->quantity("wavelength", Dimension::wavelength, s.wavelength_nm);
    m->finish();
  }
  if (auto r = root.child("rates")) {
    r->quantity("gamma_ca", Dimension::frequency, s.gamma_ca_mhz);
    r->quantity("gamma_ba", Dimension::frequency, s.gamma_ba_mhz);
    r->quantity("gamma_a", Dimension::frequency, s.gamma_a_mhz);
    r->quantity("gamma", Dimension::frequency, s.gamma_mhz);
    r->quantity("ground_exchange", Dimension::frequency, s.ground_exchange_mhz);
    r->finish();
  }
  if (auto st = root.child("stark")) {
    st->boolean("enabled", s.stark_enabled);
    st->quantity("far_detuning", Dimension::frequency, s.far_detuning_mhz);
    st->finish();
  }
  if (auto b = root.child("magnetic_field")) {
    b->quantity("b", Dimension::magnetic_field, s.b_gauss);
    b->number("g_f1", s.g_f1);
    b->number("g_f2", s.g_f2);
    b->number("g_excited_f2", s.g_excited_f2);
    b->number("g_excited_f1", s.g_excited_f1);
    b->finish();
  }
  if (const json* o = root.get("cg_overrides")) {
    if (!o->is_object()) throw ConfigError("key cg_overrides must be an object of \"aX-cY\": value");
    for (auto it = o->begin(); it != o->end(); ++it) {
      if (!it->is_number()) throw ConfigError("key cg_overrides." + it.key() + " must be a number");
      s.cg_overrides[it.key()] = it->get<double>();
    }
  }
  if (auto q = root.child("quadrature")) {
    q->number("rel_tol", s.quad_rel_tol);
    q->number("abs_tol", s.quad_abs_tol);
    q->integer("max_intervals", s.quad_max_intervals);
    q->number("span", s.quad_span);
    q->finish();
  }
  if (auto pol = root.string("populations")) {
    if (*pol == "once") s.population_policy = PopulationPolicy::once;
    else if (*pol == "per_point") s.population_policy = PopulationPolicy::per_point;
    else throw ConfigError("key populations: expected once or per_point");
  }
  if (auto pk = root.child("peaks")) {
    pk->quantity("window", Dimension::frequency, s.peak_window_mhz);
    pk->number("prominence", s.peak_prominence);
    pk->finish();
  }
  if (auto d = root.child("detection")) {
    d->number("angle_floor", s.angle_floor);
    d->finish();
  }
  auto quantity_list = [](const json& arr, Dimension dim, const std::string& key) {
    if (!arr.is_array()) throw ConfigError("key " + key + " must be a list");
    std::vector<double> out;
    for (std::size_t i = 0; i < arr.size(); ++i)
      out.push_back(parse_quantity(arr[i], dim, key + "[" + std::to_string(i) + "]"));
    return out;
  };
  if (auto ps = root.child("power_scan")) {
    if (const json* v = ps->get("powers")) s.scan_powers_mw = quantity_list(*v, Dimension::power, "power_scan.powers");
    ps->finish();
  }
  if (auto ts = root.child("temp_scan")) {
    if (const json* v = ts->get("temperatures"))
      s.scan_temperatures_k = quantity_list(*v, Dimension::temperature, "temp_scan.temperatures");
    ts->finish();
  }
  if (auto cal = root.child("calibration")) {
    if (auto c = cal->child("coupling")) {
      c->quantity("power", Dimension::power, s.cal_coupling_power_mw);
      c->quantity("rabi", Dimension::frequency, s.cal_coupling_rabi_mhz);
      c->finish();
    }
    if (auto p = cal->child("probe")) {
      p->quantity("power", Dimension::power, s.cal_probe_power_mw);
      p->quantity("rabi", Dimension::frequency, s.cal_probe_rabi_mhz);
      p->finish();
    }
    if (auto a = cal->child("density_anchor")) {
      a->quantity("temperature", Dimension::temperature, s.anchor_temperature_k);
      a->quantity("density", Dimension::density, s.anchor_density_cm3);
      a->finish();
    }
    cal->finish();
  }
  if (auto out = root.child("output")) {
    if (auto dir = out->string("directory")) s.output_directory = *dir;
    out->finish();
  }
  root.integer("verbosity", s.verbosity);
  root.finish();
  return s;
}

inline RunSpec parse_config(std::string_view text)
{
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  return parse_config(doc);
}

/// Canonical configuration document: every field, defaults included. Unset
/// optional values are written as null.
inline json to_json(const RunSpec& s)
{
  auto q = [](double v, Dimension d) { return json(format_quantity(v, d)); };
  auto oq = [&](const std::optional<double>& v, Dimension d) { return v ? q(*v, d) : json(nullptr); };
  auto list = [&](const std::vector<double>& v, Dimension d) {
    json a = json::array();
    for (double x : v) a.push_back(q(x, d));
    return a;
  };
  using D = Dimension;
  json j;
  j["scenario"] = std::string(to_string(s.scenario));
  j["scheme"] = std::string(to_string(s.scheme));
  j["probe"] = {{"polarization", std::string(to_string(s.probe_polarization))},
                {"rabi", oq(s.probe_rabi_mhz, D::frequency)},
                {"power", oq(s.probe_power_mw, D::power)}};
  j["coupling"] = {{"rabi", oq(s.coupling_rabi_mhz, D::frequency)},
                   {"power", oq(s.coupling_power_mw, D::power)},
                   {"detuning", q(s.coupling_detuning_mhz, D::frequency)}};
  j["sweep"] = {{"start", q(s.sweep_start_mhz, D::frequency)},
                {"stop", q(s.sweep_stop_mhz, D::frequency)},
                {"points", s.sweep_points}};
  j["medium"] = {{"temperature", q(s.temperature_k, D::temperature)},
                 {"density", oq(s.density_cm3, D::density)},
                 {"length", q(s.length_cm, D::length)},
                 {"wavelength", q(s.wavelength_nm, D::wavelength)}};
  j["rates"] = {{"gamma_ca", q(s.gamma_ca_mhz, D::frequency)},
                {"gamma_ba", q(s.gamma_ba_mhz, D::frequency)},
                {"gamma_a", oq(s.gamma_a_mhz, D::frequency)},
                {"gamma", q(s.gamma_mhz, D::frequency)},
                {"ground_exchange", oq(s.ground_exchange_mhz, D::frequency)}};
  j["stark"] = {{"enabled", s.stark_enabled}, {"far_detuning", q(s.far_detuning_mhz, D::frequency)}};
  j["magnetic_field"] = {{"b", q(s.b_gauss, D::magnetic_field)},
                         {"g_f1", s.g_f1},
                         {"g_f2", s.g_f2},
                         {"g_excited_f2", s.g_excited_f2},
                         {"g_excited_f1", s.g_excited_f1}};
  j["cg_overrides"] = json::object();
  for (const auto& [k, v] : s.cg_overrides) j["cg_overrides"][k] = v;
  j["quadrature"] = {{"rel_tol", s.quad_rel_tol},
                     {"abs_tol", s.quad_abs_tol},
                     {"max_intervals", s.quad_max_intervals},
                     {"span", s.quad_span}};
  j["populations"] = s.population_policy == PopulationPolicy::once ? "once" : "per_point";
  j["peaks"] = {{"window", q(s.peak_window_mhz, D::frequency)}, {"prominence", s.peak_prominence}};
  j["detection"] = {{"angle_floor", s.angle_floor}};
  j["power_scan"] = {{"powers", list(s.scan_powers_mw, D::power)}};
  j["temp_scan"] = {{"temperatures", list(s.scan_temperatures_k, D::temperature)}};
  j["calibration"] = {
      {"coupling", {{"power", q(s.cal_coupling_power_mw, D::power)}, {"rabi", q(s.cal_coupling_rabi_mhz, D::frequency)}}},
      {"probe", {{"power", q(s.cal_probe_power_mw, D::power)}, {"rabi", q(s.cal_probe_rabi_mhz, D::frequency)}}},
      {"density_anchor",
       {{"temperature", q(s.anchor_temperature_k, D::temperature)},
        {"density", q(s.anchor_density_cm3, D::density)}}}};
  j["output"] = {{"directory", s.output_directory}};
  j["verbosity"] = s.verbosity;
  return j;
}

/// Sets (or, for a null value, removes) the entry at a dotted path. The value
/// text is read as JSON when it parses, otherwise taken as a plain string.
inline void apply_override(json& doc, std::string_view assignment)
{
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw ConfigError("override must look like key.path=value: " + std::string(assignment));
  const std::string path(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  json value = json::accept(text) ? json::parse(text) : json(text);

  json* node = &doc;
  std::size_t start = 0;
  for (;;) {
    const auto dot = path.find('.', start);
    const std::string part = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError("override path has an empty component: " + path);
    if (!node->is_object()) throw ConfigError("override path crosses a non-object value: " + path);
    if (dot == std::string::npos) {
      if (value.is_null()) node->erase(part);
      else (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    if (node->is_null()) *node = json::object();
    start = dot + 1;
  }
}

//
// RunSpec -> physics configuration
//

inline PowerCalibration coupling_calibration_of(const RunSpec& s)
{
  return {s.cal_coupling_power_mw * 1e-3, mhz(s.cal_coupling_rabi_mhz)};
}

inline PowerCalibration probe_calibration_of(const RunSpec& s)
{
  return {s.cal_probe_power_mw * 1e-3, mhz(s.cal_probe_rabi_mhz)};
}

inline ScenarioConfig make_scenario_config(const RunSpec& s)
{
  auto positive = [](double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string("key ") + key + " must be positive");
  };
  auto non_negative = [](double v, const char* key) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError(std::string("key ") + key + " must be non-negative");
  };

  ScenarioConfig c;
  auto& sys = c.system;
  sys.scheme = build_level_scheme(s.scheme);
  if (sys.scheme.far_excited_f) {
    positive(s.far_detuning_mhz, "stark.far_detuning");
    sys.scheme.far_level_detuning = mhz(s.far_detuning_mhz);
  }
  for (const auto& [key, value] : s.cg_overrides) {
    const auto dash = key.find('-');
    if (dash == std::string::npos) throw ConfigError("cg override key must look like a1-c1: " + key);
    override_cg(sys.scheme, key.substr(0, dash), key.substr(dash + 1), value);
  }

  try {
    double probe_rabi = mhz(10.0);
    if (s.probe_rabi_mhz) probe_rabi = mhz(*s.probe_rabi_mhz);
    if (s.probe_power_mw) probe_rabi = rabi_from_power(*s.probe_power_mw * 1e-3, probe_calibration_of(s));
    double coupling_rabi = s.coupling_rabi_mhz ? mhz(*s.coupling_rabi_mhz)
                                               : rabi_from_power(*s.coupling_power_mw * 1e-3, coupling_calibration_of(s));
    non_negative(probe_rabi, "probe.rabi");
    non_negative(coupling_rabi, "coupling.rabi");
    sys.probe = {Beam::probe, s.probe_polarization, probe_rabi, 0.0};
    sys.coupling = coupling_drive(sys.scheme, coupling_rabi, mhz(s.coupling_detuning_mhz));
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }

  non_negative(s.gamma_ca_mhz, "rates.gamma_ca");
  non_negative(s.gamma_ba_mhz, "rates.gamma_ba");
  non_negative(s.gamma_mhz, "rates.gamma");
  sys.rates.gamma_ca = mhz(s.gamma_ca_mhz);
  sys.rates.gamma_ba = mhz(s.gamma_ba_mhz);
  sys.rates.gamma = mhz(s.gamma_mhz);
  if (s.gamma_a_mhz) sys.rates.gamma_a = mhz(*s.gamma_a_mhz);
  if (s.ground_exchange_mhz) sys.rates.ground_exchange = mhz(*s.ground_exchange_mhz);
  sys.stark_enabled = s.stark_enabled;
  sys.zeeman = {s.b_gauss * 1e-4, s.g_f1, s.g_f2, s.g_excited_f2, s.g_excited_f1};

  positive(s.length_cm, "medium.length");
  positive(s.wavelength_nm, "medium.wavelength");
  positive(s.anchor_density_cm3, "calibration.density_anchor.density");
  c.density_anchor = {s.anchor_temperature_k, s.anchor_density_cm3 * 1e6};
  c.medium = medium_at_temperature(s.temperature_k, c.density_anchor, s.length_cm * 1e-2,
                                   s.wavelength_nm * 1e-9);
  if (s.density_cm3) {
    positive(*s.density_cm3, "medium.density");
    c.medium.density = *s.density_cm3 * 1e6;
  }

  if (s.sweep_points < 2) throw ConfigError("key sweep.points must be at least 2");
  if (!(s.sweep_stop_mhz > s.sweep_start_mhz)) throw ConfigError("key sweep.stop must exceed sweep.start");
  c.grid = {mhz(s.sweep_start_mhz), mhz(s.sweep_stop_mhz), static_cast<std::size_t>(s.sweep_points)};

  positive(s.quad_rel_tol, "quadrature.rel_tol");
  positive(s.quad_span, "quadrature.span");
  if (s.quad_max_intervals < 1) throw ConfigError("key quadrature.max_intervals must be at least 1");
  c.doppler = {{s.quad_rel_tol, s.quad_abs_tol, s.quad_max_intervals}, s.quad_span};

  c.populations = s.population_policy;
  positive(s.peak_window_mhz, "peaks.window");
  non_negative(s.peak_prominence, "peaks.prominence");
  c.peak_window = mhz(s.peak_window_mhz);
  c.prominence = s.peak_prominence;
  c.angle_floor = s.angle_floor;
  positive(s.cal_coupling_power_mw, "calibration.coupling.power");
  positive(s.cal_probe_power_mw, "calibration.probe.power");
  c.coupling_calibration = coupling_calibration_of(s);

  check_drive_polarization(sys.scheme, sys.probe);
  check_drive_polarization(sys.scheme, sys.coupling);
  return c;
}

}  // namespace eitpol

#endif  // EITPOL_CONFIG_HPP
