#include "sdarray/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "sdarray/constants.hpp"
#include "sdarray/error.hpp"

namespace sdarray {

double PowerModel::total(int antennas, int users, double transmit_power_mw,
                         double estimation_power_mw) const {
  return baseband + users * rf_chain() + static_cast<double>(users) * antennas * phase_shifter +
         antennas * power_amplifier + transmit_power_mw + estimation_power_mw;
}

ArrayLayout ArraySpec::layout(double wavelength) const {
  if (kind == LayoutKind::ula) return ArrayLayout::ula(elements, spacing_wl * wavelength);
  return ArrayLayout::nula(groups, per_group, intra_spacing_wl * wavelength,
                           inter_spacing_wl * wavelength);
}

DipoleSpec SimScenario::dipole() const {
  return DipoleSpec::from_wavelengths(frequency_hz, dipole_length_wl, dipole_radius_wl,
                                      conductivity);
}
double SimScenario::wavelength() const { return kSpeedOfLight / frequency_hz; }
double SimScenario::noise_density() const { return dbm_to_watts(noise_density_dbm_hz); }
double SimScenario::transmit_power() const { return dbm_to_watts(transmit_power_dbm); }
double SimScenario::pilot_power() const { return dbm_to_watts(pilot_power_dbm); }

const char* to_string(Coupling c) {
  switch (c) {
    case Coupling::exact: return "exact";
    case Coupling::block: return "block";
    case Coupling::none: return "none";
  }
  return "?";
}

const char* to_string(LayoutKind k) { return k == LayoutKind::ula ? "ula" : "nula"; }

namespace {

// Validation messages start with "<field>: " so the parser can attach a line.
void check(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ValidationError(field + ": " + what);
}

void check_range(const Range& r, const std::string& field, double lo, double hi) {
  check(std::isfinite(r.min) && r.min >= lo && r.min <= hi, field + ".min",
        "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  check(std::isfinite(r.max) && r.max >= lo && r.max <= hi, field + ".max",
        "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  check(r.min <= r.max, field, "min must not exceed max");
}

}  // namespace

void SimScenario::validate() const {
  check(std::isfinite(frequency_hz) && frequency_hz > 0.0, "dipole.frequency_hz", "must be positive");
  check(std::isfinite(dipole_length_wl) && dipole_length_wl > 0.0, "dipole.length_wl",
        "must be positive");
  check(std::isfinite(dipole_radius_wl) && dipole_radius_wl > 0.0, "dipole.radius_wl",
        "must be positive");
  check(dipole_radius_wl < 0.1 * dipole_length_wl, "dipole.radius_wl",
        "must be much smaller than the length");
  check(conductivity > 0.0, "dipole.conductivity", "must be positive");
  check(std::abs(std::sin(kPi * dipole_length_wl)) > 1e-9, "dipole.length_wl",
        "must not be an integer number of wavelengths");

  check(!arrays.empty(), "arrays", "at least one array is required");
  std::set<std::string> names;
  for (std::size_t i = 0; i < arrays.size(); ++i) {
    const ArraySpec& a = arrays[i];
    const std::string f = "arrays[" + std::to_string(i) + "]";
    check(!a.name.empty(), f + ".name", "must not be empty");
    check(names.insert(a.name).second, f + ".name", "duplicate array name '" + a.name + "'");
    if (a.kind == LayoutKind::ula) {
      check(a.elements >= 1, f + ".elements", "must be positive");
      check(std::isfinite(a.spacing_wl) && a.spacing_wl > 0.0, f + ".spacing_wl", "must be positive");
    } else {
      check(a.groups >= 1, f + ".groups", "must be positive");
      check(a.per_group >= 1, f + ".per_group", "must be positive");
      check(std::isfinite(a.intra_spacing_wl) && a.intra_spacing_wl > 0.0, f + ".intra_spacing_wl",
            "must be positive");
      check(std::isfinite(a.inter_spacing_wl) && a.inter_spacing_wl > 0.0, f + ".inter_spacing_wl",
            "must be positive");
    }
    check(pilot.rf_chains <= a.size(), "pilot.rf_chains",
          "exceeds the element count of array '" + a.name + "'");
  }

  check(users >= 1, "users.count", "must be positive");
  check(std::isfinite(bandwidth_hz) && bandwidth_hz > 0.0, "link.bandwidth_hz", "must be positive");
  check(std::isfinite(noise_density_dbm_hz), "link.noise_density_dbm_hz", "must be finite");
  check(std::isfinite(absorption_per_m) && absorption_per_m >= 0.0, "link.absorption_per_m",
        "must be nonnegative");
  check(std::isfinite(transmit_power_dbm), "link.transmit_power_dbm", "must be finite");
  check(std::isfinite(pilot_power_dbm), "link.pilot_power_dbm", "must be finite");
  check(distance_m.min > 0.0, "users.distance_m.min", "must be positive");
  check_range(distance_m, "users.distance_m", 0.0, 1e9);
  check_range(theta_deg, "users.theta_deg", 0.0, 180.0);
  check_range(phi_deg, "users.phi_deg", 0.0, 360.0);

  const std::pair<double, const char*> powers[] = {
      {power.baseband, "power_mw.baseband"},
      {power.dac, "power_mw.dac"},
      {power.local_oscillator, "power_mw.local_oscillator"},
      {power.mixer, "power_mw.mixer"},
      {power.phase_shifter, "power_mw.phase_shifter"},
      {power.power_amplifier, "power_mw.power_amplifier"}};
  for (const auto& [v, f] : powers) check(std::isfinite(v) && v >= 0.0, f, "must be nonnegative");

  check(pilot.rf_chains >= 1, "pilot.rf_chains", "must be positive");
  check(pilot.beam_fraction > 0.0 && pilot.beam_fraction <= 1.0, "pilot.beam_fraction",
        "must lie in (0, 1]");
  check(pilot.dictionary_size >= 0, "pilot.dictionary_size", "must be nonnegative (0 means G = N)");
  check(pilot.dictionary_theta_max_deg > 0.0 && pilot.dictionary_theta_max_deg <= 180.0,
        "pilot.dictionary_theta_max_deg", "must lie in (0, 180]");
  check(std::isfinite(pilot.epsilon) && pilot.epsilon >= 0.0, "pilot.epsilon", "must be nonnegative");

  check(reference_theta_deg >= 0.0 && reference_theta_deg <= 180.0, "sweep.reference_theta_deg",
        "must lie in [0, 180]");
  check(theta_points >= 2, "sweep.theta_points", "must be at least 2");
  check(trials >= 1, "monte_carlo.trials", "must be at least 1");
  check(threads >= 0, "monte_carlo.threads", "must be nonnegative");
}

SimScenario default_scenario() {
  SimScenario s;
  ArraySpec ula;
  ula.name = "ULA";
  s.arrays.push_back(ula);
  return s;
}

namespace {

ArraySpec make_ula(const std::string& name, int n, double d, Coupling c) {
  ArraySpec a;
  a.name = name;
  a.kind = LayoutKind::ula;
  a.elements = n;
  a.spacing_wl = d;
  a.coupling = c;
  return a;
}

ArraySpec make_nula(const std::string& name, int groups, double dbar, double dg, Coupling c) {
  ArraySpec a;
  a.name = name;
  a.kind = LayoutKind::nula;
  a.groups = groups;
  a.per_group = 2;
  a.intra_spacing_wl = dbar;
  a.inter_spacing_wl = dg;
  a.coupling = c;
  return a;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig3a", "fig3b", "fig4", "fig6", "fig7", "fig8"};
}

SimScenario preset_scenario(const std::string& name) {
  SimScenario s = default_scenario();
  s.preset = name;
  s.arrays.clear();
  if (name == "fig3a" || name == "fig3b") {
    const double d = name == "fig3a" ? 1.5 : 0.5;
    s.arrays = {make_ula("ULA", 8, d, Coupling::exact),
                make_nula("NULA", 4, 0.2, d, Coupling::block),
                make_nula("NULA-exact", 4, 0.2, d, Coupling::exact)};
    s.theta_deg = {0.0, 180.0};
  } else if (name == "fig4") {
    s.arrays = {make_ula("ULA", 120, 1.5, Coupling::none),
                make_nula("NULA", 45, 0.2, 1.5, Coupling::block),
                make_nula("NULA-exact", 45, 0.2, 1.5, Coupling::exact)};
    s.theta_deg = {0.0, 180.0};
    s.reference_theta_deg = 20.0;
  } else if (name == "fig6") {
    s.arrays = {make_ula("ULA", 200, 1.5, Coupling::none),
                make_nula("NULA", 68, 0.2, 1.5, Coupling::exact)};
  } else if (name == "fig7" || name == "fig8") {
    s.arrays = {make_ula("ULA", 250, 1.5, Coupling::none),
                make_nula("NULA", 85, 0.2, 1.5, Coupling::exact)};
    s.users = 2;
    s.theta_deg = {0.0, 90.0};
    s.phi_deg = {0.0, 360.0};
  } else {
    std::string known;
    for (const auto& p : preset_names()) known += (known.empty() ? "" : ", ") + p;
    throw ValidationError("preset: unknown preset '" + name + "' (known: " + known + ")");
  }
  return s;
}

namespace {

std::string at_line(const YAML::Node& n) {
  const YAML::Mark m = n.Mark();
  return m.line >= 0 ? "line " + std::to_string(m.line + 1) + ": " : "";
}

class Parser {
 public:
  explicit Parser(SimScenario& s) : s_(s) {}

  void run(const YAML::Node& root) {
    if (!root || root.IsNull()) return;
    if (!root.IsMap()) fail(root, "scenario", "top level must be a mapping");
    keys(root, "", {"preset", "dipole", "arrays", "users", "link", "power_mw", "pilot", "sweep",
                    "monte_carlo"});
    if (root["dipole"]) dipole(root["dipole"]);
    if (root["arrays"]) arrays(root["arrays"]);
    if (root["users"]) users(root["users"]);
    if (root["link"]) link(root["link"]);
    if (root["power_mw"]) power(root["power_mw"]);
    if (root["pilot"]) pilot(root["pilot"]);
    if (root["sweep"]) sweep(root["sweep"]);
    if (root["monte_carlo"]) monte_carlo(root["monte_carlo"]);
  }

  const std::map<std::string, int>& lines() const { return lines_; }

  [[noreturn]] static void fail(const YAML::Node& n, const std::string& field,
                                const std::string& what) {
    throw ValidationError(at_line(n) + field + ": " + what);
  }

 private:
  void keys(const YAML::Node& map, const std::string& path,
            std::initializer_list<const char*> allowed) {
    if (!map.IsMap()) fail(map, path.empty() ? "scenario" : path, "expected a mapping");
    for (const auto& kv : map) {
      const std::string key = kv.first.as<std::string>();
      if (std::find_if(allowed.begin(), allowed.end(),
                       [&](const char* a) { return key == a; }) == allowed.end()) {
        std::string list;
        for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
        fail(kv.first, join(path, key), "unknown key (expected one of: " + list + ")");
      }
      lines_[join(path, key)] = kv.first.Mark().line + 1;
    }
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

  template <class T>
  void get(const YAML::Node& map, const char* key, const std::string& path, T& out) {
    const YAML::Node n = map[key];
    if (!n) return;
    try {
      out = n.as<T>();
    } catch (const YAML::Exception&) {
      fail(n, join(path, key), std::is_same_v<T, bool> ? "expected true or false"
                               : std::is_integral_v<T> ? "expected an integer"
                               : std::is_floating_point_v<T> ? "expected a number"
                                                             : "expected a string");
    }
  }

  void range(const YAML::Node& map, const char* key, const std::string& path, Range& out) {
    const YAML::Node n = map[key];
    if (!n) return;
    const std::string p = join(path, key);
    if (n.IsSequence()) {
      if (n.size() != 2) fail(n, p, "expected [min, max]");
      try {
        out.min = n[0].as<double>();
        out.max = n[1].as<double>();
      } catch (const YAML::Exception&) {
        fail(n, p, "expected two numbers");
      }
      lines_[p + ".min"] = lines_[p + ".max"] = n.Mark().line + 1;
      return;
    }
    keys(n, p, {"min", "max"});
    get(n, "min", p, out.min);
    get(n, "max", p, out.max);
  }

  void dipole(const YAML::Node& n) {
    keys(n, "dipole", {"frequency_hz", "length_wl", "radius_wl", "conductivity"});
    get(n, "frequency_hz", "dipole", s_.frequency_hz);
    get(n, "length_wl", "dipole", s_.dipole_length_wl);
    get(n, "radius_wl", "dipole", s_.dipole_radius_wl);
    get(n, "conductivity", "dipole", s_.conductivity);
  }

  void arrays(const YAML::Node& n) {
    if (!n.IsSequence()) fail(n, "arrays", "expected a list of arrays");
    s_.arrays.clear();
    for (std::size_t i = 0; i < n.size(); ++i) {
      const YAML::Node a = n[i];
      const std::string p = "arrays[" + std::to_string(i) + "]";
      keys(a, p, {"name", "kind", "elements", "spacing_wl", "groups", "per_group",
                  "intra_spacing_wl", "inter_spacing_wl", "coupling"});
      ArraySpec spec;
      std::string kind = "ula";
      get(a, "kind", p, kind);
      if (kind == "ula") {
        spec.kind = LayoutKind::ula;
        spec.coupling = Coupling::none;
      } else if (kind == "nula") {
        spec.kind = LayoutKind::nula;
        spec.coupling = Coupling::exact;
      } else {
        fail(a["kind"], p + ".kind", "expected 'ula' or 'nula'");
      }
      spec.name = spec.kind == LayoutKind::ula ? "ULA" : "NULA";
      if (n.size() > 1) spec.name += std::to_string(i);
      get(a, "name", p, spec.name);
      get(a, "elements", p, spec.elements);
      get(a, "spacing_wl", p, spec.spacing_wl);
      get(a, "groups", p, spec.groups);
      get(a, "per_group", p, spec.per_group);
      get(a, "intra_spacing_wl", p, spec.intra_spacing_wl);
      get(a, "inter_spacing_wl", p, spec.inter_spacing_wl);
      if (a["coupling"]) {
        std::string c;
        get(a, "coupling", p, c);
        if (c == "exact") spec.coupling = Coupling::exact;
        else if (c == "block") spec.coupling = Coupling::block;
        else if (c == "none") spec.coupling = Coupling::none;
        else fail(a["coupling"], p + ".coupling", "expected 'exact', 'block' or 'none'");
      }
      s_.arrays.push_back(spec);
    }
  }

  void users(const YAML::Node& n) {
    keys(n, "users", {"count", "distance_m", "theta_deg", "phi_deg"});
    get(n, "count", "users", s_.users);
    range(n, "distance_m", "users", s_.distance_m);
    range(n, "theta_deg", "users", s_.theta_deg);
    range(n, "phi_deg", "users", s_.phi_deg);
  }

  void link(const YAML::Node& n) {
    keys(n, "link", {"bandwidth_hz", "noise_density_dbm_hz", "absorption_per_m",
                     "transmit_power_dbm", "pilot_power_dbm"});
    get(n, "bandwidth_hz", "link", s_.bandwidth_hz);
    get(n, "noise_density_dbm_hz", "link", s_.noise_density_dbm_hz);
    get(n, "absorption_per_m", "link", s_.absorption_per_m);
    get(n, "transmit_power_dbm", "link", s_.transmit_power_dbm);
    get(n, "pilot_power_dbm", "link", s_.pilot_power_dbm);
  }

  void power(const YAML::Node& n) {
    keys(n, "power_mw", {"baseband", "dac", "local_oscillator", "mixer", "phase_shifter",
                         "power_amplifier"});
    auto mw = [&](const char* key, double& v) { get(n, key, "power_mw", v); };
    mw("baseband", s_.power.baseband);
    mw("dac", s_.power.dac);
    mw("local_oscillator", s_.power.local_oscillator);
    mw("mixer", s_.power.mixer);
    mw("phase_shifter", s_.power.phase_shifter);
    mw("power_amplifier", s_.power.power_amplifier);
  }

  void pilot(const YAML::Node& n) {
    keys(n, "pilot", {"rf_chains", "beam_fraction", "dictionary_size", "dictionary_theta_max_deg",
                      "noise", "epsilon"});
    get(n, "rf_chains", "pilot", s_.pilot.rf_chains);
    get(n, "beam_fraction", "pilot", s_.pilot.beam_fraction);
    get(n, "dictionary_size", "pilot", s_.pilot.dictionary_size);
    get(n, "dictionary_theta_max_deg", "pilot", s_.pilot.dictionary_theta_max_deg);
    get(n, "epsilon", "pilot", s_.pilot.epsilon);
    if (n["noise"]) {
      std::string mode;
      get(n, "noise", "pilot", mode);
      if (mode == "density") s_.pilot.noise = PilotNoise::density;
      else if (mode == "bandwidth") s_.pilot.noise = PilotNoise::bandwidth;
      else fail(n["noise"], "pilot.noise", "expected 'density' or 'bandwidth'");
    }
  }

  void sweep(const YAML::Node& n) {
    keys(n, "sweep", {"theta_points", "reference_theta_deg"});
    get(n, "theta_points", "sweep", s_.theta_points);
    get(n, "reference_theta_deg", "sweep", s_.reference_theta_deg);
  }

  void monte_carlo(const YAML::Node& n) {
    keys(n, "monte_carlo", {"trials", "seed", "threads", "perfect_csi"});
    get(n, "trials", "monte_carlo", s_.trials);
    get(n, "seed", "monte_carlo", s_.seed);
    get(n, "threads", "monte_carlo", s_.threads);
    get(n, "perfect_csi", "monte_carlo", s_.perfect_csi);
  }

  SimScenario& s_;
  std::map<std::string, int> lines_;
};

}  // namespace

SimScenario parse_config(const std::string& text) { return parse_config(text, default_scenario()); }

SimScenario parse_config(const std::string& text, const SimScenario& base) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ValidationError("line " + std::to_string(e.mark.line + 1) + ": malformed scenario: " +
                          e.msg);
  }
  SimScenario s = base;
  if (root && root.IsMap() && root["preset"]) {
    std::string name;
    try {
      name = root["preset"].as<std::string>();
    } catch (const YAML::Exception&) {
      Parser::fail(root["preset"], "preset", "expected a preset name");
    }
    try {
      s = preset_scenario(name);
    } catch (const ValidationError& e) {
      throw ValidationError(at_line(root["preset"]) + e.what());
    }
  }
  Parser parser(s);
  parser.run(root);
  try {
    s.validate();
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    const std::string field = msg.substr(0, msg.find(':'));
    std::string lookup = field;
    // arrays[i].x is recorded as arrays[i].x; fall back to the parent section.
    auto it = parser.lines().find(lookup);
    while (it == parser.lines().end() && lookup.find('.') != std::string::npos) {
      lookup = lookup.substr(0, lookup.rfind('.'));
      it = parser.lines().find(lookup);
    }
    if (it != parser.lines().end())
      throw ValidationError("line " + std::to_string(it->second) + ": " + msg);
    throw;
  }
  return s;
}

SimScenario load_config(const std::string& path, const SimScenario& base) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), base);
}

std::string serialize(const SimScenario& s) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  if (!s.preset.empty()) out << YAML::Key << "preset" << YAML::Value << s.preset;
  out << YAML::Key << "dipole" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "frequency_hz" << YAML::Value << s.frequency_hz;
  out << YAML::Key << "length_wl" << YAML::Value << s.dipole_length_wl;
  out << YAML::Key << "radius_wl" << YAML::Value << s.dipole_radius_wl;
  out << YAML::Key << "conductivity" << YAML::Value << s.conductivity;
  out << YAML::EndMap;

  out << YAML::Key << "arrays" << YAML::Value << YAML::BeginSeq;
  for (const ArraySpec& a : s.arrays) {
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << a.name;
    out << YAML::Key << "kind" << YAML::Value << to_string(a.kind);
    if (a.kind == LayoutKind::ula) {
      out << YAML::Key << "elements" << YAML::Value << a.elements;
      out << YAML::Key << "spacing_wl" << YAML::Value << a.spacing_wl;
    } else {
      out << YAML::Key << "groups" << YAML::Value << a.groups;
      out << YAML::Key << "per_group" << YAML::Value << a.per_group;
      out << YAML::Key << "intra_spacing_wl" << YAML::Value << a.intra_spacing_wl;
      out << YAML::Key << "inter_spacing_wl" << YAML::Value << a.inter_spacing_wl;
    }
    out << YAML::Key << "coupling" << YAML::Value << to_string(a.coupling);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  auto range = [&](const char* key, const Range& r) {
    out << YAML::Key << key << YAML::Value << YAML::BeginMap << YAML::Key << "min" << YAML::Value
        << r.min << YAML::Key << "max" << YAML::Value << r.max << YAML::EndMap;
  };
  out << YAML::Key << "users" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "count" << YAML::Value << s.users;
  range("distance_m", s.distance_m);
  range("theta_deg", s.theta_deg);
  range("phi_deg", s.phi_deg);
  out << YAML::EndMap;

  out << YAML::Key << "link" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "bandwidth_hz" << YAML::Value << s.bandwidth_hz;
  out << YAML::Key << "noise_density_dbm_hz" << YAML::Value << s.noise_density_dbm_hz;
  out << YAML::Key << "absorption_per_m" << YAML::Value << s.absorption_per_m;
  out << YAML::Key << "transmit_power_dbm" << YAML::Value << s.transmit_power_dbm;
  out << YAML::Key << "pilot_power_dbm" << YAML::Value << s.pilot_power_dbm;
  out << YAML::EndMap;

  out << YAML::Key << "power_mw" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "baseband" << YAML::Value << s.power.baseband;
  out << YAML::Key << "dac" << YAML::Value << s.power.dac;
  out << YAML::Key << "local_oscillator" << YAML::Value << s.power.local_oscillator;
  out << YAML::Key << "mixer" << YAML::Value << s.power.mixer;
  out << YAML::Key << "phase_shifter" << YAML::Value << s.power.phase_shifter;
  out << YAML::Key << "power_amplifier" << YAML::Value << s.power.power_amplifier;
  out << YAML::EndMap;

  out << YAML::Key << "pilot" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "rf_chains" << YAML::Value << s.pilot.rf_chains;
  out << YAML::Key << "beam_fraction" << YAML::Value << s.pilot.beam_fraction;
  out << YAML::Key << "dictionary_size" << YAML::Value << s.pilot.dictionary_size;
  out << YAML::Key << "dictionary_theta_max_deg" << YAML::Value << s.pilot.dictionary_theta_max_deg;
  out << YAML::Key << "noise" << YAML::Value
      << (s.pilot.noise == PilotNoise::density ? "density" : "bandwidth");
  out << YAML::Key << "epsilon" << YAML::Value << s.pilot.epsilon;
  out << YAML::EndMap;

  out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "theta_points" << YAML::Value << s.theta_points;
  out << YAML::Key << "reference_theta_deg" << YAML::Value << s.reference_theta_deg;
  out << YAML::EndMap;

  out << YAML::Key << "monte_carlo" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "trials" << YAML::Value << s.trials;
  out << YAML::Key << "seed" << YAML::Value << s.seed;
  out << YAML::Key << "threads" << YAML::Value << s.threads;
  out << YAML::Key << "perfect_csi" << YAML::Value << s.perfect_csi;
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace sdarray
