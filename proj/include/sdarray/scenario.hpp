#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdarray/em.hpp"
#include "sdarray/geometry.hpp"

namespace sdarray {

/// Hardware power draw per component, milliwatts.
struct PowerModel {
  double baseband = 200.0;
  double dac = 110.0;
  double local_oscillator = 4.0;
  double mixer = 22.0;
  double phase_shifter = 42.0;
  double power_amplifier = 60.0;

  double rf_chain() const { return dac + local_oscillator + mixer; }
  /// P_c = P_BB + K P_RF + K N P_PS + N P_PA + P_t + P_CE, all in mW.
  double total(int antennas, int users, double transmit_power_mw,
               double estimation_power_mw) const;

  bool operator==(const PowerModel&) const = default;
};

struct ArraySpec {
  std::string name;
  LayoutKind kind = LayoutKind::ula;
  int elements = 200;           // ULA only
  double spacing_wl = 1.5;      // ULA only
  int groups = 68;              // NULA only
  int per_group = 2;            // NULA only
  double intra_spacing_wl = 0.2;
  double inter_spacing_wl = 1.5;
  Coupling coupling = Coupling::none;

  int size() const { return kind == LayoutKind::ula ? elements : groups * per_group; }
  ArrayLayout layout(double wavelength) const;

  bool operator==(const ArraySpec&) const = default;
};

struct Range {
  double min = 0.0;
  double max = 0.0;

  bool operator==(const Range&) const = default;
};

enum class PilotNoise { density, bandwidth };

struct PilotConfig {
  int rf_chains = 2;
  double beam_fraction = 0.8;
  int dictionary_size = 0;  // 0: G = N
  double dictionary_theta_max_deg = 90.0;
  PilotNoise noise = PilotNoise::density;
  double epsilon = 0.0;

  bool operator==(const PilotConfig&) const = default;
};

struct SimScenario {
  std::string preset;
  double frequency_hz = 300e9;
  double dipole_length_wl = 0.5;
  double dipole_radius_wl = 1.0 / 500.0;
  double conductivity = 5.7e7;
  std::vector<ArraySpec> arrays;
  int users = 1;
  double bandwidth_hz = 15e9;
  double noise_density_dbm_hz = -174.0;
  double absorption_per_m = 0.0033;
  double transmit_power_dbm = 20.0;
  double pilot_power_dbm = 20.0;
  Range distance_m{5.0, 15.0};
  Range theta_deg{0.0, 0.0};
  Range phi_deg{0.0, 0.0};
  PowerModel power;
  PilotConfig pilot;
  bool perfect_csi = false;
  double reference_theta_deg = 20.0;  // interfering user angle for gain-pattern sweeps
  int theta_points = 181;
  int trials = 1000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency

  DipoleSpec dipole() const;
  double wavelength() const;
  double noise_density() const;  // W/Hz
  double transmit_power() const; // W
  double pilot_power() const;    // W

  /// Throws ValidationError naming the offending field.
  void validate() const;

  bool operator==(const SimScenario&) const = default;
};

/// 300 GHz link defaults with a single uncoupled 200-element ULA at 1.5λ.
SimScenario default_scenario();

/// Named figure presets: fig3a, fig3b, fig4, fig6, fig7, fig8.
SimScenario preset_scenario(const std::string& name);
std::vector<std::string> preset_names();

/// YAML scenario text; keys absent from the text keep the defaults (or the
/// values of `base`). Unknown keys and invalid values raise ValidationError
/// with the line number.
SimScenario parse_config(const std::string& text);
SimScenario parse_config(const std::string& text, const SimScenario& base);
SimScenario load_config(const std::string& path, const SimScenario& base);

/// Fully resolved YAML with 17 significant digits, re-parseable by parse_config.
std::string serialize(const SimScenario& s);

const char* to_string(Coupling c);
const char* to_string(LayoutKind k);

}  // namespace sdarray
