// sdarray command-line driver: figure presets, impedance dumps, Monte Carlo CDFs.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sdarray/beamforming.hpp"
#include "sdarray/constants.hpp"
#include "sdarray/em.hpp"
#include "sdarray/error.hpp"
#include "sdarray/link.hpp"
#include "sdarray/matching.hpp"
#include "sdarray/scenario.hpp"

namespace fs = std::filesystem;
using namespace sdarray;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

class Csv {
 public:
  Csv(const fs::path& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    row(header);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

struct Options {
  std::string config;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> threads;
  std::string out = ".";
};

SimScenario resolve(const Options& o) {
  SimScenario s = o.preset.empty() ? default_scenario() : preset_scenario(o.preset);
  if (!o.config.empty()) s = load_config(o.config, s);
  if (o.seed) s.seed = *o.seed;
  if (o.trials) s.trials = *o.trials;
  if (o.threads) s.threads = *o.threads;
  s.validate();
  return s;
}

fs::path prepare_out(const Options& o, const SimScenario& s, const std::string& command) {
  const fs::path dir(o.out);
  fs::create_directories(dir);
  std::ofstream manifest(dir / "manifest.yaml");
  if (!manifest) throw std::runtime_error("cannot write " + (dir / "manifest.yaml").string());
  manifest << "# sdarray " << command << "\n" << serialize(s);
  return dir;
}

std::vector<double> theta_grid(const SimScenario& s) {
  const int n = s.theta_deg.min == s.theta_deg.max ? 1 : s.theta_points;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = n == 1 ? s.theta_deg.min
                    : s.theta_deg.min + (s.theta_deg.max - s.theta_deg.min) * i / (n - 1);
  return out;
}

void write_cdf(Csv& csv, const std::string& array, const std::string& metric,
               std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    csv.row({array, metric, num(values[i]), num((i + 1) / n)});
}

int cmd_gain_pattern(const Options& o) {
  const SimScenario s = resolve(o);
  const fs::path dir = prepare_out(o, s, "gain-pattern");
  std::vector<PreparedArray> arrays;
  std::vector<std::string> header{"theta_deg"};
  for (const ArraySpec& a : s.arrays) {
    arrays.push_back(prepare_array(s, a));
    header.push_back(a.name + "_signal");
    header.push_back(a.name + "_interference");
  }
  const double ref = deg_to_rad(s.reference_theta_deg);
  std::vector<CVector> ref_channels;
  for (const PreparedArray& p : arrays) ref_channels.push_back(p.model.channel(ref));
  Csv csv(dir / "gain_pattern.csv", header);
  for (double deg : theta_grid(s)) {
    std::vector<std::string> row{num(deg)};
    for (std::size_t a = 0; a < arrays.size(); ++a) {
      const CVector h = arrays[a].model.channel(deg_to_rad(deg));
      const CVector& hr = ref_channels[a];
      row.push_back(num(h.squaredNorm()));
      row.push_back(num(std::norm(hr.dot(h)) / hr.squaredNorm()));
    }
    csv.row(row);
  }
  std::cout << "wrote " << (dir / "gain_pattern.csv").string() << "\n";
  return 0;
}

int cmd_impedance(const Options& o) {
  const SimScenario s = resolve(o);
  const fs::path dir = prepare_out(o, s, "impedance");
  const DipoleSpec dipole = s.dipole();
  const ElementImpedance element = element_impedance(dipole);
  Csv csv(dir / "impedance.csv", {"array", "row", "col", "spacing_wl", "re_quadrature_ohm",
                                   "re_emf_ohm", "im_emf_ohm"});
  for (const ArraySpec& a : s.arrays) {
    const ArrayLayout layout = a.layout(dipole.wavelength());
    const RealImpedanceMatrix quad = impedance_real_quadrature(layout, dipole);
    const auto& z = layout.positions();
    for (int i = 0; i < layout.size(); ++i) {
      for (int j = 0; j < layout.size(); ++j) {
        const double d = std::abs(z[i] - z[j]);
        const cdouble emf = i == j ? element.self_impedance - element.loss_resistance
                                   : mutual_impedance(dipole, d);
        csv.row({a.name, std::to_string(i), std::to_string(j), num(d / dipole.wavelength()),
                 num(quad.re_ideal(i, j)), num(emf.real()), num(emf.imag())});
      }
    }
    std::cout << a.name << ": quadrature order " << quad.order_u << "x" << quad.order_phi
              << ", error estimate " << num(quad.error_estimate) << " ohm\n";
  }
  std::cout << "R_loss " << num(element.loss_resistance) << " ohm, Z_self "
            << num(element.self_impedance.real()) << " + j" << num(element.self_impedance.imag())
            << " ohm\n";
  return 0;
}

int cmd_match_verify(const Options& o, double source_resistance) {
  const SimScenario s = resolve(o);
  const fs::path dir = prepare_out(o, s, "match-verify");
  const DipoleSpec dipole = s.dipole();
  Csv csv(dir / "match_verify.csv", {"array", "theta_deg", "port", "za_re_ohm", "za_im_ohm",
                                       "zt_deviation", "power_ratio"});
  const cdouble zs(source_resistance, 0.0);
  for (const ArraySpec& a : s.arrays) {
    const ArrayLayout layout = a.layout(dipole.wavelength());
    const ImpedanceMatrix z = array_impedance(layout, dipole, a.coupling);
    const MatchingNetwork m = optimal_matching(z.z, zs);
    const CMatrix zt = transmit_impedance(m, z.z);
    const int n = layout.size();
    const double dev = (zt - std::conj(zs) * CMatrix::Identity(n, n)).norm() /
                       (std::abs(zs) * std::sqrt(static_cast<double>(n)));
    for (double deg : theta_grid(s)) {
      const CVector steer = steering_vector(layout, dipole.wavenumber(), deg_to_rad(deg));
      const CVector i = optimal_currents(z.re(), steer, s.transmit_power());
      const ExcitationState st = power_transfer_check(m, z.z, i);
      const CVector za = active_impedance(z.z, i);
      for (int p = 0; p < n; ++p)
        csv.row({a.name, num(deg), std::to_string(p), num(za(p).real()), num(za(p).imag()),
                 num(dev), st.ratio ? num(*st.ratio) : "nan"});
    }
    std::cout << a.name << ": |Z_T - conj(Z_s) I|_F / (|Z_s| sqrt(N)) = " << num(dev) << "\n";
  }
  return 0;
}

void print_means(const MonteCarloResult& r) {
  for (const ArrayMetrics& m : r.arrays)
    std::cout << m.name << " (N=" << m.elements << "): mean sum-rate " << num(mean(m.sum_rate))
              << " bit/s, mean EE " << num(mean(m.ee)) << " bit/J, mean NSE " << num(mean(m.nse))
              << "\n";
  if (r.arrays.size() >= 2) {
    const ArrayMetrics& base = r.arrays[0];
    for (std::size_t a = 1; a < r.arrays.size(); ++a)
      std::cout << r.arrays[a].name << "/" << base.name << ": rate ratio "
                << num(mean(r.arrays[a].sum_rate) / mean(base.sum_rate)) << ", EE ratio "
                << num(mean(r.arrays[a].ee) / mean(base.ee)) << "\n";
  }
}

int cmd_p2p(const Options& o) {
  const SimScenario s = resolve(o);
  const fs::path dir = prepare_out(o, s, "p2p-cdf");
  const MonteCarloResult r = run_point_to_point(s);
  Csv trials(dir / "p2p_trials.csv", {"trial", "array", "rate_bps", "ee_bpj"});
  for (int t = 0; t < r.trials; ++t)
    for (const ArrayMetrics& m : r.arrays)
      trials.row({std::to_string(t), m.name, num(m.sum_rate[t]), num(m.ee[t])});
  Csv cdf(dir / "p2p_cdf.csv", {"array", "metric", "value", "probability"});
  for (const ArrayMetrics& m : r.arrays) {
    write_cdf(cdf, m.name, "rate_bps", m.sum_rate);
    write_cdf(cdf, m.name, "ee_bpj", m.ee);
  }
  print_means(r);
  return 0;
}

int cmd_mu(const Options& o, bool nse_only) {
  const SimScenario s = resolve(o);
  const fs::path dir = prepare_out(o, s, nse_only ? "nse-cdf" : "mu-cdf");
  const MonteCarloResult r = run_multiuser(s);
  if (nse_only) {
    Csv trials(dir / "nse_trials.csv", {"trial", "array", "nse"});
    for (int t = 0; t < r.trials; ++t)
      for (const ArrayMetrics& m : r.arrays) trials.row({std::to_string(t), m.name, num(m.nse[t])});
    Csv cdf(dir / "nse_cdf.csv", {"array", "metric", "value", "probability"});
    for (const ArrayMetrics& m : r.arrays) write_cdf(cdf, m.name, "nse", m.nse);
  } else {
    Csv trials(dir / "mu_trials.csv",
               {"trial", "array", "sum_rate_bps", "min_rate_bps", "ee_bpj", "nse"});
    for (int t = 0; t < r.trials; ++t)
      for (const ArrayMetrics& m : r.arrays)
        trials.row({std::to_string(t), m.name, num(m.sum_rate[t]), num(m.min_rate[t]),
                    num(m.ee[t]), num(m.nse[t])});
    Csv cdf(dir / "mu_cdf.csv", {"array", "metric", "value", "probability"});
    for (const ArrayMetrics& m : r.arrays) {
      write_cdf(cdf, m.name, "sum_rate_bps", m.sum_rate);
      write_cdf(cdf, m.name, "min_rate_bps", m.min_rate);
      write_cdf(cdf, m.name, "ee_bpj", m.ee);
      write_cdf(cdf, m.name, "nse", m.nse);
    }
  }
  print_means(r);
  return 0;
}

int cmd_sizing(const Options& o, int n, double dbar_wl, bool verbose) {
  const SimScenario s = resolve(o);
  const DipoleSpec dipole = s.dipole();
  const ElementImpedance element = element_impedance(dipole);
  const CouplingResistances r =
      coupling_resistances(dipole, {0.0, dbar_wl * dipole.wavelength()});
  const double rbar = r.values[1] / (element.loss_resistance + r.values[0]);
  const GroupSizing g =
      required_group_count(n, rbar, dipole.wavenumber() * dbar_wl * dipole.wavelength());
  std::cout << g.groups << "\n";
  if (verbose)
    std::cout << "exact " << num(g.exact) << ", antenna ratio " << num(g.antenna_ratio)
              << ", normalized mutual resistance " << num(rbar) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Superdirective dipole array modelling and link simulation"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c) {
    c->add_option("--config", o.config, "YAML scenario file")->check(CLI::ExistingFile);
    c->add_option("--preset", o.preset, "figure preset (fig3a, fig3b, fig4, fig6, fig7, fig8)");
    c->add_option("--seed", o.seed, "RNG seed override");
    c->add_option("--trials", o.trials, "Monte Carlo trial count override");
    c->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    c->add_option("--out", o.out, "output directory")->capture_default_str();
  };
  auto* gain = app.add_subcommand("gain-pattern", "normalized signal/interference power versus θ");
  auto* imp = app.add_subcommand("impedance", "impedance matrix by quadrature and induced EMF");
  auto* match = app.add_subcommand("match-verify", "multiport matching and active impedances");
  auto* p2p = app.add_subcommand("p2p-cdf", "point-to-point Monte Carlo");
  auto* mu = app.add_subcommand("mu-cdf", "multiuser Monte Carlo with OMP estimates");
  auto* nse = app.add_subcommand("nse-cdf", "channel-estimation NSE Monte Carlo");
  auto* sizing = app.add_subcommand("sizing", "NULA group count matching an uncoupled ULA");
  for (auto* c : {gain, imp, match, p2p, mu, nse, sizing}) common(c);
  double rs = 50.0;
  match->add_option("--source-resistance", rs, "R_s in ohms")->capture_default_str();
  int n = 200;
  double dbar = 0.2;
  bool verbose = false;
  sizing->add_option("--N", n, "ULA element count")->capture_default_str();
  sizing->add_option("--dbar", dbar, "intra-pair spacing in wavelengths")->capture_default_str();
  sizing->add_flag("--verbose", verbose, "print the real-valued count and antenna ratio");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gain->parsed()) return cmd_gain_pattern(o);
    if (imp->parsed()) return cmd_impedance(o);
    if (match->parsed()) return cmd_match_verify(o, rs);
    if (p2p->parsed()) return cmd_p2p(o);
    if (mu->parsed()) return cmd_mu(o, false);
    if (nse->parsed()) return cmd_mu(o, true);
    if (sizing->parsed()) return cmd_sizing(o, n, dbar, verbose);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
