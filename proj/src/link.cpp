#include "sdarray/link.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "sdarray/constants.hpp"
#include "sdarray/error.hpp"
#include "sdarray/kernels.hpp"
#include "sdarray/rng.hpp"

namespace sdarray {

double path_loss(const DipoleSpec& dipole, const ElementImpedance& element, double theta,
                 double phi, double distance, double absorption) {
  require(distance > 0.0, "path_loss: distance must be positive");
  const double friis = dipole.wavelength() / (4.0 * kPi * distance);
  return element_gain(dipole, element, theta, phi) * friis * friis *
         std::exp(-absorption * distance);
}

double sinr(std::size_t k, const std::vector<CVector>& channels, const std::vector<double>& betas,
            const BeamformerWeights& weights, double noise_power) {
  require(k < channels.size() && channels.size() == betas.size() &&
              channels.size() == weights.w.size(),
          "sinr: inconsistent user count");
  const CVector& h = channels[k];
  double signal = 0.0;
  double interference = 0.0;
  for (std::size_t i = 0; i < weights.w.size(); ++i) {
    const double p = std::norm(kernels::dotu({h.data(), static_cast<std::size_t>(h.size())},
                                             {weights.w[i].data(),
                                              static_cast<std::size_t>(weights.w[i].size())}));
    (i == k ? signal : interference) += p;
  }
  return betas[k] * signal / (betas[k] * interference + noise_power);
}

RateSummary rate_and_ee(const std::vector<double>& sinrs, double bandwidth, const PowerModel& power,
                        int antennas, double transmit_power_mw, double estimation_power_mw) {
  RateSummary r;
  r.rates.reserve(sinrs.size());
  for (double s : sinrs) r.rates.push_back(bandwidth * std::log2(1.0 + s));
  r.sum_rate = std::accumulate(r.rates.begin(), r.rates.end(), 0.0);
  r.min_rate = r.rates.empty() ? 0.0 : *std::min_element(r.rates.begin(), r.rates.end());
  r.power_mw = power.total(antennas, static_cast<int>(sinrs.size()), transmit_power_mw,
                           estimation_power_mw);
  r.ee = r.sum_rate / (r.power_mw * 1e-3);
  return r;
}

PreparedArray prepare_array(const SimScenario& s, const ArraySpec& spec) {
  const DipoleSpec dipole = s.dipole();
  const ArrayLayout layout = spec.layout(dipole.wavelength());
  const double k = dipole.wavenumber();
  ChannelModel model = [&] {
    if (spec.coupling == Coupling::none) return ChannelModel(layout, k);
    const ImpedanceMatrix z = array_impedance(layout, dipole, spec.coupling);
    return ChannelModel(layout, k, z.re_normalized());
  }();
  const int n = layout.size();
  const int rf = s.pilot.rf_chains;
  const int slots =
      std::max(1, static_cast<int>(std::lround(s.pilot.beam_fraction * n / rf)));
  const int g = s.pilot.dictionary_size > 0 ? s.pilot.dictionary_size : n;
  Dictionary dict = build_dictionary(model, g, deg_to_rad(s.pilot.dictionary_theta_max_deg));
  return PreparedArray{spec, std::move(model), slots, slots * rf, std::move(dict)};
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

namespace {

struct UserDraw {
  double theta;
  double phi;
  double distance;
};

std::vector<UserDraw> draw_users(const SimScenario& s, int trial) {
  std::mt19937_64 gen = make_stream(s.seed, static_cast<std::uint64_t>(trial), 0);
  std::vector<UserDraw> users(s.users);
  for (UserDraw& u : users) {
    u.theta = deg_to_rad(uniform(gen, s.theta_deg.min, s.theta_deg.max));
    u.phi = deg_to_rad(uniform(gen, s.phi_deg.min, s.phi_deg.max));
    u.distance = uniform(gen, s.distance_m.min, s.distance_m.max);
  }
  return users;
}

// Runs body(trial) for every trial on a fixed pool; results are written by
// index, so the outcome does not depend on the thread count.
template <class Body>
void parallel_trials(int trials, int threads, Body body) {
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, trials);
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (int t = next++; t < trials; t = next++) {
      try {
        body(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = trials;
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (std::thread& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

MonteCarloResult allocate(const SimScenario& s, const std::vector<PreparedArray>& prepared) {
  MonteCarloResult r;
  r.trials = s.trials;
  for (const PreparedArray& p : prepared) {
    ArrayMetrics m;
    m.name = p.spec.name;
    m.elements = p.model.size();
    m.beams = p.beams;
    m.sum_rate.assign(s.trials, 0.0);
    m.min_rate.assign(s.trials, 0.0);
    m.ee.assign(s.trials, 0.0);
    m.nse.assign(s.trials, 0.0);
    r.arrays.push_back(std::move(m));
  }
  return r;
}

std::vector<PreparedArray> prepare_all(const SimScenario& s) {
  std::vector<PreparedArray> out;
  for (const ArraySpec& spec : s.arrays) out.push_back(prepare_array(s, spec));
  return out;
}

}  // namespace

MonteCarloResult run_point_to_point(const SimScenario& s) {
  s.validate();
  require(s.users == 1, "run_point_to_point: exactly one user is required");
  const DipoleSpec dipole = s.dipole();
  const ElementImpedance element = element_impedance(dipole);
  const std::vector<PreparedArray> prepared = prepare_all(s);
  MonteCarloResult result = allocate(s, prepared);
  const double pt = s.transmit_power();
  const double noise = s.bandwidth_hz * s.noise_density();

  parallel_trials(s.trials, s.threads, [&](int t) {
    const UserDraw u = draw_users(s, t)[0];
    const double beta =
        path_loss(dipole, element, u.theta, u.phi, u.distance, s.absorption_per_m);
    for (std::size_t a = 0; a < prepared.size(); ++a) {
      const std::vector<CVector> h{prepared[a].model.channel(u.theta)};
      const BeamformerWeights w = mrt_precoder(h, pt);
      const double snr = sinr(0, h, {beta}, w, noise);
      const RateSummary r =
          rate_and_ee({snr}, s.bandwidth_hz, s.power, prepared[a].model.size(), pt * 1e3, 0.0);
      ArrayMetrics& m = result.arrays[a];
      m.sum_rate[t] = r.sum_rate;
      m.min_rate[t] = r.min_rate;
      m.ee[t] = r.ee;
      m.nse[t] = 0.0;
    }
  });
  return result;
}

MonteCarloResult run_multiuser(const SimScenario& s) {
  s.validate();
  const DipoleSpec dipole = s.dipole();
  const ElementImpedance element = element_impedance(dipole);
  const std::vector<PreparedArray> prepared = prepare_all(s);
  MonteCarloResult result = allocate(s, prepared);
  const double pt = s.transmit_power();
  const double pp = s.pilot_power();
  const double noise = s.bandwidth_hz * s.noise_density();
  const double pilot_noise =
      s.pilot.noise == PilotNoise::density ? s.noise_density() : s.bandwidth_hz * s.noise_density();
  const int k_users = s.users;

  parallel_trials(s.trials, s.threads, [&](int t) {
    const std::vector<UserDraw> users = draw_users(s, t);
    std::vector<double> betas(k_users);
    for (int k = 0; k < k_users; ++k)
      betas[k] = path_loss(dipole, element, users[k].theta, users[k].phi, users[k].distance,
                           s.absorption_per_m);
    for (std::size_t a = 0; a < prepared.size(); ++a) {
      const PreparedArray& p = prepared[a];
      std::vector<CVector> h(k_users);
      std::vector<CVector> h_hat(k_users);
      for (int k = 0; k < k_users; ++k) {
        h[k] = p.model.channel(users[k].theta);
        if (s.perfect_csi) {
          h_hat[k] = h[k];
          continue;
        }
        std::mt19937_64 gen = make_stream(s.seed, static_cast<std::uint64_t>(t),
                                          1 + a * static_cast<std::uint64_t>(k_users) + k);
        const PilotDesign design = make_pilot_design(p.model.size(), s.pilot.rf_chains, p.slots, pp, gen);
        const CVector y = measure(h[k], betas[k], design, pilot_noise, gen);
        h_hat[k] = omp_single_path(y, design, p.dictionary).estimate;
      }
      const BeamformerWeights w = mrt_precoder(h_hat, pt);
      std::vector<double> sinrs(k_users);
      for (int k = 0; k < k_users; ++k) sinrs[k] = sinr(k, h, betas, w, noise);
      const double p_ce = s.perfect_csi ? 0.0 : channel_estimation_power(k_users, p.beams, pp);
      const RateSummary r =
          rate_and_ee(sinrs, s.bandwidth_hz, s.power, p.model.size(), pt * 1e3, p_ce * 1e3);
      ArrayMetrics& m = result.arrays[a];
      m.sum_rate[t] = r.sum_rate;
      m.min_rate[t] = r.min_rate;
      m.ee[t] = r.ee;
      m.nse[t] = s.perfect_csi ? 0.0 : nse(h, h_hat);
    }
  });
  return result;
}

}  // namespace sdarray
