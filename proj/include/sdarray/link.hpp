#pragma once

#include <string>
#include <vector>

#include "sdarray/beamforming.hpp"
#include "sdarray/chan_est.hpp"
#include "sdarray/channel.hpp"
#include "sdarray/em.hpp"
#include "sdarray/scenario.hpp"

namespace sdarray {

/// β = G_e(θ, φ) (λ / 4πr)² e^{−κ_abs r}.
double path_loss(const DipoleSpec& dipole, const ElementImpedance& element, double theta,
                 double phi, double distance, double absorption);

/// β_k|h_k^T w_k|² / (β_k Σ_{i≠k} |h_k^T w_i|² + Bσ²).
double sinr(std::size_t k, const std::vector<CVector>& channels, const std::vector<double>& betas,
            const BeamformerWeights& weights, double noise_power);

struct RateSummary {
  std::vector<double> rates;  // bit/s
  double sum_rate = 0.0;
  double min_rate = 0.0;
  double power_mw = 0.0;      // P_c
  double ee = 0.0;            // bit/J
};

RateSummary rate_and_ee(const std::vector<double>& sinrs, double bandwidth, const PowerModel& power,
                        int antennas, double transmit_power_mw, double estimation_power_mw);

/// Everything about one array that stays fixed across Monte Carlo trials.
struct PreparedArray {
  ArraySpec spec;
  ChannelModel model;
  int slots = 0;
  int beams = 0;
  Dictionary dictionary;
};

PreparedArray prepare_array(const SimScenario& s, const ArraySpec& spec);

struct ArrayMetrics {
  std::string name;
  int elements = 0;
  int beams = 0;
  std::vector<double> sum_rate;
  std::vector<double> min_rate;
  std::vector<double> ee;
  std::vector<double> nse;
};

struct MonteCarloResult {
  int trials = 0;
  std::vector<ArrayMetrics> arrays;
};

/// Single user, perfect CSI, MRT. User geometry is drawn once per trial and
/// shared by all arrays.
MonteCarloResult run_point_to_point(const SimScenario& s);

/// K users, OMP channel estimates used as the true channels for MRT (or the
/// true channels when perfect_csi is set).
MonteCarloResult run_multiuser(const SimScenario& s);

double mean(const std::vector<double>& v);

}  // namespace sdarray
