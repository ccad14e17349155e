#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sdarray/channel.hpp"
#include "sdarray/linalg.hpp"

namespace sdarray {

/// Randomised hybrid pilot combiners. Slot t uses V_t = V_RF,t V_BB,t with
/// ±1/√N analog entries and V_BB,t = D_t^{-1}, where D_t^H D_t is the
/// Cholesky factorisation of V_RF,t^H V_RF,t.
struct PilotDesign {
  int antennas = 0;
  int rf_chains = 0;
  int slots = 0;
  double pilot_power = 0.0;  // W
  double epsilon = 0.0;      // error bound of the l1 formulation; not used by single-atom OMP
  std::uint64_t seed = 0;
  std::vector<RMatrix> rf;        // N × N_RF
  std::vector<RMatrix> baseband;  // N_RF × N_RF, upper triangular

  int beams() const { return slots * rf_chains; }
  /// V̄ = [V_1, …, V_T], N × N_beam.
  RMatrix combined() const;
};

PilotDesign make_pilot_design(int antennas, int rf_chains, int slots, double pilot_power,
                              std::uint64_t seed);
PilotDesign make_pilot_design(int antennas, int rf_chains, int slots, double pilot_power,
                              std::mt19937_64& gen);

/// ȳ = sqrt(βP_p) V̄^T h + n̄, where slot t receives V_t^T n_t with
/// n_t ~ CN(0, σ² I_N).
CVector measure(const CVector& h, double beta, const PilotDesign& design, double noise_variance,
                std::mt19937_64& gen);
CVector measure(const CVector& h, double beta, const PilotDesign& design, double noise_variance,
                std::uint64_t seed);

struct Dictionary {
  RVector angles;   // θ̄_g = θ_max g / G
  CMatrix columns;  // N × G
  double theta_max = 0.0;

  int size() const { return static_cast<int>(columns.cols()); }
};

Dictionary build_dictionary(const ChannelModel& model, int size, double theta_max);

struct EstimationResult {
  int index = 0;
  CVector estimate;
  bool degenerate = false;  // ȳ was zero; index 0 returned
};

/// g* = argmax_g |Φ(g)^H ȳ| with Φ given explicitly; ties go to the lowest index.
EstimationResult omp_single_path(const CVector& y, const CMatrix& phi, const Dictionary& dict);

/// Same estimator with Φ = sqrt(P_p) V̄^T H̄ left factored: the correlations
/// are |H̄^H (V̄ ȳ)| up to the positive factor sqrt(P_p).
EstimationResult omp_single_path(const CVector& y, const PilotDesign& design,
                                 const Dictionary& dict);

/// Φ = sqrt(P_p) V̄^T H̄.
CMatrix sensing_matrix(const PilotDesign& design, const Dictionary& dict);

/// (1/K) Σ_k ‖h_k − ĥ_k‖² / ‖h_k‖².
double nse(const std::vector<CVector>& truth, const std::vector<CVector>& estimates);

/// P_CE = K N_beam P_p.
double channel_estimation_power(int users, int beams, double pilot_power);

}  // namespace sdarray
