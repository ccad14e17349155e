#pragma once

#include <functional>
#include <vector>

#include "sdarray/linalg.hpp"

namespace sdarray {

/// a^H Re{Z}^{-1} a.
double gain_quadratic_form(const RMatrix& re_z, const CVector& a);

/// Currents maximising the array gain towards a, scaled so that ½ i^H Re{Z} i = P_t.
CVector optimal_currents(const RMatrix& re_z, const CVector& a, double pt);

/// G = G_e (R_loss + R_i) |a^H i|² / (i^H Re{Z} i).
double array_gain(const RMatrix& re_z, const CVector& a, const CVector& currents,
                  double element_gain, double self_resistance);

/// G_max = G_e (R_loss + R_i) a^H Re{Z}^{-1} a.
double max_array_gain(const RMatrix& re_z, const CVector& a, double element_gain,
                      double self_resistance);

/// v_s = j2 sqrt(2 R_s P_t / (a^H Re{Z}^{-1} a)) Re{Z}^{-1/2} a.
CVector source_voltages(const RMatrix& re_z, const CVector& a, double pt, double source_resistance);

/// Principal square root of a real symmetric 2×2 matrix in closed form,
/// (A + sI)/t with s = sqrt(det A), t = sqrt(tr A + 2s).
RMatrix matrix_sqrt_2x2(const RMatrix& a);

/// Common magnitude of both entries of Re{Z_0}^{-1/2} a_0(θ) for a pair with
/// self resistance r_self, mutual resistance r_m and phase κd̄.
double pair_source_magnitude(double r_self, double r_m, double kdbar, double theta);

/// Per-element decomposition w = w_BB · exp(jφ) of one user's precoder.
struct HybridFactor {
  RVector phases;
  cdouble baseband;
  bool uniform_magnitude = false;
};

struct BeamformerWeights {
  std::vector<CVector> w;
  std::vector<HybridFactor> hybrid;
  double total_power() const;  // Σ‖w_k‖²
};

/// w_k = sqrt(2P_t/K) conj(h_k)/‖h_k‖.
BeamformerWeights mrt_precoder(const std::vector<CVector>& channels, double pt);

/// Two-element groups: normalised mutual resistance, wavenumber and spacings.
struct PairGeometry {
  double rbar_m = 0.0;
  double wavenumber = 0.0;
  double dbar = 0.0;
  double dg = 0.0;
};

/// N_g · 2(1 − R̄_m cos(κd̄ cosθ)) / (1 − R̄_m²).
double signal_power_closed_form(int groups, const PairGeometry& g, double theta);

/// |a^H(θ_k) Re{Z̄}^{-1} a(θ_i)|² / (a^H(θ_i) Re{Z̄}^{-1} a(θ_i)) for the
/// block-diagonal NULA model. Only two-element groups have a closed form.
double interference_power_closed_form(int groups, int per_group, const PairGeometry& g,
                                      double theta_k, double theta_i);

/// D_N(x) = sin(Nx/2) / (N sin(x/2)), continuous at x = 2πm.
double dirichlet_sinc(int n, double x);

struct GroupSizing {
  int groups = 0;
  double exact = 0.0;          // N(1 − R̄²) / (2(1 − R̄ cos κd̄))
  double antenna_ratio = 0.0;  // (1 − R̄²) / (1 − R̄ cos κd̄)
};

/// Number of two-element groups giving a NULA the same broadside-to-endfire
/// SNR as an uncoupled N-element ULA. `groups` is floor(exact).
GroupSizing required_group_count(int n, double rbar_m, double kdbar);

/// First θ in [lo, hi] where f changes sign, located by a uniform scan
/// followed by bisection. Throws NumericalError when no sign change exists.
double crossover_angle(const std::function<double(double)>& f, double lo, double hi,
                       int scan_points = 512, double tolerance = 1e-10);

}  // namespace sdarray
