#pragma once

#include <optional>

#include "sdarray/linalg.hpp"

namespace sdarray {

/// Lossless 2N-port network between N sources and N antenna ports,
/// Z_M = [M11 M12; M21 M22] with each block N×N.
struct MatchingNetwork {
  CMatrix m11, m12, m21, m22;
  cdouble source_impedance{50.0, 0.0};

  int ports() const { return static_cast<int>(m11.rows()); }
  CMatrix full() const;
};

MatchingNetwork optimal_matching(const CMatrix& z, cdouble source_impedance = {50.0, 0.0});

/// Z_T = M11 − M12 (Z + M22)^{-1} M21.
CMatrix transmit_impedance(const MatchingNetwork& m, const CMatrix& z);

struct ExcitationState {
  CVector currents;          // i at the antenna ports
  CVector matching_currents; // i_M at the source side
  CVector source_voltages;   // v_s
  double p_total = 0.0;      // R_s ‖i_M‖²
  double p_in = 0.0;         // ½ i^H Re{Z} i
  std::optional<double> ratio;  // p_total / p_in, undefined for i = 0
};

/// Solves the network for the source-side state that drives currents i into Z.
ExcitationState power_transfer_check(const MatchingNetwork& m, const CMatrix& z,
                                     const CVector& currents);

/// [Z_a]_nn = (Z i)_n / i_n.
CVector active_impedance(const CMatrix& z, const CVector& currents);

struct DecompositionReport {
  bool ok = false;
  double deviation = 0.0;  // relative to max |Z_M|
};

/// Whether a 2N×2N network built for N_g two-element groups is a direct sum of
/// N_g identical four-port networks on the partitioned ports.
DecompositionReport pairwise_decomposition_check(const MatchingNetwork& m, int groups,
                                                 double tolerance = 1e-12);

}  // namespace sdarray
