#include "sdarray/matching.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "sdarray/error.hpp"

namespace sdarray {

CMatrix MatchingNetwork::full() const {
  const Eigen::Index n = m11.rows();
  CMatrix out(2 * n, 2 * n);
  out << m11, m12, m21, m22;
  return out;
}

MatchingNetwork optimal_matching(const CMatrix& z, cdouble source_impedance) {
  require(z.rows() == z.cols() && z.rows() > 0, "optimal_matching: Z must be square");
  require(source_impedance.real() > 0.0, "optimal_matching: source resistance must be positive");
  const Eigen::Index n = z.rows();
  const SpdSpectrum spec(z.real(), 1e-12, true);
  const CMatrix root = spec.sqrt().cast<cdouble>();
  MatchingNetwork m;
  m.source_impedance = source_impedance;
  m.m11 = -kJ * source_impedance.imag() * CMatrix::Identity(n, n);
  m.m12 = -kJ * std::sqrt(source_impedance.real()) * root;
  m.m21 = m.m12;
  m.m22 = -kJ * z.imag().cast<cdouble>();
  return m;
}

CMatrix transmit_impedance(const MatchingNetwork& m, const CMatrix& z) {
  require(z.rows() == m.m22.rows() && z.cols() == m.m22.cols(),
          "transmit_impedance: dimension mismatch");
  const Eigen::FullPivLU<CMatrix> lu(z + m.m22);
  if (!lu.isInvertible()) throw NumericalError("transmit_impedance: Z + Z_M22 is singular");
  return m.m11 - m.m12 * lu.solve(m.m21);
}

ExcitationState power_transfer_check(const MatchingNetwork& m, const CMatrix& z,
                                     const CVector& currents) {
  require(currents.size() == z.rows(), "power_transfer_check: dimension mismatch");
  ExcitationState s;
  s.currents = currents;
  const Eigen::FullPivLU<CMatrix> lu(m.m21);
  if (!lu.isInvertible()) throw NumericalError("power_transfer_check: Z_M21 is singular");
  s.matching_currents = lu.solve((z + m.m22) * currents);
  const Eigen::Index n = z.rows();
  s.source_voltages = (m.source_impedance * CMatrix::Identity(n, n) + m.m11) * s.matching_currents -
                      m.m12 * currents;
  s.p_total = m.source_impedance.real() * s.matching_currents.squaredNorm();
  s.p_in = 0.5 * hermitian_form(currents, z.real(), currents).real();
  if (s.p_in > 0.0) s.ratio = s.p_total / s.p_in;
  return s;
}

CVector active_impedance(const CMatrix& z, const CVector& currents) {
  require(currents.size() == z.rows(), "active_impedance: dimension mismatch");
  const CVector v = z * currents;
  CVector out(currents.size());
  for (Eigen::Index n = 0; n < currents.size(); ++n) {
    if (currents(n) == cdouble(0.0, 0.0)) {
      std::ostringstream msg;
      msg << "active_impedance: current at port " << n << " is zero";
      throw ValidationError(msg.str());
    }
    out(n) = v(n) / currents(n);
  }
  return out;
}

DecompositionReport pairwise_decomposition_check(const MatchingNetwork& m, int groups,
                                                 double tolerance) {
  const int n = m.ports();
  require(groups >= 1 && n == 2 * groups,
          "pairwise_decomposition_check: network must have two ports per group");
  const CMatrix full = m.full();
  // Ports of group g: sources 2g, 2g+1 and antennas N+2g, N+2g+1.
  std::vector<int> order;
  for (int g = 0; g < groups; ++g)
    for (int p : {2 * g, 2 * g + 1, n + 2 * g, n + 2 * g + 1}) order.push_back(p);
  CMatrix permuted(2 * n, 2 * n);
  for (int r = 0; r < 2 * n; ++r)
    for (int c = 0; c < 2 * n; ++c) permuted(r, c) = full(order[r], order[c]);

  const CMatrix block0 = permuted.topLeftCorner(4, 4);
  double dev = 0.0;
  for (int r = 0; r < 2 * n; ++r) {
    for (int c = 0; c < 2 * n; ++c) {
      const cdouble expected = r / 4 == c / 4 ? block0(r % 4, c % 4) : cdouble(0.0, 0.0);
      dev = std::max(dev, std::abs(permuted(r, c) - expected));
    }
  }
  const double scale = std::max(full.cwiseAbs().maxCoeff(), 1e-300);
  DecompositionReport report;
  report.deviation = dev / scale;
  report.ok = report.deviation <= tolerance;
  return report;
}

}  // namespace sdarray
