#include "sdarray/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sdarray/error.hpp"

namespace sdarray {
namespace {

void check_dims(const RMatrix& re_z, const CVector& v, const char* what) {
  if (re_z.rows() != re_z.cols() || re_z.rows() != v.size()) {
    std::ostringstream msg;
    msg << what << ": Re{Z} is " << re_z.rows() << "x" << re_z.cols() << " but the vector has "
        << v.size() << " entries";
    throw ValidationError(msg.str());
  }
}

}  // namespace

double gain_quadratic_form(const RMatrix& re_z, const CVector& a) {
  check_dims(re_z, a, "gain_quadratic_form");
  const SpdSpectrum spec(re_z);
  return a.dot(spec.solve(a)).real();
}

CVector optimal_currents(const RMatrix& re_z, const CVector& a, double pt) {
  check_dims(re_z, a, "optimal_currents");
  require(pt > 0.0, "optimal_currents: transmit power must be positive");
  const SpdSpectrum spec(re_z);
  const CVector x = spec.solve(a);
  const double q = a.dot(x).real();
  return std::sqrt(2.0 * pt / q) * x;
}

double array_gain(const RMatrix& re_z, const CVector& a, const CVector& currents,
                  double element_gain, double self_resistance) {
  check_dims(re_z, currents, "array_gain");
  const double denom = hermitian_form(currents, re_z, currents).real();
  require(denom > 0.0, "array_gain: current vector must be nonzero");
  return element_gain * self_resistance * std::norm(a.dot(currents)) / denom;
}

double max_array_gain(const RMatrix& re_z, const CVector& a, double element_gain,
                      double self_resistance) {
  return element_gain * self_resistance * gain_quadratic_form(re_z, a);
}

CVector source_voltages(const RMatrix& re_z, const CVector& a, double pt,
                        double source_resistance) {
  check_dims(re_z, a, "source_voltages");
  require(pt > 0.0, "source_voltages: transmit power must be positive");
  require(source_resistance > 0.0, "source_voltages: source resistance must be positive");
  const SpdSpectrum spec(re_z);
  const double q = a.dot(spec.solve(a)).real();
  const CVector shaped = spec.inv_sqrt().cast<cdouble>() * a;
  return kJ * 2.0 * std::sqrt(2.0 * source_resistance * pt / q) * shaped;
}

RMatrix matrix_sqrt_2x2(const RMatrix& a) {
  require(a.rows() == 2 && a.cols() == 2, "matrix_sqrt_2x2: matrix must be 2x2");
  require(std::abs(a(0, 1) - a(1, 0)) <= 1e-12 * a.cwiseAbs().maxCoeff(),
          "matrix_sqrt_2x2: matrix must be symmetric");
  const double det = a.determinant();
  require(det >= 0.0, "matrix_sqrt_2x2: matrix has a negative determinant");
  const double s = std::sqrt(det);
  const double t2 = a.trace() + 2.0 * s;
  if (!(t2 > 0.0))
    throw NumericalError("matrix_sqrt_2x2: trace + 2 sqrt(det) is zero; no real square root");
  return (a + s * RMatrix::Identity(2, 2)) / std::sqrt(t2);
}

double pair_source_magnitude(double r_self, double r_m, double kdbar, double theta) {
  if (!(std::abs(r_m) < r_self))
    throw ValidationError("pair_source_magnitude: |R_m| must be smaller than R_self");
  const double c = std::cos(kdbar * std::cos(theta));
  return std::sqrt((r_self - r_m * c) / ((r_self - r_m) * (r_self + r_m)));
}

double BeamformerWeights::total_power() const {
  double p = 0.0;
  for (const CVector& wk : w) p += wk.squaredNorm();
  return p;
}

BeamformerWeights mrt_precoder(const std::vector<CVector>& channels, double pt) {
  require(!channels.empty(), "mrt_precoder: at least one user is required");
  require(pt > 0.0, "mrt_precoder: transmit power must be positive");
  const double scale = std::sqrt(2.0 * pt / static_cast<double>(channels.size()));
  BeamformerWeights out;
  for (std::size_t k = 0; k < channels.size(); ++k) {
    const double norm = channels[k].norm();
    if (!(norm > 0.0)) {
      std::ostringstream msg;
      msg << "mrt_precoder: channel of user " << k << " is zero";
      throw ValidationError(msg.str());
    }
    CVector wk = (scale / norm) * channels[k].conjugate();
    HybridFactor hf;
    hf.phases = wk.unaryExpr([](const cdouble& v) { return std::arg(v); }).real();
    const RVector mag = wk.cwiseAbs();
    const double mean = mag.mean();
    hf.baseband = mean;
    hf.uniform_magnitude = (mag.array() - mean).abs().maxCoeff() <= 1e-10 * mean;
    out.w.push_back(std::move(wk));
    out.hybrid.push_back(std::move(hf));
  }
  return out;
}

double signal_power_closed_form(int groups, const PairGeometry& g, double theta) {
  require(std::abs(g.rbar_m) < 1.0, "signal_power_closed_form: |R̄_m| must be below 1");
  const double x = g.wavenumber * g.dbar * std::cos(theta);
  return groups * 2.0 * (1.0 - g.rbar_m * std::cos(x)) / (1.0 - g.rbar_m * g.rbar_m);
}

double interference_power_closed_form(int groups, int per_group, const PairGeometry& g,
                                      double theta_k, double theta_i) {
  require(per_group == 2, "interference_power_closed_form: only two-element groups are supported");
  require(std::abs(g.rbar_m) < 1.0, "interference_power_closed_form: |R̄_m| must be below 1");
  const double r = g.rbar_m;
  const double kd = g.wavenumber * g.dbar;
  const double ck = std::cos(theta_k);
  const double ci = std::cos(theta_i);
  const double delta = ck - ci;
  const double period = g.dg + (per_group - 1) * g.dbar;
  const double dsinc = dirichlet_sinc(groups, g.wavenumber * period * delta);
  const cdouble pair = 1.0 + std::polar(1.0, kd * delta) -
                       r * (std::polar(1.0, kd * ck) + std::polar(1.0, -kd * ci));
  return groups * dsinc * dsinc * std::norm(pair) /
         (2.0 * (1.0 - r * r) * (1.0 - r * std::cos(kd * ci)));
}

double dirichlet_sinc(int n, double x) {
  require(n >= 1, "dirichlet_sinc: N must be positive");
  const double half = 0.5 * x;
  const double den = std::sin(half);
  if (std::abs(den) < 1e-12) return std::cos(n * half) / std::cos(half);
  return std::sin(n * half) / (n * den);
}

GroupSizing required_group_count(int n, double rbar_m, double kdbar) {
  require(n >= 1, "required_group_count: N must be positive");
  require(std::abs(rbar_m) < 1.0, "required_group_count: |R̄_m| must be below 1");
  GroupSizing s;
  s.antenna_ratio = (1.0 - rbar_m * rbar_m) / (1.0 - rbar_m * std::cos(kdbar));
  s.exact = 0.5 * n * s.antenna_ratio;
  s.groups = std::max(1, static_cast<int>(std::floor(s.exact + 1e-9)));
  return s;
}

double crossover_angle(const std::function<double(double)>& f, double lo, double hi,
                       int scan_points, double tolerance) {
  require(hi > lo && scan_points >= 2, "crossover_angle: invalid search interval");
  double a = lo;
  double fa = f(a);
  for (int i = 1; i <= scan_points; ++i) {
    const double b = lo + (hi - lo) * i / scan_points;
    const double fb = f(b);
    if (fa == 0.0) return a;
    if (std::signbit(fa) != std::signbit(fb)) {
      double left = a;
      double right = b;
      double fl = fa;
      while (right - left > tolerance) {
        const double mid = 0.5 * (left + right);
        const double fm = f(mid);
        if (std::signbit(fm) == std::signbit(fl)) {
          left = mid;
          fl = fm;
        } else {
          right = mid;
        }
      }
      return 0.5 * (left + right);
    }
    a = b;
    fa = fb;
  }
  throw NumericalError("crossover_angle: no sign change in the search interval");
}

}  // namespace sdarray
