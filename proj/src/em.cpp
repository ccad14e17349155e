#include "sdarray/em.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "sdarray/constants.hpp"
#include "sdarray/error.hpp"
#include "sdarray/kernels.hpp"
#include "sdarray/quadrature.hpp"
#include "sdarray/special.hpp"

namespace sdarray {
namespace {

double checked_sin_half(const DipoleSpec& dipole) {
  const double s = std::sin(dipole.half_phase());
  if (std::abs(s) < 1e-9)
    throw ValidationError("dipole length is an integer multiple of the wavelength; "
                          "the sinusoidal-current normalisation is singular");
  return s;
}

}  // namespace

DipoleSpec DipoleSpec::from_wavelengths(double frequency, double length_wl, double radius_wl,
                                        double conductivity) {
  const double lambda = kSpeedOfLight / frequency;
  return DipoleSpec{length_wl * lambda, radius_wl * lambda, conductivity, frequency};
}

DipoleSpec DipoleSpec::reference() {
  return from_wavelengths(300e9, 0.5, 1.0 / 500.0, kCopperConductivity);
}

double DipoleSpec::wavelength() const { return kSpeedOfLight / frequency; }
double DipoleSpec::wavenumber() const { return 2.0 * kPi / wavelength(); }

void DipoleSpec::validate() const {
  require(std::isfinite(frequency) && frequency > 0.0, "dipole.frequency must be positive");
  require(std::isfinite(length) && length > 0.0, "dipole.length must be positive");
  require(std::isfinite(radius) && radius > 0.0, "dipole.radius must be positive");
  require(radius < 0.1 * length, "dipole.radius must be much smaller than dipole.length");
  require(conductivity > 0.0, "dipole.conductivity must be positive");
  checked_sin_half(*this);
}

namespace {

// (cos(kh·c) − cos(kh)) / sin(kh) with 1 ∓ c recovered from s2 = 1 − c²,
// free of cancellation near the axis.
double pattern_numerator(double kh, double c, double s2) {
  const double one_minus = c >= 0.0 ? s2 / (1.0 + c) : 1.0 - c;
  const double one_plus = c >= 0.0 ? 1.0 + c : s2 / (1.0 - c);
  return 2.0 * std::sin(0.5 * kh * one_plus) * std::sin(0.5 * kh * one_minus) / std::sin(kh);
}

}  // namespace

SphericalField field_pattern(const DipoleSpec& dipole, double theta, double phi) {
  const double ct = std::cos(theta);
  const double cp = std::cos(phi);
  const double sp = std::sin(phi);
  const double denom = sp * sp + cp * cp * ct * ct;
  SphericalField out{0.0, 0.0, theta, phi};
  if (denom < 1e-30) return out;
  const double common =
      pattern_numerator(dipole.half_phase(), cp * std::sin(theta), denom) / denom;
  out.f_theta = common * ct * cp;
  out.f_phi = -common * sp;
  return out;
}

double pattern_norm2(const DipoleSpec& dipole, double cos_psi) {
  const double c = std::clamp(cos_psi, -1.0, 1.0);
  const double s2 = (1.0 - c) * (1.0 + c);
  if (s2 <= 0.0) return 0.0;
  const double num = pattern_numerator(dipole.half_phase(), c, s2);
  return num * num / s2;
}

double loss_resistance(const DipoleSpec& dipole) {
  require(dipole.conductivity > 0.0, "loss_resistance: conductivity must be positive");
  const double s = checked_sin_half(dipole);
  const double k = dipole.wavenumber();
  const double kl = k * dipole.length;
  const double skin = std::sqrt(dipole.frequency * kMu0 / (kPi * dipole.conductivity));
  return (kl - std::sin(kl)) / (4.0 * k * dipole.radius * s * s) * skin;
}

cdouble mutual_impedance(const DipoleSpec& dipole, double spacing) {
  require(spacing > 0.0, "mutual_impedance: spacing must be positive");
  const double k = dipole.wavenumber();
  const double h = 0.5 * dipole.length;
  const double kh = k * h;
  const double s = checked_sin_half(dipole);
  const double d2 = spacing * spacing;

  // Z21 = (η/4π) Σ_c coef_c [e^{jκh} J(c,−1) − e^{−jκh} J(c,+1)], where
  // J(c,s) = ∫_0^h e^{−jκR_c}/R_c e^{jsκz} dz, R_c = sqrt(d² + (z−c)²),
  // integrates in closed form through u = κ(R − s·w), w = z − c.
  struct Source {
    double center;
    double coef;
  };
  const std::array<Source, 3> sources{{{h, 1.0}, {-h, 1.0}, {0.0, -2.0 * std::cos(kh)}}};
  cdouble total{0.0, 0.0};
  for (const Source& src : sources) {
    for (const int sgn : {-1, 1}) {
      auto u = [&](double w) { return k * (std::sqrt(d2 + w * w) - sgn * w); };
      const double w_hi = h - src.center;
      const double w_lo = -src.center;
      const cdouble j_term = std::polar(1.0, sgn * k * src.center) * static_cast<double>(-sgn) *
                             (exp_integral_kernel(u(w_hi)) - exp_integral_kernel(u(w_lo)));
      const cdouble pref = sgn < 0 ? std::polar(1.0, kh) : -std::polar(1.0, -kh);
      total += src.coef * pref * j_term;
    }
  }
  return kFreeSpaceImpedance / (4.0 * kPi) * total / (s * s);
}

cdouble self_impedance(const DipoleSpec& dipole) {
  return loss_resistance(dipole) + mutual_impedance(dipole, dipole.radius);
}

ElementImpedance element_impedance(const DipoleSpec& dipole) {
  ElementImpedance e;
  e.loss_resistance = loss_resistance(dipole);
  e.self_impedance = e.loss_resistance + mutual_impedance(dipole, dipole.radius);
  e.input_resistance = e.self_impedance.real() - e.loss_resistance;
  return e;
}

double element_gain(const DipoleSpec& dipole, const ElementImpedance& element, double theta,
                    double phi) {
  const double f2 = field_pattern(dipole, theta, phi).norm2();
  return kFreeSpaceImpedance * f2 / (kPi * element.self_resistance());
}

namespace {

// Σ_φ w_φ ‖F‖²(u, φ) on a tensor rule in (u = cosθ, φ), pre-scaled by η/4π².
std::vector<double> polar_weights(const DipoleSpec& dipole, const QuadratureRule& u_rule,
                                  const QuadratureRule& phi_rule) {
  std::vector<double> cos_phi(phi_rule.nodes.size());
  for (std::size_t p = 0; p < cos_phi.size(); ++p) cos_phi[p] = std::cos(phi_rule.nodes[p]);
  const double scale = kFreeSpaceImpedance / (4.0 * kPi * kPi);
  std::vector<double> w(u_rule.nodes.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double u = u_rule.nodes[j];
    const double sin_theta = std::sqrt(std::max(0.0, (1.0 - u) * (1.0 + u)));
    double acc = 0.0;
    for (std::size_t p = 0; p < cos_phi.size(); ++p)
      acc += phi_rule.weights[p] * pattern_norm2(dipole, cos_phi[p] * sin_theta);
    w[j] = scale * u_rule.weights[j] * acc;
  }
  return w;
}

std::vector<double> evaluate(const DipoleSpec& dipole, const std::vector<double>& spacings,
                             int order_u, int order_phi) {
  const QuadratureRule u_rule = gauss_legendre(order_u, -1.0, 1.0);
  const QuadratureRule phi_rule = gauss_legendre(order_phi, 0.0, 2.0 * kPi);
  const std::vector<double> w = polar_weights(dipole, u_rule, phi_rule);
  const double k = dipole.wavenumber();
  std::vector<double> out(spacings.size());
  for (std::size_t i = 0; i < spacings.size(); ++i)
    out[i] = kernels::cosine_moment(w, u_rule.nodes, k * spacings[i]);
  return out;
}

int next_pow2(double x) {
  int n = 1;
  while (n < x) n <<= 1;
  return n;
}

}  // namespace

CouplingResistances coupling_resistances(const DipoleSpec& dipole,
                                         const std::vector<double>& spacings,
                                         const QuadratureOptions& options) {
  dipole.validate();
  for (double s : spacings) require(s >= 0.0, "coupling_resistances: spacings must be >= 0");
  std::vector<double> with_self = spacings;
  with_self.push_back(0.0);  // R_i sets the tolerance scale
  const double max_spacing = *std::max_element(with_self.begin(), with_self.end());
  const double omega = dipole.wavenumber() * max_spacing;

  int order = next_pow2(std::max(32.0, 0.5 * omega + 32.0));
  auto phi_order = [](int n) { return std::min(n, 256); };
  std::vector<double> prev = evaluate(dipole, with_self, order, phi_order(order));
  double change = std::numeric_limits<double>::infinity();
  while (true) {
    const int next = order * 2;
    if (next > options.max_order) {
      std::ostringstream msg;
      msg << "coupling quadrature did not converge: max change " << change << " ohm at order "
          << order << " (tolerance " << options.relative_tolerance * prev.back() << ")";
      throw NumericalError(msg.str());
    }
    std::vector<double> cur = evaluate(dipole, with_self, next, phi_order(next));
    change = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i) change = std::max(change, std::abs(cur[i] - prev[i]));
    order = next;
    prev = std::move(cur);
    if (change < options.relative_tolerance * prev.back()) break;
  }
  CouplingResistances out;
  out.values.assign(prev.begin(), prev.end() - 1);
  out.error_estimate = change;
  out.order_u = order;
  out.order_phi = phi_order(order);
  return out;
}

namespace {

// Distinct |z_n − z_m| with an index map; spacings closer than `tol` merge.
struct SpacingTable {
  std::vector<double> values;
  std::vector<int> index;  // row-major N×N
};

SpacingTable spacing_table(const std::vector<double>& z, double tol) {
  const std::size_t n = z.size();
  std::vector<double> all;
  all.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) all.push_back(std::abs(z[i] - z[j]));
  std::vector<double> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  SpacingTable t;
  for (double v : sorted)
    if (t.values.empty() || v - t.values.back() > tol) t.values.push_back(v);
  t.index.resize(all.size());
  for (std::size_t k = 0; k < all.size(); ++k) {
    auto it = std::lower_bound(t.values.begin(), t.values.end(), all[k] - tol);
    t.index[k] = static_cast<int>(it - t.values.begin());
  }
  return t;
}

}  // namespace

RealImpedanceMatrix impedance_real_quadrature(const ArrayLayout& layout, const DipoleSpec& dipole,
                                              const QuadratureOptions& options) {
  const auto& z = layout.positions();
  const int n = layout.size();
  const SpacingTable table = spacing_table(z, 1e-9 * dipole.wavelength());
  const CouplingResistances r = coupling_resistances(dipole, table.values, options);
  RealImpedanceMatrix out;
  out.re_ideal.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.re_ideal(i, j) = r.values[table.index[i * n + j]];
  out.error_estimate = r.error_estimate;
  out.order_u = r.order_u;
  out.order_phi = r.order_phi;

  const double r_loss = loss_resistance(dipole);
  const RMatrix lossy = out.re_ideal + r_loss * RMatrix::Identity(n, n);
  const Eigen::SelfAdjointEigenSolver<RMatrix> eig(lossy, Eigen::EigenvaluesOnly);
  const double min_ev = eig.eigenvalues().minCoeff();
  if (min_ev <= -out.error_estimate * n) {
    std::ostringstream msg;
    msg << "Re{Z_ideal} + R_loss I is not positive definite: smallest eigenvalue " << min_ev
        << " ohm (quadrature error estimate " << out.error_estimate << ")";
    throw NumericalError(msg.str());
  }
  return out;
}

PowerBalance radiated_and_input_power(const CVector& currents, const RMatrix& re_ideal,
                                      double r_loss) {
  require(re_ideal.rows() == currents.size() && re_ideal.cols() == currents.size(),
          "radiated_and_input_power: dimension mismatch");
  PowerBalance p;
  p.radiated = 0.5 * hermitian_form(currents, re_ideal, currents).real();
  p.loss = 0.5 * r_loss * currents.squaredNorm();
  p.input = p.radiated + p.loss;
  return p;
}

ImpedanceMatrix array_impedance(const ArrayLayout& layout, const DipoleSpec& dipole,
                                Coupling coupling, const QuadratureOptions& options) {
  dipole.validate();
  const int n = layout.size();
  const ElementImpedance element = element_impedance(dipole);
  ImpedanceMatrix out;
  if (coupling == Coupling::none) {
    out.z = element.self_impedance * CMatrix::Identity(n, n);
    out.normalization = element.self_resistance();
    return out;
  }

  const auto& z = layout.positions();
  const int group = layout.per_group();
  const SpacingTable table = spacing_table(z, 1e-9 * dipole.wavelength());
  std::vector<double> wanted = table.values;
  if (coupling == Coupling::block) {
    // Only intra-group spacings are needed.
    wanted.clear();
    for (int i = 0; i < group; ++i) wanted.push_back(i * layout.intra_spacing());
  }
  const CouplingResistances r = coupling_resistances(dipole, wanted, options);
  std::vector<double> reactance(wanted.size());
  for (std::size_t k = 0; k < wanted.size(); ++k)
    reactance[k] = wanted[k] > 0.0 ? mutual_impedance(dipole, wanted[k]).imag()
                                   : element.self_impedance.imag();

  auto lookup = [&](double spacing) {
    auto it = std::lower_bound(wanted.begin(), wanted.end(), spacing - 1e-9 * dipole.wavelength());
    return static_cast<std::size_t>(it - wanted.begin());
  };

  out.z = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (coupling == Coupling::block && i / group != j / group) continue;
      const std::size_t k = coupling == Coupling::block ? lookup(std::abs(z[i] - z[j]))
                                                        : static_cast<std::size_t>(table.index[i * n + j]);
      out.z(i, j) = cdouble(r.values[k], reactance[k]);
    }
    out.z(i, i) += element.loss_resistance;
  }
  out.normalization = element.loss_resistance + r.values[lookup(0.0)];
  // Positive-definiteness of Re{Z} is checked where its inverse is needed.
  return out;
}

CMatrix pair_impedance_emf(const DipoleSpec& dipole, double spacing) {
  const cdouble zs = self_impedance(dipole);
  const cdouble zm = mutual_impedance(dipole, spacing);
  CMatrix z0(2, 2);
  z0 << zs, zm, zm, zs;
  return z0;
}

}  // namespace sdarray
