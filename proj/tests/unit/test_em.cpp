#include <doctest.h>

#include <cmath>
#include <random>

#include "sdarray/constants.hpp"
#include "sdarray/em.hpp"
#include "sdarray/error.hpp"
#include "sdarray/quadrature.hpp"

using namespace sdarray;

namespace {

const DipoleSpec kRef = DipoleSpec::reference();

// Induced EMF by brute-force integration of the near field of a sinusoidal
// current along the second dipole, referred to input currents.
cdouble emf_by_integration(const DipoleSpec& dip, double d) {
  const double k = dip.wavenumber();
  const double h = 0.5 * dip.length;
  const int panels = 4000;
  const QuadratureRule r = gauss_legendre(8);
  auto term = [&](double rr) { return std::exp(cdouble(0.0, -k * rr)) / rr; };
  cdouble acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = -h + 2.0 * h * p / panels;
    const double b = -h + 2.0 * h * (p + 1) / panels;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      const double z = 0.5 * (a + b) + 0.5 * (b - a) * r.nodes[i];
      const double r1 = std::hypot(d, z - h);
      const double r2 = std::hypot(d, z + h);
      const double r0 = std::hypot(d, z);
      const cdouble field = term(r1) + term(r2) - 2.0 * std::cos(k * h) * term(r0);
      acc += 0.5 * (b - a) * r.weights[i] * std::sin(k * (h - std::abs(z))) * field;
    }
  }
  const double s = std::sin(k * h);
  return kJ * kFreeSpaceImpedance / (4.0 * kPi) * acc / (s * s);
}

// Radiated-power integral in (θ, φ) with plain tensor Gauss-Legendre; a
// different parameterisation from the library's u = cosθ rule.
double radiation_resistance_theta_phi(const DipoleSpec& dip) {
  const QuadratureRule th = gauss_legendre(400, 0.0, kPi);
  const QuadratureRule ph = gauss_legendre(200, 0.0, 2.0 * kPi);
  double acc = 0.0;
  for (std::size_t i = 0; i < th.nodes.size(); ++i)
    for (std::size_t j = 0; j < ph.nodes.size(); ++j)
      acc += th.weights[i] * ph.weights[j] * std::sin(th.nodes[i]) *
             field_pattern(dip, th.nodes[i], ph.nodes[j]).norm2();
  return kFreeSpaceImpedance / (4.0 * kPi * kPi) * acc;
}

}  // namespace

TEST_CASE("field pattern at broadside and along the axis") {
  const SphericalField f = field_pattern(kRef, kPi / 2, kPi / 2);
  CHECK(f.f_theta == doctest::Approx(0.0));
  CHECK(f.f_phi == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::sqrt(f.norm2()) == doctest::Approx(1.0).epsilon(1e-14));
  const SphericalField axis = field_pattern(kRef, kPi / 2, 0.0);
  CHECK(axis.f_theta == 0.0);
  CHECK(axis.f_phi == 0.0);
}

TEST_CASE("field pattern is mirror-symmetric in theta and matches pattern_norm2") {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> th(0.0, kPi), ph(0.0, 2.0 * kPi);
  for (int i = 0; i < 100; ++i) {
    const double t = th(g);
    const double p = ph(g);
    const double n1 = field_pattern(kRef, t, p).norm2();
    CHECK(n1 == doctest::Approx(field_pattern(kRef, kPi - t, p).norm2()).epsilon(1e-12));
    CHECK(n1 == doctest::Approx(pattern_norm2(kRef, std::cos(p) * std::sin(t))).epsilon(1e-10));
  }
}

TEST_CASE("field magnitude decays monotonically to zero approaching the axis") {
  double prev = 2.0;
  for (double phi = 0.1; phi > 1e-9; phi *= 0.5) {
    const double v = std::sqrt(field_pattern(kRef, kPi / 2, phi).norm2());
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("loss resistance of the reference dipole") {
  const double r = loss_resistance(kRef);
  CHECK(r == doctest::Approx(2.8677).epsilon(1e-4));
  const double k = kRef.wavenumber();
  const double simplified = kPi / (4.0 * k * kRef.radius) *
                            std::sqrt(kRef.frequency * kMu0 / (kPi * kRef.conductivity));
  CHECK(r == doctest::Approx(simplified).epsilon(1e-12));
  DipoleSpec pec = kRef;
  pec.conductivity = std::numeric_limits<double>::infinity();
  CHECK(loss_resistance(pec) == 0.0);
  const DipoleSpec full = DipoleSpec::from_wavelengths(300e9, 1.0, 1.0 / 500, 5.7e7);
  CHECK_THROWS_AS(loss_resistance(full), ValidationError);
}

TEST_CASE("element gain: lossless half-wave dipole and the reference dipole") {
  DipoleSpec lossless = kRef;
  lossless.conductivity = std::numeric_limits<double>::infinity();
  const double ri = radiation_resistance_theta_phi(lossless);
  const ElementImpedance e0 = element_impedance(lossless);
  const double g0 = element_gain(lossless, e0, kPi / 2, kPi / 2);
  CHECK(g0 == doctest::Approx(kFreeSpaceImpedance / (kPi * ri)).epsilon(5e-4));
  CHECK(g0 == doctest::Approx(1.64).epsilon(2e-3));
  const ElementImpedance e = element_impedance(kRef);
  CHECK(element_gain(kRef, e, kPi / 2, kPi / 2) == doctest::Approx(1.579).epsilon(1e-3));
  CHECK(element_gain(kRef, e, kPi / 2, 0.0) == 0.0);
}

TEST_CASE("self impedance of the reference dipole") {
  const cdouble z = self_impedance(kRef);
  CHECK(z.real() == doctest::Approx(75.94).epsilon(0.02));
  CHECK(z.imag() == doctest::Approx(41.76).epsilon(0.02));
  const ElementImpedance e = element_impedance(kRef);
  CHECK(e.self_impedance.real() == doctest::Approx(e.loss_resistance + e.input_resistance));
  CHECK(e.input_resistance > 0.0);
}

TEST_CASE("thin lossless half-wave dipole approaches the classical induced-EMF value") {
  DipoleSpec thin = DipoleSpec::from_wavelengths(300e9, 0.5, 1e-6,
                                                 std::numeric_limits<double>::infinity());
  const cdouble z = self_impedance(thin);
  // (η/4π)(γ + ln 2π − Ci(2π)) and (η/4π) Si(2π), with tabulated Ci, Si.
  const double eta4pi = kFreeSpaceImpedance / (4.0 * kPi);
  const double r_ref = eta4pi * (kEulerGamma + std::log(2.0 * kPi) + 0.022560661746346106625);
  const double x_ref = eta4pi * 1.4181515761326284502;
  CHECK(z.real() == doctest::Approx(r_ref).epsilon(5e-3));
  CHECK(z.real() == doctest::Approx(73.1).epsilon(5e-3));
  CHECK(z.imag() == doctest::Approx(x_ref).epsilon(5e-3));
}

TEST_CASE("closed-form mutual impedance equals brute-force EMF integration") {
  for (double d_wl : {1.0 / 500, 0.1, 0.2, 0.5, 1.0, 1.5, 3.0}) {
    CAPTURE(d_wl);
    const double d = d_wl * kRef.wavelength();
    const cdouble a = mutual_impedance(kRef, d);
    const cdouble b = emf_by_integration(kRef, d);
    CHECK(std::abs(a - b) < 1e-6 * (1.0 + std::abs(b)));
  }
  // Non-resonant length.
  const DipoleSpec odd = DipoleSpec::from_wavelengths(300e9, 0.37, 1.0 / 300, 5.7e7);
  for (double d_wl : {0.15, 0.8}) {
    const double d = d_wl * odd.wavelength();
    CHECK(std::abs(mutual_impedance(odd, d) - emf_by_integration(odd, d)) < 1e-6 * 100);
  }
}

TEST_CASE("mutual impedance values and asymptotics") {
  const double lam = kRef.wavelength();
  const cdouble z5 = mutual_impedance(kRef, lam / 5);
  CHECK(z5.real() == doctest::Approx(51.3611).epsilon(1e-4));
  CHECK(z5.imag() == doctest::Approx(-19.1586).epsilon(1e-4));
  const cdouble z2 = mutual_impedance(kRef, lam / 2);
  CHECK(z2.real() < 0.0);
  CHECK(z2.real() == doctest::Approx(-12.5234).epsilon(1e-4));
  const double r_self = self_impedance(kRef).real();
  const double rbar = z5.real() / r_self;
  const double kd = kRef.wavenumber() * lam / 5;
  CHECK((1 - rbar * rbar) / (1 - rbar * std::cos(kd)) == doctest::Approx(0.68).epsilon(0.02));
  CHECK(std::abs(mutual_impedance(kRef, 10 * lam)) < 5.0);
  CHECK(std::abs(mutual_impedance(kRef, 20 * lam)) < std::abs(mutual_impedance(kRef, 10 * lam)));
  CHECK_THROWS_AS(mutual_impedance(kRef, 0.0), ValidationError);
}

TEST_CASE("quadrature and induced EMF agree on the resistive coupling") {
  const double lam = kRef.wavelength();
  std::vector<double> spacings{0.0, 0.1 * lam, 0.2 * lam, 0.5 * lam, lam, 1.5 * lam};
  const CouplingResistances q = coupling_resistances(kRef, spacings);
  const ElementImpedance e = element_impedance(kRef);
  CHECK(q.values[0] == doctest::Approx(e.input_resistance).epsilon(5e-3));
  for (std::size_t i = 1; i < spacings.size(); ++i) {
    CAPTURE(spacings[i] / lam);
    const double emf = mutual_impedance(kRef, spacings[i]).real();
    CHECK(std::abs(q.values[i] - emf) / e.input_resistance <= 5e-3);
  }
  CHECK(q.error_estimate < 1e-6 * q.values[0]);
}

TEST_CASE("impedance_real_quadrature structure") {
  const double lam = kRef.wavelength();
  SUBCASE("single element") {
    const RealImpedanceMatrix m = impedance_real_quadrature(ArrayLayout::ula(1, lam), kRef);
    CHECK(m.re_ideal(0, 0) ==
          doctest::Approx(self_impedance(kRef).real() - loss_resistance(kRef)).epsilon(5e-3));
  }
  SUBCASE("pair at lambda/5") {
    const RealImpedanceMatrix m = impedance_real_quadrature(ArrayLayout::ula(2, lam / 5), kRef);
    CHECK(m.re_ideal(0, 1) == doctest::Approx(mutual_impedance(kRef, lam / 5).real()).epsilon(5e-3));
  }
  SUBCASE("ULA is symmetric Toeplitz with constant diagonal") {
    const RealImpedanceMatrix m = impedance_real_quadrature(ArrayLayout::ula(7, 0.3 * lam), kRef);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        CHECK(m.re_ideal(i, j) == m.re_ideal(j, i));
        if (i > 0 && j > 0) CHECK(m.re_ideal(i, j) == m.re_ideal(i - 1, j - 1));
      }
  }
  SUBCASE("entries depend only on distance, relabelling is consistent") {
    const ArrayLayout nula = ArrayLayout::nula(3, 2, lam / 5, 1.5 * lam);
    const RealImpedanceMatrix m = impedance_real_quadrature(nula, kRef);
    const auto& z = nula.positions();
    std::vector<double> d;
    for (int i = 0; i < nula.size(); ++i)
      for (int j = 0; j < nula.size(); ++j) d.push_back(std::abs(z[i] - z[j]));
    const CouplingResistances r = coupling_resistances(kRef, d);
    // Reverse the element order: P M P^T must equal the matrix of the reversed positions.
    const int n = nula.size();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        CHECK(m.re_ideal(i, j) == doctest::Approx(r.values[i * n + j]).epsilon(1e-9));
        CHECK(m.re_ideal(n - 1 - i, n - 1 - j) ==
              doctest::Approx(r.values[i * n + j]).epsilon(1e-9));
      }
  }
  SUBCASE("positive definite after adding the loss resistance") {
    for (const ArrayLayout& l : {ArrayLayout::ula(8, lam / 5), ArrayLayout::ula(8, lam / 2),
                                 ArrayLayout::nula(4, 2, lam / 5, 1.5 * lam)}) {
      const RealImpedanceMatrix m = impedance_real_quadrature(l, kRef);
      const RMatrix lossy = m.re_ideal + loss_resistance(kRef) * RMatrix::Identity(l.size(), l.size());
      CHECK(Eigen::SelfAdjointEigenSolver<RMatrix>(lossy).eigenvalues().minCoeff() > 0.0);
    }
  }
}

TEST_CASE("radiated, loss and input power balance") {
  const double lam = kRef.wavelength();
  const RealImpedanceMatrix m = impedance_real_quadrature(ArrayLayout::ula(5, lam / 4), kRef);
  const double rl = loss_resistance(kRef);
  std::mt19937_64 g(5);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 50; ++t) {
    CVector i(5);
    for (auto& x : i) x = {nd(g), nd(g)};
    const PowerBalance p = radiated_and_input_power(i, m.re_ideal, rl);
    CHECK(p.radiated >= 0.0);
    CHECK(p.input == doctest::Approx(p.radiated + p.loss).epsilon(1e-13));
  }
  const RealImpedanceMatrix one = impedance_real_quadrature(ArrayLayout::ula(1, lam), kRef);
  CVector unit(1);
  unit << 1.0;
  CHECK(radiated_and_input_power(unit, one.re_ideal, 0.0).radiated ==
        doctest::Approx(one.re_ideal(0, 0) / 2));
}

TEST_CASE("array_impedance coupling modes") {
  const double lam = kRef.wavelength();
  const ArrayLayout nula = ArrayLayout::nula(3, 2, lam / 5, 1.5 * lam);
  const ImpedanceMatrix exact = array_impedance(nula, kRef, Coupling::exact);
  const ImpedanceMatrix block = array_impedance(nula, kRef, Coupling::block);
  const ImpedanceMatrix none = array_impedance(nula, kRef, Coupling::none);
  const ElementImpedance e = element_impedance(kRef);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      if (i / 2 == j / 2) {
        CHECK(std::abs(block.z(i, j) - exact.z(i, j)) < 1e-9);
      } else {
        CHECK(block.z(i, j) == cdouble(0.0, 0.0));
      }
      CHECK(none.z(i, j) == (i == j ? e.self_impedance : cdouble(0.0, 0.0)));
    }
  CHECK(exact.z(0, 1).imag() == doctest::Approx(mutual_impedance(kRef, lam / 5).imag()));
  CHECK(exact.z(0, 0).imag() == doctest::Approx(e.self_impedance.imag()));
  CHECK(exact.normalization == doctest::Approx(e.self_resistance()).epsilon(5e-3));
  CHECK(none.re_normalized().isIdentity(0.0));
  CHECK(exact.re_normalized()(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
}
