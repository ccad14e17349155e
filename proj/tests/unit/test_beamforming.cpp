#include <doctest.h>

#include <cmath>
#include <random>

#include "sdarray/beamforming.hpp"
#include "sdarray/constants.hpp"
#include "sdarray/em.hpp"
#include "sdarray/error.hpp"
#include "sdarray/geometry.hpp"

using namespace sdarray;

namespace {

const DipoleSpec kRef = DipoleSpec::reference();
const double kLam = kRef.wavelength();
const double kK = kRef.wavenumber();

RMatrix pair_block(int groups, double r_self, double r_m) {
  RMatrix z0(2, 2);
  z0 << r_self, r_m, r_m, r_self;
  RMatrix out = RMatrix::Zero(2 * groups, 2 * groups);
  for (int g = 0; g < groups; ++g) out.block(2 * g, 2 * g, 2, 2) = z0;
  return out;
}

CVector random_cvec(std::mt19937_64& g, int n) {
  std::normal_distribution<double> nd;
  CVector v(n);
  for (auto& x : v) x = {nd(g), nd(g)};
  return v;
}

double rbar_ref() {
  const CouplingResistances r = coupling_resistances(kRef, {0.0, kLam / 5});
  return r.values[1] / (r.values[0] + loss_resistance(kRef));
}

}  // namespace

TEST_CASE("optimal currents deliver exactly P_t") {
  std::mt19937_64 g(1);
  const RMatrix re = impedance_real_quadrature(ArrayLayout::ula(6, 0.3 * kLam), kRef).re_ideal +
                     loss_resistance(kRef) * RMatrix::Identity(6, 6);
  for (double theta : {0.0, 0.7, 2.1}) {
    const CVector a = steering_vector(ArrayLayout::ula(6, 0.3 * kLam), kK, theta);
    const CVector i = optimal_currents(re, a, 0.25);
    CHECK(0.5 * hermitian_form(i, re, i).real() == doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("optimal currents, uncoupled and single element") {
  const double r_self = 75.94;
  const ArrayLayout l = ArrayLayout::ula(5, 1.5 * kLam);
  const CVector a = steering_vector(l, kK, 0.4);
  const CVector i = optimal_currents(r_self * RMatrix::Identity(5, 5), a, 0.1);
  const CVector expected = std::sqrt(2 * 0.1 / (5 * r_self)) * a;
  CHECK((i - expected).norm() < 1e-14);
  CVector one(1);
  one << 1.0;
  CHECK(std::abs(optimal_currents(RMatrix::Constant(1, 1, r_self), one, 0.1)(0)) ==
        doctest::Approx(std::sqrt(0.2 / r_self)));
}

TEST_CASE("pair excitation at endfire is proportional to the closed form") {
  const double rs = 75.94, rm = 51.36;
  const double kd = kK * kLam / 5;
  const ArrayLayout l = ArrayLayout::ula(2, kLam / 5);
  const CVector i = optimal_currents(pair_block(1, rs, rm), steering_vector(l, kK, 0.0), 1.0);
  const cdouble e = std::polar(1.0, -kd);
  const cdouble c0 = rs - rm * e, c1 = -rm + rs * e;
  CHECK(std::abs(i(0) * c1 - i(1) * c0) < 1e-12 * std::abs(i(0) * c1));
  CHECK(gain_quadratic_form(pair_block(1, 1.0, rm / rs), steering_vector(l, kK, 0.0)) ==
        doctest::Approx(2 * (1 - rm / rs * std::cos(kd)) / (1 - rm * rm / (rs * rs))).epsilon(1e-13));
}

TEST_CASE("array gain: uncoupled ULA gives G_e N and optimal currents maximise it") {
  const ElementImpedance e = element_impedance(kRef);
  const double ge = element_gain(kRef, e, kPi / 2, kPi / 2);
  const ArrayLayout ula = ArrayLayout::ula(8, 1.5 * kLam);
  const RMatrix unc = e.self_resistance() * RMatrix::Identity(8, 8);
  const CVector a = steering_vector(ula, kK, 0.9);
  CHECK(max_array_gain(unc, a, ge, e.self_resistance()) == doctest::Approx(ge * 8).epsilon(1e-13));

  const ArrayLayout sd = ArrayLayout::ula(6, kLam / 5);
  const RMatrix re = impedance_real_quadrature(sd, kRef).re_ideal +
                     e.loss_resistance * RMatrix::Identity(6, 6);
  const CVector a2 = steering_vector(sd, kK, 0.3);
  const double gmax = max_array_gain(re, a2, ge, e.self_resistance());
  CHECK(array_gain(re, a2, optimal_currents(re, a2, 1.0), ge, e.self_resistance()) ==
        doctest::Approx(gmax).epsilon(1e-10));
  std::mt19937_64 g(2);
  for (int t = 0; t < 1000; ++t)
    CHECK(array_gain(re, a2, random_cvec(g, 6), ge, e.self_resistance()) <= gmax * (1 + 1e-9));
}

TEST_CASE("source voltages: uniform magnitudes only for uncoupled or paired arrays") {
  const ElementImpedance e = element_impedance(kRef);
  const double rs = 50.0;
  auto spread = [](const CVector& v) {
    const RVector m = v.cwiseAbs();
    return m.maxCoeff() / m.minCoeff();
  };
  const ArrayLayout ula = ArrayLayout::ula(8, 1.5 * kLam);
  CHECK(spread(source_voltages(e.self_resistance() * RMatrix::Identity(8, 8),
                               steering_vector(ula, kK, 0.5), 0.1, rs)) ==
        doctest::Approx(1.0).epsilon(1e-14));

  const ArrayLayout sd = ArrayLayout::ula(8, kLam / 5);
  const ImpedanceMatrix zsd = array_impedance(sd, kRef, Coupling::exact);
  CHECK(spread(source_voltages(zsd.re(), steering_vector(sd, kK, 0.0), 0.1, rs)) > 1.01);

  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> th(0.0, kPi);
  const double rbar = rbar_ref();
  for (int groups : {1, 2, 5, 16}) {
    const ArrayLayout l = ArrayLayout::nula(groups, 2, kLam / 5, 1.5 * kLam);
    const RMatrix re = pair_block(groups, 1.0, rbar);
    for (int t = 0; t < 25; ++t) {
      const double theta = th(g);
      const CVector v = source_voltages(re, steering_vector(l, kK, theta), 0.1, rs);
      const RVector m = v.cwiseAbs();
      const double mean = m.mean();
      const double sd_rel = std::sqrt((m.array() - mean).square().mean()) / mean;
      CHECK(sd_rel <= 1e-10);
      // Common magnitude from the closed form, scaled like v.
      const double q = gain_quadratic_form(re, steering_vector(l, kK, theta));
      CHECK(mean == doctest::Approx(2 * std::sqrt(2 * rs * 0.1 / q) *
                                    pair_source_magnitude(1.0, rbar, kK * kLam / 5, theta))
                        .epsilon(1e-12));
    }
  }
}

TEST_CASE("2x2 matrix square root") {
  CHECK(matrix_sqrt_2x2(RMatrix::Identity(2, 2)).isApprox(RMatrix::Identity(2, 2), 1e-15));
  std::mt19937_64 g(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    RMatrix b(2, 2);
    b << u(g), u(g), u(g), u(g);
    const RMatrix a = b * b.transpose() + 1e-3 * RMatrix::Identity(2, 2);
    const RMatrix r = matrix_sqrt_2x2(a);
    CHECK((r * r - a).cwiseAbs().maxCoeff() <= 1e-12 * a.norm());
    CHECK((r - SpdSpectrum(a).sqrt()).cwiseAbs().maxCoeff() <= 1e-12 * r.norm());
  }
  const double rb = rbar_ref();
  RMatrix z0(2, 2);
  z0 << 1.0, rb, rb, 1.0;
  const RMatrix inv = z0.inverse();
  const RMatrix r = matrix_sqrt_2x2(inv);
  // Closed form: s = 1/sqrt(1 − R̄²), t = sqrt(2/(1 − R̄²) + 2s).
  const double s = 1.0 / std::sqrt(1 - rb * rb);
  const double t = std::sqrt(2.0 / (1 - rb * rb) + 2 * s);
  RMatrix expected(2, 2);
  expected << (1.0 / (1 - rb * rb) + s) / t, (-rb / (1 - rb * rb)) / t,
      (-rb / (1 - rb * rb)) / t, (1.0 / (1 - rb * rb) + s) / t;
  CHECK((r - expected).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((r - SpdSpectrum(inv).sqrt()).cwiseAbs().maxCoeff() < 1e-13);
  RMatrix neg(2, 2);
  neg << -1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(matrix_sqrt_2x2(neg), NumericalError);
}

TEST_CASE("pair source magnitude") {
  CHECK(pair_source_magnitude(75.94, 0.0, 1.3, 0.4) == doctest::Approx(1 / std::sqrt(75.94)));
  CHECK(pair_source_magnitude(2.0, 0.5, 1.3, kPi / 2) ==
        doctest::Approx(std::sqrt((2.0 - 0.5) / (4.0 - 0.25))));
  const double rs = self_impedance(kRef).real();
  const double rm = rbar_ref() * rs;
  RMatrix z0(2, 2);
  z0 << rs, rm, rm, rs;
  const RMatrix root = matrix_sqrt_2x2(z0.inverse());
  const CVector a0 = steering_vector(ArrayLayout::ula(2, kLam / 5), kK, 0.0);
  const CVector v = root.cast<cdouble>() * a0;
  const double m = pair_source_magnitude(rs, rm, kK * kLam / 5, 0.0);
  CHECK(std::abs(v(0)) == doctest::Approx(m).epsilon(1e-12));
  CHECK(std::abs(v(1)) == doctest::Approx(m).epsilon(1e-12));
  CHECK_THROWS_AS(pair_source_magnitude(1.0, 1.0, 1.0, 0.0), ValidationError);
}

TEST_CASE("MRT precoder") {
  std::mt19937_64 g(5);
  const std::vector<CVector> one{random_cvec(g, 9)};
  const BeamformerWeights w1 = mrt_precoder(one, 0.1);
  CHECK(w1.total_power() == doctest::Approx(0.2).epsilon(1e-14));
  std::vector<CVector> hs{random_cvec(g, 9), random_cvec(g, 9), random_cvec(g, 9)};
  const BeamformerWeights w = mrt_precoder(hs, 0.1);
  CHECK(w.total_power() == doctest::Approx(0.2).epsilon(1e-12));
  for (std::size_t k = 0; k < hs.size(); ++k) {
    const cdouble y = (hs[k].transpose() * w.w[k])(0);
    CHECK(std::norm(y) == doctest::Approx(0.2 / 3 * hs[k].squaredNorm()).epsilon(1e-12));
    CHECK_FALSE(w.hybrid[k].uniform_magnitude);
  }
  // Uncoupled LoS channels are pure phase progressions: one RF chain suffices.
  const ArrayLayout l = ArrayLayout::ula(8, 1.5 * kLam);
  const BeamformerWeights wu = mrt_precoder({steering_vector(l, kK, 0.6)}, 0.1);
  CHECK(wu.hybrid[0].uniform_magnitude);
  for (int n = 0; n < 8; ++n)
    CHECK(std::abs(wu.hybrid[0].baseband * std::polar(1.0, wu.hybrid[0].phases(n)) - wu.w[0](n)) <
          1e-15);
  CHECK_THROWS_AS(mrt_precoder({CVector::Zero(3)}, 0.1), ValidationError);
}

TEST_CASE("MRT desired power equals the coupled quadratic form") {
  const ArrayLayout l = ArrayLayout::nula(3, 2, kLam / 5, 1.5 * kLam);
  const RMatrix re = array_impedance(l, kRef, Coupling::exact).re_normalized();
  const CVector a = steering_vector(l, kK, 0.5);
  const CVector h = SpdSpectrum(re).inv_sqrt().cast<cdouble>() * a;
  const BeamformerWeights w = mrt_precoder({h}, 0.1);
  const double p = std::norm((h.transpose() * w.w[0])(0)) / (2 * 0.1);
  CHECK(p == doctest::Approx(gain_quadratic_form(re, a)).epsilon(1e-12));
}

TEST_CASE("Dirichlet sinc") {
  CHECK(dirichlet_sinc(7, 0.0) == 1.0);
  CHECK(std::abs(dirichlet_sinc(4, kPi / 2)) < 1e-15);
  CHECK(dirichlet_sinc(5, 2 * kPi) == doctest::Approx(1.0));
  CHECK(dirichlet_sinc(4, 2 * kPi) == doctest::Approx(-1.0));
  CHECK(dirichlet_sinc(4, 2 * kPi + 1e-9) == doctest::Approx(-1.0).epsilon(1e-8));
  std::mt19937_64 g(6);
  std::uniform_real_distribution<double> th(0.0, kPi);
  for (int t = 0; t < 100; ++t) {
    const int ng = 1 + static_cast<int>(g() % 20);
    const double period = 1.7 * kLam;
    const double tk = th(g), ti = th(g);
    cdouble sum = 0.0;
    for (int m = 0; m < ng; ++m)
      sum += std::polar(1.0, kK * period * m * (std::cos(tk) - std::cos(ti)));
    const double d = dirichlet_sinc(ng, kK * period * (std::cos(tk) - std::cos(ti)));
    CHECK(std::norm(sum) / ng == doctest::Approx(ng * d * d).epsilon(1e-11));
  }
}

TEST_CASE("closed-form signal and interference powers equal direct quadratic forms") {
  std::mt19937_64 g(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const int groups = 1 + static_cast<int>(g() % 12);
    PairGeometry pg;
    pg.rbar_m = -0.9 + 1.8 * u(g);
    pg.wavenumber = kK;
    pg.dbar = (0.05 + 0.5 * u(g)) * kLam;
    pg.dg = (0.3 + 2.7 * u(g)) * kLam;
    const double tk = kPi * u(g), ti = kPi * u(g);
    const ArrayLayout l = ArrayLayout::nula(groups, 2, pg.dbar, pg.dg);
    const RMatrix re = pair_block(groups, 1.0, pg.rbar_m);
    const SpdSpectrum spec(re);
    const CVector ak = steering_vector(l, kK, tk), ai = steering_vector(l, kK, ti);
    const double sig = ak.dot(spec.solve(ak)).real();
    const double interf = std::norm(ak.dot(spec.solve(ai))) / ai.dot(spec.solve(ai)).real();
    CHECK(std::abs(signal_power_closed_form(groups, pg, tk) - sig) <= 1e-12 * sig);
    CHECK(std::abs(interference_power_closed_form(groups, 2, pg, tk, ti) - interf) <= 1e-12 * sig);
    const CVector a0 = intra_group_steering(l, kK, tk);
    CHECK(groups * gain_quadratic_form(pair_block(1, 1.0, pg.rbar_m), a0) ==
          doctest::Approx(sig).epsilon(1e-12));
  }
}

TEST_CASE("closed forms: limits and monotonicity") {
  PairGeometry pg{0.0, kK, kLam / 5, 1.5 * kLam};
  CHECK(signal_power_closed_form(9, pg, 0.3) == doctest::Approx(18.0));
  pg.rbar_m = rbar_ref();
  CHECK(interference_power_closed_form(4, 2, pg, 0.6, 0.6) ==
        doctest::Approx(signal_power_closed_form(4, pg, 0.6)).epsilon(1e-13));
  // Dirichlet null: κ P (cosθ_k − cosθ_i) = 2π/N_g.
  const double period = pg.dg + pg.dbar;
  const double ci = std::cos(1.2);
  const double ck = ci + 2 * kPi / (4 * kK * period);
  CHECK(interference_power_closed_form(4, 2, pg, std::acos(ck), 1.2) < 1e-20);
  double prev = 1e9;
  for (int i = 0; i <= 90; ++i) {
    const double v = signal_power_closed_form(4, pg, deg_to_rad(i));
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("required group count") {
  const double rbar = rbar_ref();
  const double kd = kK * kLam / 5;
  const GroupSizing s200 = required_group_count(200, rbar, kd);
  CHECK(s200.groups == 68);
  CHECK(s200.antenna_ratio == doctest::Approx(0.686).epsilon(2e-3));
  CHECK(required_group_count(120, rbar, kd).groups == 41);
  CHECK(required_group_count(200, 0.0, kd).groups == 100);
  CHECK(required_group_count(120, 0.0, kd).exact == 60.0);
}

TEST_CASE("crossover angle solver") {
  CHECK(crossover_angle([](double x) { return std::cos(x); }, 0.0, 3.0) ==
        doctest::Approx(kPi / 2).epsilon(1e-10));
  CHECK_THROWS_AS(crossover_angle([](double) { return 1.0; }, 0.0, 1.0), NumericalError);
  PairGeometry pg{rbar_ref(), kK, kLam / 5, 1.5 * kLam};
  const double th =
      crossover_angle([&](double t) { return signal_power_closed_form(4, pg, t) - 8.0; }, 0.0,
                      kPi / 2);
  CHECK(rad_to_deg(th) == doctest::Approx(48.8).epsilon(5e-3));
}
