#include "sdarray/special.hpp"

#include <cmath>
#include <limits>

#include "sdarray/constants.hpp"
#include "sdarray/error.hpp"

namespace sdarray {
namespace {

constexpr double kSwitchover = 4.0;
constexpr int kMaxTerms = 200;

struct CiSi {
  double ci;
  double si;
};

// Alternating power series; accurate to a few ulps of the largest term for x <= 4.
CiSi series(double x) {
  const double x2 = x * x;
  double si_sum = x;
  double ci_sum = 0.0;
  double term = x;  // x^(2n+1)/(2n+1)! for Si, rebuilt from x^(2n)/(2n)! for Ci
  double even = 1.0;
  for (int n = 1; n < kMaxTerms; ++n) {
    even = -even * x2 / ((2.0 * n - 1.0) * (2.0 * n));
    term = -term * x2 / ((2.0 * n) * (2.0 * n + 1.0));
    const double ci_term = even / (2.0 * n);
    const double si_term = term / (2.0 * n + 1.0);
    ci_sum += ci_term;
    si_sum += si_term;
    if (std::abs(ci_term) < 1e-18 && std::abs(si_term) < 1e-18) break;
  }
  return {kEulerGamma + std::log(x) + ci_sum, si_sum};
}

// Continued fraction for E1(ix) evaluated with the modified Lentz method.
CiSi continued_fraction(double x) {
  using C = std::complex<double>;
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  C b(1.0, x);
  C c(1.0 / kTiny, 0.0);
  C d = 1.0 / b;
  C h = d;
  int i = 2;
  for (; i < 100000; ++i) {
    const double a = -static_cast<double>((i - 1) * (i - 1));
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const C del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
  }
  if (i >= 100000) throw NumericalError("Ci/Si continued fraction did not converge");
  h *= C(std::cos(x), -std::sin(x));
  return {-h.real(), kPi / 2.0 + h.imag()};
}

CiSi cisi(double x) { return x <= kSwitchover ? series(x) : continued_fraction(x); }

}  // namespace

double sine_integral(double x) {
  if (x == 0.0) return 0.0;
  const double s = cisi(std::abs(x)).si;
  return x < 0.0 ? -s : s;
}

double cosine_integral(double x) {
  require(x > 0.0, "cosine_integral: argument must be positive");
  return cisi(x).ci;
}

std::complex<double> exp_integral_kernel(double x) {
  require(x > 0.0, "exp_integral_kernel: argument must be positive");
  const CiSi v = cisi(x);
  return {v.ci, -v.si};
}

}  // namespace sdarray
