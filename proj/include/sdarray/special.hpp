#pragma once

#include <complex>

namespace sdarray {

/// Sine integral Si(x) = ∫_0^x sin(t)/t dt. Odd in x.
double sine_integral(double x);

/// Cosine integral Ci(x) = γ + ln x + ∫_0^x (cos t − 1)/t dt, for x > 0.
double cosine_integral(double x);

/// Ci(x) − j·Si(x), the antiderivative of e^{−jx}/x (x > 0).
std::complex<double> exp_integral_kernel(double x);

}  // namespace sdarray
