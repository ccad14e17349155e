#include <cmath>

#include "kernels_impl.hpp"

namespace sdarray::kernels::detail {

double cosine_moment_scalar(const double* w, const double* u, std::size_t n, double omega) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += w[j] * std::cos(omega * u[j]);
  return acc;
}

void column_correlations_scalar(const std::complex<double>* cols, std::size_t rows,
                                std::size_t ncols, const std::complex<double>* q, double* out) {
  for (std::size_t g = 0; g < ncols; ++g) {
    const std::complex<double>* c = cols + g * rows;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t n = 0; n < rows; ++n) {
      re += c[n].real() * q[n].real() + c[n].imag() * q[n].imag();
      im += c[n].real() * q[n].imag() - c[n].imag() * q[n].real();
    }
    out[g] = std::hypot(re, im);
  }
}

std::complex<double> dotu_scalar(const std::complex<double>* a, const std::complex<double>* b,
                                 std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    re += a[k].real() * b[k].real() - a[k].imag() * b[k].imag();
    im += a[k].real() * b[k].imag() + a[k].imag() * b[k].real();
  }
  return {re, im};
}

}  // namespace sdarray::kernels::detail
