#pragma once

#include <complex>
#include <cstddef>

namespace sdarray::kernels::detail {

double cosine_moment_scalar(const double* w, const double* u, std::size_t n, double omega);
void column_correlations_scalar(const std::complex<double>* cols, std::size_t rows,
                                std::size_t ncols, const std::complex<double>* q, double* out);
std::complex<double> dotu_scalar(const std::complex<double>* a, const std::complex<double>* b,
                                 std::size_t n);

#if defined(SDARRAY_HAVE_AVX2)
double cosine_moment_avx2(const double* w, const double* u, std::size_t n, double omega);
void column_correlations_avx2(const std::complex<double>* cols, std::size_t rows,
                              std::size_t ncols, const std::complex<double>* q, double* out);
std::complex<double> dotu_avx2(const std::complex<double>* a, const std::complex<double>* b,
                               std::size_t n);
#endif

}  // namespace sdarray::kernels::detail
