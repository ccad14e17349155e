#pragma once

// Data-parallel inner loops with a portable scalar reference and an AVX2/FMA
// variant. The variant is chosen once at first use from the running CPU; the
// environment variable SDARRAY_FORCE_SCALAR=1 pins the scalar reference.

#include <complex>
#include <cstddef>
#include <span>

namespace sdarray::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  const char* name;
  // Σ_j w_j cos(ω u_j)
  double (*cosine_moment)(const double* w, const double* u, std::size_t n, double omega);
  // out_g = |Σ_n conj(C[g·rows + n]) q_n| for each column g of the column-major C
  void (*column_correlations)(const std::complex<double>* cols, std::size_t rows, std::size_t ncols,
                              const std::complex<double>* q, double* out);
  // Σ_n a_n b_n (no conjugation)
  std::complex<double> (*dotu)(const std::complex<double>* a, const std::complex<double>* b,
                               std::size_t n);
};

const KernelTable& scalar_table();
/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();
const KernelTable& active();

double cosine_moment(std::span<const double> weights, std::span<const double> nodes, double omega);
void column_correlations(std::span<const std::complex<double>> cols, std::size_t rows,
                         std::span<const std::complex<double>> q, std::span<double> out);
std::complex<double> dotu(std::span<const std::complex<double>> a,
                          std::span<const std::complex<double>> b);

}  // namespace sdarray::kernels
