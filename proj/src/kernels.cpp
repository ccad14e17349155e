#include "sdarray/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"
#include "sdarray/error.hpp"

namespace sdarray::kernels {

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::scalar, "scalar", detail::cosine_moment_scalar,
                                 detail::column_correlations_scalar, detail::dotu_scalar};
  return table;
}

const KernelTable* avx2_table() {
#if defined(SDARRAY_HAVE_AVX2)
  static const KernelTable table{Isa::avx2, "avx2", detail::cosine_moment_avx2,
                                 detail::column_correlations_avx2, detail::dotu_avx2};
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& selected = []() -> const KernelTable& {
    const char* force = std::getenv("SDARRAY_FORCE_SCALAR");
    if (force != nullptr && std::strcmp(force, "0") != 0) return scalar_table();
    const KernelTable* fast = avx2_table();
    return fast != nullptr ? *fast : scalar_table();
  }();
  return selected;
}

double cosine_moment(std::span<const double> weights, std::span<const double> nodes, double omega) {
  require(weights.size() == nodes.size(), "cosine_moment: size mismatch");
  return active().cosine_moment(weights.data(), nodes.data(), nodes.size(), omega);
}

void column_correlations(std::span<const std::complex<double>> cols, std::size_t rows,
                         std::span<const std::complex<double>> q, std::span<double> out) {
  require(q.size() == rows && cols.size() == rows * out.size(),
          "column_correlations: size mismatch");
  active().column_correlations(cols.data(), rows, out.size(), q.data(), out.data());
}

std::complex<double> dotu(std::span<const std::complex<double>> a,
                          std::span<const std::complex<double>> b) {
  require(a.size() == b.size(), "dotu: size mismatch");
  return active().dotu(a.data(), b.data(), a.size());
}

}  // namespace sdarray::kernels
