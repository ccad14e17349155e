// Compiled with -mavx2 -mfma; only reached through the runtime dispatcher.

#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace sdarray::kernels::detail {
namespace {

// Cody-Waite reduction by π/4 with a three-part constant, then the minimax
// sin/cos polynomials on [-π/4, π/4] (Cephes coefficients). Max error ~1 ulp
// for |x| up to ~1e7.
constexpr double kDp1 = 7.85398125648498535156e-1;
constexpr double kDp2 = 3.77489470793079817668e-8;
constexpr double kDp3 = 2.69515142907905952645e-15;
constexpr double kFourOverPi = 1.27323954473516268615;

constexpr double kSinCoef[6] = {1.58962301576546568060e-10, -2.50507477628578072866e-8,
                                2.75573136213857245213e-6,  -1.98412698295895385996e-4,
                                8.33333333332211858878e-3,  -1.66666666666666307295e-1};
constexpr double kCosCoef[6] = {-1.13585365213876817300e-11, 2.08757008419747316778e-9,
                                -2.75573141792967388112e-7,  2.48015872888517045348e-5,
                                -1.38888888888730564116e-3,  4.16666666666665929218e-2};

inline __m256d horner(__m256d z, const double (&c)[6]) {
  __m256d r = _mm256_set1_pd(c[0]);
  for (int i = 1; i < 6; ++i) r = _mm256_fmadd_pd(r, z, _mm256_set1_pd(c[i]));
  return r;
}

inline __m256d cos4(__m256d x) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  x = _mm256_andnot_pd(sign_mask, x);
  __m256d y = _mm256_floor_pd(_mm256_mul_pd(x, _mm256_set1_pd(kFourOverPi)));
  // Round odd octants up to the next even one.
  const __m256d half_y = _mm256_floor_pd(_mm256_mul_pd(y, _mm256_set1_pd(0.5)));
  const __m256d odd = _mm256_sub_pd(y, _mm256_add_pd(half_y, half_y));
  y = _mm256_add_pd(y, odd);
  // Octant modulo 8, now one of {0, 2, 4, 6}.
  const __m256d eighth = _mm256_floor_pd(_mm256_mul_pd(y, _mm256_set1_pd(0.125)));
  const __m256d oct = _mm256_fnmadd_pd(eighth, _mm256_set1_pd(8.0), y);

  __m256d z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDp1), x);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDp2), z);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDp3), z);
  const __m256d zz = _mm256_mul_pd(z, z);

  const __m256d sin_poly = _mm256_fmadd_pd(_mm256_mul_pd(z, zz), horner(zz, kSinCoef), z);
  __m256d cos_poly = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), zz, _mm256_set1_pd(1.0));
  cos_poly = _mm256_fmadd_pd(_mm256_mul_pd(zz, zz), horner(zz, kCosCoef), cos_poly);

  const __m256d is2 = _mm256_cmp_pd(oct, _mm256_set1_pd(2.0), _CMP_EQ_OQ);
  const __m256d is4 = _mm256_cmp_pd(oct, _mm256_set1_pd(4.0), _CMP_EQ_OQ);
  const __m256d is6 = _mm256_cmp_pd(oct, _mm256_set1_pd(6.0), _CMP_EQ_OQ);
  const __m256d use_sin = _mm256_or_pd(is2, is6);
  const __m256d negate = _mm256_or_pd(is2, is4);
  __m256d r = _mm256_blendv_pd(cos_poly, sin_poly, use_sin);
  return _mm256_xor_pd(r, _mm256_and_pd(negate, sign_mask));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double cosine_moment_avx2(const double* w, const double* u, std::size_t n, double omega) {
  const __m256d om = _mm256_set1_pd(omega);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    const __m256d c0 = cos4(_mm256_mul_pd(om, _mm256_loadu_pd(u + j)));
    const __m256d c1 = cos4(_mm256_mul_pd(om, _mm256_loadu_pd(u + j + 4)));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + j), c0, acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(w + j + 4), c1, acc1);
  }
  for (; j + 4 <= n; j += 4) {
    const __m256d c = cos4(_mm256_mul_pd(om, _mm256_loadu_pd(u + j)));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + j), c, acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; j < n; ++j) acc += w[j] * std::cos(omega * u[j]);
  return acc;
}

void column_correlations_avx2(const std::complex<double>* cols, std::size_t rows,
                              std::size_t ncols, const std::complex<double>* q, double* out) {
  const auto* qd = reinterpret_cast<const double*>(q);
  for (std::size_t g = 0; g < ncols; ++g) {
    const auto* cd = reinterpret_cast<const double*>(cols + g * rows);
    __m256d same = _mm256_setzero_pd();   // [cr qr, ci qi, ...]
    __m256d cross = _mm256_setzero_pd();  // [cr qi, ci qr, ...]
    std::size_t n = 0;
    for (; n + 2 <= rows; n += 2) {
      const __m256d c = _mm256_loadu_pd(cd + 2 * n);
      const __m256d qv = _mm256_loadu_pd(qd + 2 * n);
      same = _mm256_fmadd_pd(c, qv, same);
      cross = _mm256_fmadd_pd(c, _mm256_permute_pd(qv, 0b0101), cross);
    }
    alignas(32) double s[4];
    alignas(32) double x[4];
    _mm256_store_pd(s, same);
    _mm256_store_pd(x, cross);
    double re = (s[0] + s[1]) + (s[2] + s[3]);
    double im = (x[0] - x[1]) + (x[2] - x[3]);
    for (; n < rows; ++n) {
      const std::complex<double> c = cols[g * rows + n];
      re += c.real() * q[n].real() + c.imag() * q[n].imag();
      im += c.real() * q[n].imag() - c.imag() * q[n].real();
    }
    out[g] = std::hypot(re, im);
  }
}

std::complex<double> dotu_avx2(const std::complex<double>* a, const std::complex<double>* b,
                               std::size_t n) {
  const auto* ad = reinterpret_cast<const double*>(a);
  const auto* bd = reinterpret_cast<const double*>(b);
  __m256d same = _mm256_setzero_pd();
  __m256d cross = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d av = _mm256_loadu_pd(ad + 2 * k);
    const __m256d bv = _mm256_loadu_pd(bd + 2 * k);
    same = _mm256_fmadd_pd(av, bv, same);
    cross = _mm256_fmadd_pd(av, _mm256_permute_pd(bv, 0b0101), cross);
  }
  alignas(32) double s[4];
  alignas(32) double x[4];
  _mm256_store_pd(s, same);
  _mm256_store_pd(x, cross);
  double re = (s[0] - s[1]) + (s[2] - s[3]);
  double im = (x[0] + x[1]) + (x[2] + x[3]);
  for (; k < n; ++k) {
    re += a[k].real() * b[k].real() - a[k].imag() * b[k].imag();
    im += a[k].real() * b[k].imag() + a[k].imag() * b[k].real();
  }
  return {re, im};
}

}  // namespace sdarray::kernels::detail
