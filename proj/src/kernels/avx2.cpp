#include <immintrin.h>

#include "tables.hpp"

namespace zerocert::kernels::detail {
namespace {

constexpr std::size_t kLanes = 4;

double horizontal_sum(__m256d acc) {
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 * kLanes <= n; i += 2 * kLanes) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + kLanes), _mm256_loadu_pd(y + i + kLanes), acc1);
  }
  for (; i + kLanes <= n; i += kLanes) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

double weighted_squared_norm_avx2(const double* x, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_mul_pd(xv, xv), acc);
  }
  double sum = horizontal_sum(acc);
  for (; i < n; ++i) sum += w[i] * (x[i] * x[i]);
  return sum;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d prod = _mm256_mul_pd(av, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

// Scalar fallback for the boundary rows; same operation order as the vector body.
inline double residual_row(const double* v, const double* f, std::size_t i, std::size_t n,
                           double inv_h2, double gamma) {
  const double left = i > 0 ? v[i - 1] : 0.0;
  const double right = i + 1 < n ? v[i + 1] : 0.0;
  const double lap = ((2.0 * v[i] - left) - right) * inv_h2;
  return (lap + gamma * ((v[i] * v[i]) * v[i])) - f[i];
}

void bvp_residual_avx2(const double* v, const double* f, std::size_t n, double inv_h2,
                       double gamma, double* out) {
  if (n < kLanes + 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = residual_row(v, f, i, n, inv_h2, gamma);
    return;
  }
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d ih2 = _mm256_set1_pd(inv_h2);
  const __m256d g = _mm256_set1_pd(gamma);
  out[0] = residual_row(v, f, 0, n, inv_h2, gamma);
  std::size_t i = 1;
  for (; i + kLanes < n; i += kLanes) {
    const __m256d c = _mm256_loadu_pd(v + i);
    const __m256d l = _mm256_loadu_pd(v + i - 1);
    const __m256d r = _mm256_loadu_pd(v + i + 1);
    const __m256d lap = _mm256_mul_pd(_mm256_sub_pd(_mm256_sub_pd(_mm256_mul_pd(two, c), l), r), ih2);
    const __m256d cube = _mm256_mul_pd(_mm256_mul_pd(c, c), c);
    const __m256d sum = _mm256_add_pd(lap, _mm256_mul_pd(g, cube));
    _mm256_storeu_pd(out + i, _mm256_sub_pd(sum, _mm256_loadu_pd(f + i)));
  }
  for (; i < n; ++i) out[i] = residual_row(v, f, i, n, inv_h2, gamma);
}

inline double jacobian_row(const double* v, const double* y, std::size_t i, std::size_t n,
                           double inv_h2, double three_gamma) {
  const double left = i > 0 ? y[i - 1] : 0.0;
  const double right = i + 1 < n ? y[i + 1] : 0.0;
  const double lap = ((2.0 * y[i] - left) - right) * inv_h2;
  return lap + (three_gamma * (v[i] * v[i])) * y[i];
}

void bvp_apply_jacobian_avx2(const double* v, const double* y, std::size_t n, double inv_h2,
                             double gamma, double* out) {
  const double three_gamma = 3.0 * gamma;
  if (n < kLanes + 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = jacobian_row(v, y, i, n, inv_h2, three_gamma);
    return;
  }
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d ih2 = _mm256_set1_pd(inv_h2);
  const __m256d g3 = _mm256_set1_pd(three_gamma);
  out[0] = jacobian_row(v, y, 0, n, inv_h2, three_gamma);
  std::size_t i = 1;
  for (; i + kLanes < n; i += kLanes) {
    const __m256d c = _mm256_loadu_pd(y + i);
    const __m256d l = _mm256_loadu_pd(y + i - 1);
    const __m256d r = _mm256_loadu_pd(y + i + 1);
    const __m256d lap = _mm256_mul_pd(_mm256_sub_pd(_mm256_sub_pd(_mm256_mul_pd(two, c), l), r), ih2);
    const __m256d vv = _mm256_loadu_pd(v + i);
    const __m256d diag = _mm256_mul_pd(g3, _mm256_mul_pd(vv, vv));
    _mm256_storeu_pd(out + i, _mm256_add_pd(lap, _mm256_mul_pd(diag, c)));
  }
  for (; i < n; ++i) out[i] = jacobian_row(v, y, i, n, inv_h2, three_gamma);
}

constexpr KernelTable kAvx2Table{
    Isa::avx2,
    "avx2",
    &dot_avx2,
    &weighted_squared_norm_avx2,
    &axpy_avx2,
    &bvp_residual_avx2,
    &bvp_apply_jacobian_avx2,
};

}  // namespace

const KernelTable& avx2_table() noexcept { return kAvx2Table; }

}  // namespace zerocert::kernels::detail
