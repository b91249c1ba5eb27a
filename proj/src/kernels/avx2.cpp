#include <immintrin.h>

#include "margulis/kernels.hpp"

// Compiled with -mavx2 only (no -mfma): each lane performs the same
// multiply-then-add sequence as the scalar loop, in the same order.

namespace margulis::kernels::avx2 {

void gemm(std::size_t m, std::size_t k, std::size_t n, const double* a,
          const double* b, double* c) {
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a + i * k;
    double* crow = c + i * n;
    std::size_t j = 0;
    for (; j < n4; j += 4) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t l = 0; l < k; ++l) {
        const __m256d coeff = _mm256_broadcast_sd(arow + l);
        const __m256d brow = _mm256_loadu_pd(b + l * n + j);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(coeff, brow));
      }
      _mm256_storeu_pd(crow + j, acc);
    }
    for (; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t l = 0; l < k; ++l) {
        acc += arow[l] * b[l * n + j];
      }
      crow[j] = acc;
    }
  }
}

void axpby(std::size_t count, double alpha, const double* a, double beta,
           const double* b, double* c) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d x = _mm256_mul_pd(va, _mm256_loadu_pd(a + i));
    const __m256d y = _mm256_mul_pd(vb, _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(c + i, _mm256_add_pd(x, y));
  }
  for (; i < count; ++i) {
    c[i] = alpha * a[i] + beta * b[i];
  }
}

}  // namespace margulis::kernels::avx2
