#include "margulis/kernels.hpp"

namespace margulis::kernels::scalar {

void gemm(std::size_t m, std::size_t k, std::size_t n, const double* a,
          const double* b, double* c) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a + i * k;
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t l = 0; l < k; ++l) {
        acc += arow[l] * b[l * n + j];
      }
      c[i * n + j] = acc;
    }
  }
}

void axpby(std::size_t count, double alpha, const double* a, double beta,
           const double* b, double* c) {
  for (std::size_t i = 0; i < count; ++i) {
    c[i] = alpha * a[i] + beta * b[i];
  }
}

}  // namespace margulis::kernels::scalar
