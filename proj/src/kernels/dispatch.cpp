#include "margulis/kernels.hpp"

namespace margulis::kernels {
namespace {

struct Table {
  Backend backend;
  decltype(&scalar::gemm) gemm;
  decltype(&scalar::axpby) axpby;
};

Table select() {
#if defined(MARGULIS_HAVE_AVX2_KERNELS)
  if (backend_available(Backend::Avx2)) {
    return {Backend::Avx2, &avx2::gemm, &avx2::axpby};
  }
#endif
  return {Backend::Scalar, &scalar::gemm, &scalar::axpby};
}

const Table& table() {
  static const Table t = select();
  return t;
}

}  // namespace

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend backend) {
  switch (backend) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(MARGULIS_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() { return table().backend; }

void gemm(std::size_t m, std::size_t k, std::size_t n, const double* a,
          const double* b, double* c) {
  table().gemm(m, k, n, a, b, c);
}

void axpby(std::size_t count, double alpha, const double* a, double beta,
           const double* b, double* c) {
  table().axpby(count, alpha, a, beta, b, c);
}

}  // namespace margulis::kernels
