#include "ncreal/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace ncreal::kernels {
namespace {

void axpy_ref(std::size_t n, cplx a, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

cplx dotc_ref(std::size_t n, const cplx* x, const cplx* y) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::conj(x[i]) * y[i];
    return s;
}

cplx dotu_ref(std::size_t n, const cplx* x, const cplx* y) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

void gemm_ref(std::size_t m, std::size_t n, std::size_t k, const cplx* a, std::size_t lda, const cplx* b,
              std::size_t ldb, cplx* c, std::size_t ldc) {
    for (std::size_t i = 0; i < m; ++i) {
        cplx* ci = c + i * ldc;
        for (std::size_t p = 0; p < k; ++p) {
            const cplx aip = a[i * lda + p];
            if (aip == cplx(0.0)) continue;
            axpy_ref(n, aip, b + p * ldb, ci);
        }
    }
}

const Table kScalar{"scalar", axpy_ref, dotc_ref, dotu_ref, gemm_ref};

const Table& choose() {
    const char* env = std::getenv("NCREAL_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return kScalar;
    if (const Table* t = avx2()) return *t;
    return kScalar;
}

}  // namespace

const Table& scalar() { return kScalar; }

const Table* avx2() {
#if defined(__x86_64__) || defined(__i386__)
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok ? detail::avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const Table& active() {
    static const Table& t = choose();
    return t;
}

}  // namespace ncreal::kernels
