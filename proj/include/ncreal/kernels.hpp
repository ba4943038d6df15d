#pragma once

#include <complex>
#include <cstddef>

namespace ncreal::kernels {

using cplx = std::complex<double>;

// y[i] += a * x[i]
using AxpyFn = void (*)(std::size_t n, cplx a, const cplx* x, cplx* y);
// sum conj(x[i]) * y[i]
using DotcFn = cplx (*)(std::size_t n, const cplx* x, const cplx* y);
// sum x[i] * y[i]
using DotuFn = cplx (*)(std::size_t n, const cplx* x, const cplx* y);
// C (m x n) += A (m x k) * B (k x n), all row-major with leading dimensions
using GemmFn = void (*)(std::size_t m, std::size_t n, std::size_t k, const cplx* a, std::size_t lda,
                        const cplx* b, std::size_t ldb, cplx* c, std::size_t ldc);

struct Table {
    const char* name;
    AxpyFn axpy;
    DotcFn dotc;
    DotuFn dotu;
    GemmFn gemm;
};

const Table& scalar();
// nullptr when the CPU or the build lacks AVX2/FMA.
const Table* avx2();
// Chosen once at first use; NCREAL_SIMD=scalar forces the reference kernels.
const Table& active();

inline void axpy(std::size_t n, cplx a, const cplx* x, cplx* y) { active().axpy(n, a, x, y); }
inline cplx dotc(std::size_t n, const cplx* x, const cplx* y) { return active().dotc(n, x, y); }
inline cplx dotu(std::size_t n, const cplx* x, const cplx* y) { return active().dotu(n, x, y); }
inline void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, std::size_t lda, const cplx* b,
                 std::size_t ldb, cplx* c, std::size_t ldc) {
    active().gemm(m, n, k, a, lda, b, ldb, c, ldc);
}

namespace detail {
const Table* avx2_table();
}

}  // namespace ncreal::kernels
