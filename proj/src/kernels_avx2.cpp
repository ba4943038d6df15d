#include "ncreal/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace ncreal::kernels::detail {
namespace {

inline __m256d cmul(__m256d ar, __m256d ai, __m256d x) {
    const __m256d xs = _mm256_permute_pd(x, 0x5);
    return _mm256_fmaddsub_pd(ar, x, _mm256_mul_pd(ai, xs));
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// even lanes minus odd lanes
inline double hdiff(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_sub_sd(s, _mm_unpackhi_pd(s, s)));
}

void axpy_avx2(std::size_t n, cplx a, const cplx* x, cplx* y) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x0 = _mm256_loadu_pd(xp + 2 * i);
        const __m256d x1 = _mm256_loadu_pd(xp + 2 * i + 4);
        const __m256d y0 = _mm256_loadu_pd(yp + 2 * i);
        const __m256d y1 = _mm256_loadu_pd(yp + 2 * i + 4);
        _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(y0, cmul(ar, ai, x0)));
        _mm256_storeu_pd(yp + 2 * i + 4, _mm256_add_pd(y1, cmul(ar, ai, x1)));
    }
    for (; i + 2 <= n; i += 2) {
        const __m256d x0 = _mm256_loadu_pd(xp + 2 * i);
        const __m256d y0 = _mm256_loadu_pd(yp + 2 * i);
        _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(y0, cmul(ar, ai, x0)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

template <bool Conj>
cplx dot_avx2(std::size_t n, const cplx* x, const cplx* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    __m256d pa = _mm256_setzero_pd(), pb = _mm256_setzero_pd();
    __m256d qa = _mm256_setzero_pd(), qb = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x0 = _mm256_loadu_pd(xp + 2 * i);
        const __m256d y0 = _mm256_loadu_pd(yp + 2 * i);
        const __m256d x1 = _mm256_loadu_pd(xp + 2 * i + 4);
        const __m256d y1 = _mm256_loadu_pd(yp + 2 * i + 4);
        pa = _mm256_fmadd_pd(x0, y0, pa);
        pb = _mm256_fmadd_pd(x0, _mm256_permute_pd(y0, 0x5), pb);
        qa = _mm256_fmadd_pd(x1, y1, qa);
        qb = _mm256_fmadd_pd(x1, _mm256_permute_pd(y1, 0x5), qb);
    }
    for (; i + 2 <= n; i += 2) {
        const __m256d x0 = _mm256_loadu_pd(xp + 2 * i);
        const __m256d y0 = _mm256_loadu_pd(yp + 2 * i);
        pa = _mm256_fmadd_pd(x0, y0, pa);
        pb = _mm256_fmadd_pd(x0, _mm256_permute_pd(y0, 0x5), pb);
    }
    pa = _mm256_add_pd(pa, qa);
    pb = _mm256_add_pd(pb, qb);
    cplx s;
    if constexpr (Conj)
        s = cplx(hsum(pa), hdiff(pb));
    else
        s = cplx(hdiff(pa), hsum(pb));
    for (; i < n; ++i) {
        if constexpr (Conj)
            s += std::conj(x[i]) * y[i];
        else
            s += x[i] * y[i];
    }
    return s;
}

cplx dotc_avx2(std::size_t n, const cplx* x, const cplx* y) { return dot_avx2<true>(n, x, y); }
cplx dotu_avx2(std::size_t n, const cplx* x, const cplx* y) { return dot_avx2<false>(n, x, y); }

void gemm_avx2(std::size_t m, std::size_t n, std::size_t k, const cplx* a, std::size_t lda, const cplx* b,
               std::size_t ldb, cplx* c, std::size_t ldc) {
    for (std::size_t i = 0; i < m; ++i) {
        cplx* ci = c + i * ldc;
        for (std::size_t p = 0; p < k; ++p) {
            const cplx aip = a[i * lda + p];
            if (aip == cplx(0.0)) continue;
            axpy_avx2(n, aip, b + p * ldb, ci);
        }
    }
}

const Table kAvx2{"avx2", axpy_avx2, dotc_avx2, dotu_avx2, gemm_avx2};

}  // namespace

const Table* avx2_table() { return &kAvx2; }

}  // namespace ncreal::kernels::detail

#else

namespace ncreal::kernels::detail {
const Table* avx2_table() { return nullptr; }
}

#endif
