#include "ncreal/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ncreal/error.hpp"
#include "ncreal/kernels.hpp"

extern "C" {
void zgesdd_(const char* jobz, const int* m, const int* n, std::complex<double>* a, const int* lda, double* s,
             std::complex<double>* u, const int* ldu, std::complex<double>* vt, const int* ldvt,
             std::complex<double>* work, const int* lwork, double* rwork, int* iwork, int* info);
void zgeev_(const char* jobvl, const char* jobvr, const int* n, std::complex<double>* a, const int* lda,
            std::complex<double>* w, std::complex<double>* vl, const int* ldvl, std::complex<double>* vr,
            const int* ldvr, std::complex<double>* work, const int* lwork, double* rwork, int* info);
}

namespace ncreal {
namespace {

void lu_substitute(const LUFactor& f, ComplexMatrix& x) {
    const std::size_t n = f.lu.rows();
    const std::size_t r = x.cols();
    for (std::size_t i = 0; i < n; ++i) {
        const Complex* li = f.lu.row(i);
        for (std::size_t k = 0; k < i; ++k)
            if (li[k] != Complex(0.0)) kernels::axpy(r, -li[k], x.row(k), x.row(i));
    }
    for (std::size_t ii = n; ii-- > 0;) {
        const Complex* ui = f.lu.row(ii);
        for (std::size_t k = ii + 1; k < n; ++k)
            if (ui[k] != Complex(0.0)) kernels::axpy(r, -ui[k], x.row(k), x.row(ii));
        const Complex inv = 1.0 / ui[ii];
        Complex* xr = x.row(ii);
        for (std::size_t j = 0; j < r; ++j) xr[j] *= inv;
    }
}

ComplexMatrix permuted(const LUFactor& f, const ComplexMatrix& b) {
    ComplexMatrix x(b.rows(), b.cols());
    for (std::size_t i = 0; i < b.rows(); ++i) std::copy_n(b.row(f.perm[i]), b.cols(), x.row(i));
    return x;
}

ComplexMatrix solve_once(const LUFactor& f, const ComplexMatrix& b) {
    ComplexMatrix x = permuted(f, b);
    lu_substitute(f, x);
    return x;
}

}  // namespace

LUFactor lu_factor(const ComplexMatrix& a) {
    if (!a.is_square()) throw InputError("lu_factor: matrix must be square");
    LUFactor f;
    f.a = a;
    f.lu = a;
    const std::size_t n = a.rows();
    f.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    ComplexMatrix& lu = f.lu;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (p != k) {
            std::swap_ranges(lu.row(k), lu.row(k) + n, lu.row(p));
            std::swap(f.perm[k], f.perm[p]);
        }
        if (best == 0.0) {
            f.exact_zero_pivot = true;
            continue;
        }
        const Complex inv = 1.0 / lu(k, k);
        const Complex* rk = lu.row(k) + k + 1;
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex& l = lu(i, k);
            if (l == Complex(0.0)) continue;
            l *= inv;
            kernels::axpy(n - k - 1, -l, rk, lu.row(i) + k + 1);
        }
    }
    return f;
}

ComplexMatrix lu_solve(const LUFactor& f, const ComplexMatrix& b) {
    if (b.rows() != f.lu.rows()) throw InputError("lu_solve: right-hand side has wrong row count");
    if (f.exact_zero_pivot) throw NumericalError("lu_solve: matrix is exactly singular", 0.0);
    ComplexMatrix x = solve_once(f, b);
    ComplexMatrix r = b - f.a * x;
    x += solve_once(f, r);
    return x;
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) { return lu_solve(lu_factor(a), b); }

ComplexMatrix inverse(const ComplexMatrix& a) { return solve(a, ComplexMatrix::identity(a.rows())); }

std::vector<double> singular_values(const ComplexMatrix& a) {
    const int m = static_cast<int>(a.cols());
    const int n = static_cast<int>(a.rows());
    const int k = std::min(m, n);
    if (k == 0) return {};
    ComplexMatrix work_a = a;
    std::vector<double> s(k);
    std::vector<double> rwork(7 * static_cast<std::size_t>(k) + 8);
    std::vector<int> iwork(8 * static_cast<std::size_t>(k));
    int lwork = -1, info = 0, one = 1;
    Complex wq;
    zgesdd_("N", &m, &n, work_a.data(), &m, s.data(), nullptr, &one, nullptr, &one, &wq, &lwork, rwork.data(),
            iwork.data(), &info);
    lwork = std::max(1, static_cast<int>(wq.real()));
    std::vector<Complex> work(lwork);
    zgesdd_("N", &m, &n, work_a.data(), &m, s.data(), nullptr, &one, nullptr, &one, work.data(), &lwork,
            rwork.data(), iwork.data(), &info);
    if (info != 0) throw NumericalError("singular value decomposition failed, info=" + std::to_string(info), 0.0);
    return s;
}

SVD svd(const ComplexMatrix& a) {
    // Row-major a is the column-major transpose; see the buffer mapping below.
    const int m = static_cast<int>(a.cols());
    const int n = static_cast<int>(a.rows());
    const int k = std::min(m, n);
    SVD out;
    if (k == 0) {
        out.u = ComplexMatrix(a.rows(), 0);
        out.vh = ComplexMatrix(0, a.cols());
        return out;
    }
    ComplexMatrix work_a = a;
    out.s.resize(k);
    ComplexMatrix ubuf(static_cast<std::size_t>(k), static_cast<std::size_t>(m));  // holds vh of a
    ComplexMatrix vbuf(static_cast<std::size_t>(n), static_cast<std::size_t>(k));  // holds u of a
    const std::size_t mx = std::max(m, n);
    std::vector<double> rwork(static_cast<std::size_t>(k) * std::max<std::size_t>(5 * k + 7, 2 * mx + 2 * k + 1));
    std::vector<int> iwork(8 * static_cast<std::size_t>(k));
    int lwork = -1, info = 0;
    Complex wq;
    zgesdd_("S", &m, &n, work_a.data(), &m, out.s.data(), ubuf.data(), &m, vbuf.data(), &k, &wq, &lwork,
            rwork.data(), iwork.data(), &info);
    lwork = std::max(1, static_cast<int>(wq.real()));
    std::vector<Complex> work(lwork);
    zgesdd_("S", &m, &n, work_a.data(), &m, out.s.data(), ubuf.data(), &m, vbuf.data(), &k, work.data(), &lwork,
            rwork.data(), iwork.data(), &info);
    if (info != 0) throw NumericalError("singular value decomposition failed, info=" + std::to_string(info), 0.0);
    out.u = std::move(vbuf);
    out.vh = std::move(ubuf);
    return out;
}

double spectral_norm(const ComplexMatrix& a) {
    const auto s = singular_values(a);
    return s.empty() ? 0.0 : s.front();
}

InvertibilityCheck check_invertible(const ComplexMatrix& a) {
    if (!a.is_square()) throw InputError("check_invertible: matrix must be square");
    if (a.rows() == 0) return {true, std::numeric_limits<double>::infinity(), 0.0};
    if (!a.all_finite()) return {false, 0.0, std::numeric_limits<double>::infinity()};
    const auto s = singular_values(a);
    const double smax = s.front(), smin = s.back();
    return {smin > kInvertibilityTol * std::max(1.0, smax), smin, smax};
}

std::size_t numerical_rank(const ComplexMatrix& a, double rel_tol, double abs_floor) {
    const auto s = singular_values(a);
    if (s.empty()) return 0;
    const double cut = std::max(rel_tol * s.front(), abs_floor);
    std::size_t r = 0;
    for (double v : s)
        if (v > cut) ++r;
    return r;
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& a, double rel_tol) {
    const SVD d = svd(a);
    ComplexMatrix p(a.cols(), a.rows());
    if (d.s.empty()) return p;
    const double cut = rel_tol * d.s.front();
    for (std::size_t i = 0; i < d.s.size(); ++i) {
        if (d.s[i] <= cut) continue;
        const double inv = 1.0 / d.s[i];
        for (std::size_t r = 0; r < a.cols(); ++r) {
            const Complex vr = std::conj(d.vh(i, r)) * inv;
            for (std::size_t c = 0; c < a.rows(); ++c) p(r, c) += vr * std::conj(d.u(c, i));
        }
    }
    return p;
}

std::vector<Complex> eigenvalues(const ComplexMatrix& a) {
    if (!a.is_square()) throw InputError("eigenvalues: matrix must be square");
    const int n = static_cast<int>(a.rows());
    if (n == 0) return {};
    ComplexMatrix work_a = a;
    std::vector<Complex> w(n);
    std::vector<double> rwork(2 * static_cast<std::size_t>(n));
    int lwork = -1, info = 0, one = 1;
    Complex wq;
    zgeev_("N", "N", &n, work_a.data(), &n, w.data(), nullptr, &one, nullptr, &one, &wq, &lwork, rwork.data(),
           &info);
    lwork = std::max(1, static_cast<int>(wq.real()));
    std::vector<Complex> work(lwork);
    zgeev_("N", "N", &n, work_a.data(), &n, w.data(), nullptr, &one, nullptr, &one, work.data(), &lwork,
           rwork.data(), &info);
    if (info != 0) throw NumericalError("eigenvalue computation failed, info=" + std::to_string(info), 0.0);
    return w;
}

double spectral_radius(const ComplexMatrix& a) {
    double r = 0.0;
    for (const auto& z : eigenvalues(a)) r = std::max(r, std::abs(z));
    return r;
}

void OrthoBasis::project_out(Complex* v) const {
    for (std::size_t i = 0; i < size(); ++i) {
        const Complex* q = vector(i);
        const Complex c = kernels::dotc(dim_, q, v);
        kernels::axpy(dim_, -c, q, v);
    }
}

ComplexMatrix OrthoBasis::extend(const ComplexMatrix& cand, double abs_tol) {
    if (cand.rows() != dim_) throw InputError("OrthoBasis::extend: candidate dimension mismatch");
    const std::size_t k = cand.cols();
    const std::size_t first_new = size();
    std::vector<Complex> res(k * dim_);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < dim_; ++i) res[j * dim_ + i] = cand(i, j);
    std::vector<double> norms(k);
    std::vector<bool> alive(k, true);
    auto nrm = [&](std::size_t j) {
        const Complex* v = res.data() + j * dim_;
        return std::sqrt(std::max(0.0, kernels::dotc(dim_, v, v).real()));
    };
    for (std::size_t j = 0; j < k; ++j) {
        project_out(res.data() + j * dim_);
        project_out(res.data() + j * dim_);
        norms[j] = nrm(j);
    }
    while (size() < dim_) {
        std::size_t best = k;
        double bn = abs_tol;
        for (std::size_t j = 0; j < k; ++j)
            if (alive[j] && norms[j] > bn) {
                bn = norms[j];
                best = j;
            }
        if (best == k) break;
        alive[best] = false;
        Complex* v = res.data() + best * dim_;
        project_out(v);
        const double nv = nrm(best);
        if (nv <= abs_tol) continue;
        const double inv = 1.0 / nv;
        for (std::size_t i = 0; i < dim_; ++i) v[i] *= inv;
        rows_.insert(rows_.end(), v, v + dim_);
        const Complex* q = rows_.data() + (size() - 1) * dim_;
        for (std::size_t j = 0; j < k; ++j) {
            if (!alive[j]) continue;
            Complex* w = res.data() + j * dim_;
            const Complex c = kernels::dotc(dim_, q, w);
            kernels::axpy(dim_, -c, q, w);
            norms[j] = nrm(j);
        }
    }
    ComplexMatrix added(dim_, size() - first_new);
    for (std::size_t c = first_new; c < size(); ++c)
        for (std::size_t i = 0; i < dim_; ++i) added(i, c - first_new) = vector(c)[i];
    return added;
}

ComplexMatrix OrthoBasis::matrix() const {
    ComplexMatrix m(dim_, size());
    for (std::size_t c = 0; c < size(); ++c)
        for (std::size_t i = 0; i < dim_; ++i) m(i, c) = vector(c)[i];
    return m;
}

ComplexMatrix orthonormal_basis(const ComplexMatrix& m, double rel_tol) {
    double scale = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) s += std::norm(m(i, j));
        scale = std::max(scale, std::sqrt(s));
    }
    OrthoBasis b(m.rows());
    if (scale > 0.0) b.extend(m, rel_tol * scale);
    return b.matrix();
}

}  // namespace ncreal
