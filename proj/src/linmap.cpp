#include "ncreal/linmap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ncreal/error.hpp"
#include "ncreal/linalg.hpp"

namespace ncreal {
namespace {

constexpr std::size_t kDenseNormLimit = 400;

void require_arg(const MatrixLinearMap& a, std::size_t j, const ComplexMatrix& g) {
    if (j >= a.d()) throw InputError("linear map index " + std::to_string(j + 1) + " out of range 1.." + std::to_string(a.d()));
    if (g.rows() != a.n() || g.cols() != a.n())
        throw InputError("linear map argument must be " + std::to_string(a.n()) + "x" + std::to_string(a.n()));
}

// Upper bound on the norm of a Hermitian positive semidefinite matrix.
double psd_norm_bound(const SparseMatrix& h) {
    if (h.rows() <= kDenseNormLimit) return spectral_norm(h.to_dense());
    double best = 0.0;
    const auto& p = h.row_ptr();
    const auto& v = h.values();
    for (std::size_t i = 0; i < h.rows(); ++i) {
        double s = 0.0;
        for (std::size_t k = p[i]; k < p[i + 1]; ++k) s += std::abs(v[k]);
        best = std::max(best, s);
    }
    return best;
}

double operator_norm_bound(const SparseMatrix& b) {
    if (std::max(b.rows(), b.cols()) <= kDenseNormLimit) return spectral_norm(b.to_dense());
    std::vector<double> colsum(b.cols(), 0.0);
    double rmax = 0.0;
    const auto& p = b.row_ptr();
    const auto& idx = b.col_index();
    const auto& v = b.values();
    for (std::size_t i = 0; i < b.rows(); ++i) {
        double s = 0.0;
        for (std::size_t k = p[i]; k < p[i + 1]; ++k) {
            s += std::abs(v[k]);
            colsum[idx[k]] += std::abs(v[k]);
        }
        rmax = std::max(rmax, s);
    }
    const double cmax = colsum.empty() ? 0.0 : *std::max_element(colsum.begin(), colsum.end());
    return std::sqrt(rmax * cmax);
}

}  // namespace

MatrixLinearMap::MatrixLinearMap(std::size_t n, std::size_t rows, std::size_t cols, std::size_t d)
    : n_(n), rows_(rows), cols_(cols), d_(d), c_(d * n * n, SparseMatrix(rows, cols)) {}

MatrixLinearMap::MatrixLinearMap(std::size_t n, std::size_t rows, std::size_t cols, std::size_t d,
                                 std::vector<SparseMatrix> coeffs)
    : n_(n), rows_(rows), cols_(cols), d_(d), c_(std::move(coeffs)) {
    if (c_.size() != d * n * n) throw InputError("linear map needs d*n*n coefficient matrices");
    for (const auto& b : c_)
        if (b.rows() != rows || b.cols() != cols) throw InputError("linear map coefficient has wrong shape");
}

std::size_t MatrixLinearMap::state_dim() const {
    if (rows_ != cols_) throw InputError("linear map is not square");
    return rows_;
}

void MatrixLinearMap::set_coeff(std::size_t j, std::size_t p, std::size_t q, SparseMatrix b) {
    if (b.rows() != rows_ || b.cols() != cols_) throw InputError("set_coeff: wrong coefficient shape");
    c_[index(j, p, q)] = std::move(b);
}

void MatrixLinearMap::set_coeff(std::size_t j, std::size_t p, std::size_t q, const ComplexMatrix& b) {
    set_coeff(j, p, q, SparseMatrix::from_dense(b));
}

ComplexMatrix apply(const MatrixLinearMap& a, std::size_t j, const ComplexMatrix& g) {
    require_arg(a, j, g);
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t p = 0; p < a.n(); ++p)
        for (std::size_t q = 0; q < a.n(); ++q)
            if (g(p, q) != Complex(0.0)) a.coeff(j, p, q).add_to(out, g(p, q));
    return out;
}

ComplexMatrix apply_to(const MatrixLinearMap& a, std::size_t j, const ComplexMatrix& g, const ComplexMatrix& v) {
    require_arg(a, j, g);
    if (v.rows() != a.cols()) throw InputError("apply_to: vector block has wrong row count");
    ComplexMatrix out(a.rows(), v.cols());
    for (std::size_t p = 0; p < a.n(); ++p)
        for (std::size_t q = 0; q < a.n(); ++q)
            if (g(p, q) != Complex(0.0)) out.add_block(0, 0, a.coeff(j, p, q).multiply(v), g(p, q));
    return out;
}

ComplexMatrix adjoint_apply_to(const MatrixLinearMap& a, std::size_t j, const ComplexMatrix& g, const ComplexMatrix& v) {
    require_arg(a, j, g);
    if (v.rows() != a.rows()) throw InputError("adjoint_apply_to: vector block has wrong row count");
    ComplexMatrix out(a.cols(), v.cols());
    for (std::size_t p = 0; p < a.n(); ++p)
        for (std::size_t q = 0; q < a.n(); ++q)
            if (g(p, q) != Complex(0.0))
                out.add_block(0, 0, a.coeff(j, p, q).adjoint().multiply(v), std::conj(g(p, q)));
    return out;
}

ComplexMatrix ampliated_apply(const MatrixLinearMap& a, const MatrixTuple& x) {
    if (x.base_n() != a.n() || x.d() != a.d())
        throw InputError("ampliated_apply: point has n=" + std::to_string(x.base_n()) + ", d=" + std::to_string(x.d()) +
                         " but map has n=" + std::to_string(a.n()) + ", d=" + std::to_string(a.d()));
    const std::size_t m = x.level_m(), n = a.n();
    ComplexMatrix out(m * a.rows(), m * a.cols());
    for (std::size_t j = 0; j < a.d(); ++j)
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t l = 0; l < m; ++l)
                for (std::size_t p = 0; p < n; ++p)
                    for (std::size_t q = 0; q < n; ++q) {
                        const Complex s = x[j](k * n + p, l * n + q);
                        if (s != Complex(0.0)) a.coeff(j, p, q).add_to(out, s, k * a.rows(), l * a.cols());
                    }
    return out;
}

ComplexMatrix word_apply(const MatrixLinearMap& a, const Word& w, const std::vector<ComplexMatrix>& args) {
    if (args.size() != w.length())
        throw InputError("word_apply: word of length " + std::to_string(w.length()) + " given " +
                         std::to_string(args.size()) + " arguments");
    ComplexMatrix acc = ComplexMatrix::identity(a.state_dim());
    for (std::size_t i = w.length(); i-- > 0;) acc = apply_to(a, static_cast<std::size_t>(w[i]), args[i], acc);
    return acc;
}

ComplexMatrix adjoint_word_apply(const MatrixLinearMap& a, const Word& w, const std::vector<ComplexMatrix>& args) {
    if (args.size() != w.length())
        throw InputError("adjoint_word_apply: word of length " + std::to_string(w.length()) + " given " +
                         std::to_string(args.size()) + " arguments");
    // A_{i_l}(G_l^*)^* ... A_{i_1}(G_1^*)^*, built right to left.
    ComplexMatrix acc = ComplexMatrix::identity(a.state_dim());
    for (std::size_t i = 0; i < w.length(); ++i)
        acc = adjoint_apply_to(a, static_cast<std::size_t>(w[i]), args[i].adjoint(), acc);
    return acc;
}

double cb_row_norm_bound(const MatrixLinearMap& a) {
    if (a.d() == 0 || a.n() == 0 || a.rows() == 0 || a.cols() == 0) return 0.0;
    SparseMatrix vv(a.rows(), a.rows());
    SparseMatrix ww(a.cols(), a.cols());
    double triangle = 0.0;
    for (const auto& b : a.coeffs()) {
        if (b.nnz() == 0) continue;
        const SparseMatrix bh = b.adjoint();
        vv = vv + b * bh;
        ww = ww + bh * b;
        triangle += operator_norm_bound(b);
    }
    const double n = static_cast<double>(a.n()), d = static_cast<double>(a.d());
    const double r1 = std::sqrt(n) * std::sqrt(psd_norm_bound(vv));
    const double r2 = std::sqrt(d * n) * std::sqrt(psd_norm_bound(ww));
    return std::min({r1, r2, triangle});
}

MatrixLinearMap compress(const MatrixLinearMap& a, const ComplexMatrix& p, const ComplexMatrix& q) {
    if (p.rows() != a.rows() || q.rows() != a.cols()) throw InputError("compress: basis dimension mismatch");
    std::vector<SparseMatrix> c;
    c.reserve(a.coeffs().size());
    const ComplexMatrix ph = p.adjoint();
    for (const auto& b : a.coeffs()) c.push_back(SparseMatrix::from_dense(b.left_multiply(ph) * q));
    return MatrixLinearMap(a.n(), p.cols(), q.cols(), a.d(), std::move(c));
}

MatrixLinearMap scaled(const MatrixLinearMap& a, Complex s) {
    std::vector<SparseMatrix> c;
    for (const auto& b : a.coeffs()) c.push_back(b.scaled(s));
    return MatrixLinearMap(a.n(), a.rows(), a.cols(), a.d(), std::move(c));
}

}  // namespace ncreal
