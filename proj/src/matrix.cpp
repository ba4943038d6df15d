#include "ncreal/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ncreal/error.hpp"
#include "ncreal/kernels.hpp"

namespace ncreal {
namespace {

std::string shape(std::size_t r, std::size_t c) {
    std::ostringstream os;
    os << r << "x" << c;
    return os.str();
}

void require_same(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InputError(std::string(op) + ": shape mismatch " + shape(a.rows(), a.cols()) + " vs " +
                         shape(b.rows(), b.cols()));
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols)
        throw InputError("matrix entries length " + std::to_string(data_.size()) + " does not match shape " +
                         shape(rows, cols));
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
    ComplexMatrix m(rows, cols);
    m(i, j) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw InputError("block out of range");
    ComplexMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i) std::copy_n(row(r0 + i) + c0, nc, b.row(i));
    return b;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw InputError("set_block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i) std::copy_n(b.row(i), b.cols(), row(r0 + i) + c0);
}

void ComplexMatrix::add_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b, Complex alpha) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw InputError("add_block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i) kernels::axpy(b.cols(), alpha, b.row(i), row(r0 + i) + c0);
}

ComplexMatrix ComplexMatrix::col(std::size_t j) const { return block(0, j, rows_, 1); }

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    require_same(*this, o, "add");
    kernels::axpy(data_.size(), 1.0, o.data(), data());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    require_same(*this, o, "subtract");
    kernels::axpy(data_.size(), -1.0, o.data(), data());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw InputError("multiply: inner dimension mismatch " + shape(a.rows(), a.cols()) + " * " +
                         shape(b.rows(), b.cols()));
    ComplexMatrix c(a.rows(), b.cols());
    if (c.empty() || a.cols() == 0) return c;
    kernels::gemm(a.rows(), b.cols(), a.cols(), a.data(), a.cols(), b.data(), b.cols(), c.data(), c.cols());
    return c;
}

ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows()) throw InputError("adjoint_times: row mismatch");
    ComplexMatrix c(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        const Complex* ak = a.row(k);
        const Complex* bk = b.row(k);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const Complex s = std::conj(ak[i]);
            if (s != Complex(0.0)) kernels::axpy(b.cols(), s, bk, c.row(i));
        }
    }
    return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex s = a(i, j);
            if (s == Complex(0.0)) continue;
            k.add_block(i * b.rows(), j * b.cols(), b, s);
        }
    return k;
}

ComplexMatrix kron_identity(std::size_t m, const ComplexMatrix& b) {
    ComplexMatrix k(m * b.rows(), m * b.cols());
    for (std::size_t i = 0; i < m; ++i) k.set_block(i * b.rows(), i * b.cols(), b);
    return k;
}

ComplexMatrix hstack(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows()) throw InputError("hstack: row mismatch");
    ComplexMatrix h(a.rows(), a.cols() + b.cols());
    h.set_block(0, 0, a);
    h.set_block(0, a.cols(), b);
    return h;
}

ComplexMatrix vstack(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.cols()) throw InputError("vstack: column mismatch");
    ComplexMatrix v(a.rows() + b.rows(), a.cols());
    v.set_block(0, 0, a);
    v.set_block(a.rows(), 0, b);
    return v;
}

ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix d(a.rows() + b.rows(), a.cols() + b.cols());
    d.set_block(0, 0, a);
    d.set_block(a.rows(), a.cols(), b);
    return d;
}

double rel_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same(a, b, "rel_diff");
    const double scale = std::max({1.0, a.frobenius_norm(), b.frobenius_norm()});
    return (a - b).frobenius_norm() / scale;
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), ptr_(rows + 1, 0) {}

SparseMatrix SparseMatrix::from_dense(const ComplexMatrix& m) {
    SparseMatrix s(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const Complex* r = m.row(i);
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (r[j] != Complex(0.0)) {
                s.idx_.push_back(j);
                s.val_.push_back(r[j]);
            }
        s.ptr_[i + 1] = s.val_.size();
    }
    return s;
}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> t) {
    for (const auto& e : t)
        if (e.row >= rows || e.col >= cols) throw InputError("sparse triplet out of range");
    std::sort(t.begin(), t.end(),
              [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    SparseMatrix s(rows, cols);
    std::size_t k = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        while (k < t.size() && t[k].row == i) {
            const std::size_t j = t[k].col;
            Complex v = 0.0;
            while (k < t.size() && t[k].row == i && t[k].col == j) v += t[k++].value;
            if (v != Complex(0.0)) {
                s.idx_.push_back(j);
                s.val_.push_back(v);
            }
        }
        s.ptr_[i + 1] = s.val_.size();
    }
    return s;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
    SparseMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        s.idx_.push_back(i);
        s.val_.push_back(1.0);
        s.ptr_[i + 1] = i + 1;
    }
    return s;
}

ComplexMatrix SparseMatrix::to_dense() const {
    ComplexMatrix m(rows_, cols_);
    add_to(m);
    return m;
}

std::vector<SparseMatrix::Triplet> SparseMatrix::triplets() const {
    std::vector<Triplet> t;
    t.reserve(nnz());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = ptr_[i]; k < ptr_[i + 1]; ++k) t.push_back({i, idx_[k], val_[k]});
    return t;
}

SparseMatrix SparseMatrix::adjoint() const {
    std::vector<Triplet> t = triplets();
    for (auto& e : t) {
        std::swap(e.row, e.col);
        e.value = std::conj(e.value);
    }
    return from_triplets(cols_, rows_, std::move(t));
}

SparseMatrix SparseMatrix::scaled(Complex s) const {
    if (s == Complex(0.0)) return SparseMatrix(rows_, cols_);
    SparseMatrix r = *this;
    for (auto& v : r.val_) v *= s;
    return r;
}

double SparseMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : val_) s += std::norm(v);
    return std::sqrt(s);
}

ComplexMatrix SparseMatrix::multiply(const ComplexMatrix& v) const {
    if (v.rows() != cols_) throw InputError("sparse multiply: dimension mismatch");
    ComplexMatrix out(rows_, v.cols());
    if (v.cols() == 0) return out;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = ptr_[i]; k < ptr_[i + 1]; ++k) kernels::axpy(v.cols(), val_[k], v.row(idx_[k]), out.row(i));
    return out;
}

ComplexMatrix SparseMatrix::left_multiply(const ComplexMatrix& u) const {
    if (u.cols() != rows_) throw InputError("sparse left_multiply: dimension mismatch");
    ComplexMatrix out(u.rows(), cols_);
    for (std::size_t r = 0; r < u.rows(); ++r) {
        const Complex* ur = u.row(r);
        Complex* o = out.row(r);
        for (std::size_t i = 0; i < rows_; ++i) {
            const Complex s = ur[i];
            if (s == Complex(0.0)) continue;
            for (std::size_t k = ptr_[i]; k < ptr_[i + 1]; ++k) o[idx_[k]] += s * val_[k];
        }
    }
    return out;
}

void SparseMatrix::add_to(ComplexMatrix& m, Complex alpha, std::size_t r0, std::size_t c0) const {
    if (r0 + rows_ > m.rows() || c0 + cols_ > m.cols()) throw InputError("sparse add_to out of range");
    for (std::size_t i = 0; i < rows_; ++i) {
        Complex* r = m.row(r0 + i) + c0;
        for (std::size_t k = ptr_[i]; k < ptr_[i + 1]; ++k) r[idx_[k]] += alpha * val_[k];
    }
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw InputError("sparse product: dimension mismatch");
    std::vector<SparseMatrix::Triplet> t;
    const auto& ap = a.row_ptr();
    const auto& ai = a.col_index();
    const auto& av = a.values();
    const auto& bp = b.row_ptr();
    const auto& bi = b.col_index();
    const auto& bv = b.values();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = ap[i]; k < ap[i + 1]; ++k) {
            const std::size_t r = ai[k];
            for (std::size_t l = bp[r]; l < bp[r + 1]; ++l) t.push_back({i, bi[l], av[k] * bv[l]});
        }
    return SparseMatrix::from_triplets(a.rows(), b.cols(), std::move(t));
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("sparse sum: shape mismatch");
    auto t = a.triplets();
    auto u = b.triplets();
    t.insert(t.end(), u.begin(), u.end());
    return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

SparseMatrix sparse_kron(const SparseMatrix& a, const SparseMatrix& b) {
    std::vector<SparseMatrix::Triplet> t;
    t.reserve(a.nnz() * b.nnz());
    for (const auto& x : a.triplets())
        for (const auto& y : b.triplets())
            t.push_back({x.row * b.rows() + y.row, x.col * b.cols() + y.col, x.value * y.value});
    return SparseMatrix::from_triplets(a.rows() * b.rows(), a.cols() * b.cols(), std::move(t));
}

}  // namespace ncreal
