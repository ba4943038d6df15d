#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ncreal {

using Complex = std::complex<double>;

// Dense row-major complex matrix. Zero-sized shapes are allowed.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);
    // E_{ij}: a single 1 at (i, j).
    static ComplexMatrix unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Complex* data() { return data_.data(); }
    const Complex* data() const { return data_.data(); }
    Complex* row(std::size_t i) { return data_.data() + i * cols_; }
    const Complex* row(std::size_t i) const { return data_.data() + i * cols_; }
    const std::vector<Complex>& entries() const { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b);
    void add_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b, Complex alpha = 1.0);
    ComplexMatrix col(std::size_t j) const;

    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(Complex s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex s);

// a^* b without forming a^*.
ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
// I_m (x) b
ComplexMatrix kron_identity(std::size_t m, const ComplexMatrix& b);
ComplexMatrix hstack(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix vstack(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b);
// ||a - b||_F / max(1, ||a||_F, ||b||_F)
double rel_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Compressed sparse rows. Used for large structured operators (Fock space) and
// for the coefficient tensors of linear maps.
class SparseMatrix {
public:
    struct Triplet {
        std::size_t row;
        std::size_t col;
        Complex value;
    };

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols);

    static SparseMatrix from_dense(const ComplexMatrix& m);
    // Duplicate positions are summed; exact zeros are dropped.
    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> t);
    static SparseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return val_.size(); }

    const std::vector<std::size_t>& row_ptr() const { return ptr_; }
    const std::vector<std::size_t>& col_index() const { return idx_; }
    const std::vector<Complex>& values() const { return val_; }

    ComplexMatrix to_dense() const;
    SparseMatrix adjoint() const;
    SparseMatrix scaled(Complex s) const;
    std::vector<Triplet> triplets() const;
    double frobenius_norm() const;

    // S * v
    ComplexMatrix multiply(const ComplexMatrix& v) const;
    // u * S
    ComplexMatrix left_multiply(const ComplexMatrix& u) const;
    // m[r0 + i, c0 + j] += alpha * S(i, j)
    void add_to(ComplexMatrix& m, Complex alpha = 1.0, std::size_t r0 = 0, std::size_t c0 = 0) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> ptr_{0};
    std::vector<std::size_t> idx_;
    std::vector<Complex> val_;
};

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix sparse_kron(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace ncreal
