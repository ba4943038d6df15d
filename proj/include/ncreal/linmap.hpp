#pragma once

#include <cstddef>
#include <vector>

#include "ncreal/core.hpp"
#include "ncreal/matrix.hpp"

namespace ncreal {

// A = (A_1..A_d), A_j : C^{n x n} -> C^{rows x cols}, A_j(G) = sum_pq G_pq B[j][p][q].
// Realizations use square maps (rows = cols = N); FM input maps have cols = n.
class MatrixLinearMap {
public:
    MatrixLinearMap() = default;
    MatrixLinearMap(std::size_t n, std::size_t rows, std::size_t cols, std::size_t d);
    MatrixLinearMap(std::size_t n, std::size_t rows, std::size_t cols, std::size_t d, std::vector<SparseMatrix> coeffs);

    std::size_t n() const { return n_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t d() const { return d_; }
    std::size_t state_dim() const;

    std::size_t index(std::size_t j, std::size_t p, std::size_t q) const { return (j * n_ + p) * n_ + q; }
    const SparseMatrix& coeff(std::size_t j, std::size_t p, std::size_t q) const { return c_[index(j, p, q)]; }
    void set_coeff(std::size_t j, std::size_t p, std::size_t q, SparseMatrix b);
    void set_coeff(std::size_t j, std::size_t p, std::size_t q, const ComplexMatrix& b);
    const std::vector<SparseMatrix>& coeffs() const { return c_; }

private:
    std::size_t n_ = 0, rows_ = 0, cols_ = 0, d_ = 0;
    std::vector<SparseMatrix> c_;
};

// A_j(G); j is 0-based.
ComplexMatrix apply(const MatrixLinearMap& a, std::size_t j, const ComplexMatrix& g);
// A_j(G) * v without forming A_j(G).
ComplexMatrix apply_to(const MatrixLinearMap& a, std::size_t j, const ComplexMatrix& g, const ComplexMatrix& v);
// A_j(G)^* * v
ComplexMatrix adjoint_apply_to(const MatrixLinearMap& a, std::size_t j, const ComplexMatrix& g, const ComplexMatrix& v);
// sum_j (id_m (x) A_j)(X_j) on C^m (x) C^N.
ComplexMatrix ampliated_apply(const MatrixLinearMap& a, const MatrixTuple& x);
ComplexMatrix word_apply(const MatrixLinearMap& a, const Word& w, const std::vector<ComplexMatrix>& args);
ComplexMatrix adjoint_word_apply(const MatrixLinearMap& a, const Word& w, const std::vector<ComplexMatrix>& args);
// Upper bound r with ||A(X)|| <= r ||X||_col at every level.
double cb_row_norm_bound(const MatrixLinearMap& a);

// Coefficients P^* B Q.
MatrixLinearMap compress(const MatrixLinearMap& a, const ComplexMatrix& p, const ComplexMatrix& q);
MatrixLinearMap scaled(const MatrixLinearMap& a, Complex s);

}  // namespace ncreal
