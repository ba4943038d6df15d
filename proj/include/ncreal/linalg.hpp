#pragma once

#include <cstddef>
#include <vector>

#include "ncreal/matrix.hpp"

namespace ncreal {

// Relative singular-value cutoff for invertibility: sigma_min > 1e-12 * max(1, sigma_max).
inline constexpr double kInvertibilityTol = 1e-12;
// Relative rank cutoff used by subspace iterations.
inline constexpr double kRankTol = 1e-10;

struct LUFactor {
    ComplexMatrix a;  // original matrix, kept for refinement
    ComplexMatrix lu;
    std::vector<std::size_t> perm;
    bool exact_zero_pivot = false;
};

// Partial pivoting, row-major right-looking elimination.
LUFactor lu_factor(const ComplexMatrix& a);
// Solves A X = B with one step of iterative refinement.
ComplexMatrix lu_solve(const LUFactor& f, const ComplexMatrix& b);
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix inverse(const ComplexMatrix& a);

// Descending. Empty for zero-sized input.
std::vector<double> singular_values(const ComplexMatrix& a);

struct SVD {
    ComplexMatrix u;   // rows x k
    std::vector<double> s;
    ComplexMatrix vh;  // k x cols
};
SVD svd(const ComplexMatrix& a);

double spectral_norm(const ComplexMatrix& a);

struct InvertibilityCheck {
    bool invertible;
    double sigma_min;
    double sigma_max;
};
// Zero-sized matrices are invertible with sigma_min = +inf.
InvertibilityCheck check_invertible(const ComplexMatrix& a);

// Number of singular values above rel_tol * sigma_max (and above abs_floor).
std::size_t numerical_rank(const ComplexMatrix& a, double rel_tol, double abs_floor = 0.0);

// Moore-Penrose pseudo-inverse with relative cutoff.
ComplexMatrix pseudo_inverse(const ComplexMatrix& a, double rel_tol = 1e-13);

// Eigenvalues of a general square matrix (LAPACK zgeev).
std::vector<Complex> eigenvalues(const ComplexMatrix& a);
double spectral_radius(const ComplexMatrix& a);

// Incremental orthonormal basis built by pivoted Gram-Schmidt with
// reorthogonalization. Vectors are kept as contiguous rows.
class OrthoBasis {
public:
    explicit OrthoBasis(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return rows_.size() / (dim_ ? dim_ : 1); }
    const Complex* vector(std::size_t i) const { return rows_.data() + i * dim_; }

    // Candidates are the columns of cand (dim x k). Residuals after projection
    // are accepted in pivoted order while their norm exceeds abs_tol.
    // Returns the accepted vectors as columns.
    ComplexMatrix extend(const ComplexMatrix& cand, double abs_tol);

    // Columns form the orthonormal basis (dim x size).
    ComplexMatrix matrix() const;

private:
    void project_out(Complex* v) const;

    std::size_t dim_;
    std::vector<Complex> rows_;
};

// Orthonormal basis of the column span, rank cutoff relative to the largest column norm.
ComplexMatrix orthonormal_basis(const ComplexMatrix& m, double rel_tol = kRankTol);

}  // namespace ncreal
