#pragma once

#include <cstddef>
#include <vector>

#include "ncreal/core.hpp"
#include "ncreal/linmap.hpp"
#include "ncreal/linalg.hpp"

namespace ncreal {

// (A, b, c) about Y: f(X) = (I_m (x) b^*) L_A(X - I_m (x) Y)^{-1} (I_m (x) c).
struct DescriptorRealization {
    MatrixLinearMap A;  // n, N x N, d
    ComplexMatrix b;    // N x n
    ComplexMatrix c;    // N x n
    CentrePoint Y;

    std::size_t n() const { return Y.base_n(); }
    std::size_t d() const { return Y.d(); }
    std::size_t state_dim() const { return b.rows(); }
    void validate() const;
};

// (A, B, C, D) about Y:
// f(X) = I_m (x) D + (I_m (x) C) L_A(X - I_m (x) Y)^{-1} sum_j (id_m (x) B_j)(X_j - I_m (x) Y_j).
struct FMRealization {
    MatrixLinearMap A;  // n, N x N, d
    MatrixLinearMap B;  // n, N x n, d
    ComplexMatrix C;    // n x N
    ComplexMatrix D;    // n x n
    CentrePoint Y;

    std::size_t n() const { return Y.base_n(); }
    std::size_t d() const { return Y.d(); }
    std::size_t state_dim() const { return C.cols(); }
    void validate() const;
};

// I - A(X - I_m (x) Y) for any map A over centre Y.
ComplexMatrix pencil(const MatrixLinearMap& a, const CentrePoint& y, const MatrixTuple& x);
ComplexMatrix pencil(const DescriptorRealization& r, const MatrixTuple& x);
ComplexMatrix pencil(const FMRealization& r, const MatrixTuple& x);

InvertibilityCheck pencil_check(const DescriptorRealization& r, const MatrixTuple& x);
bool in_domain(const DescriptorRealization& r, const MatrixTuple& x);
bool in_domain(const FMRealization& r, const MatrixTuple& x);

ComplexMatrix transfer(const DescriptorRealization& r, const MatrixTuple& x);
ComplexMatrix transfer_fm(const FMRealization& r, const MatrixTuple& x);

// b^* A^w(args) c
ComplexMatrix moment(const DescriptorRealization& r, const Word& w, const std::vector<ComplexMatrix>& args);

// Truncated geometric series sum_{l <= L} (I (x) b^*) T^l (I (x) c), T = A(X - I (x) Y).
ComplexMatrix series_transfer(const DescriptorRealization& r, const MatrixTuple& x, std::size_t L);

// Order of z = 1 as a pole of (zI - T)^{-1}; 0 inside the domain.
std::size_t pole_order(const DescriptorRealization& r, const MatrixTuple& x);
// Same rank-sequence rule applied to an explicit T.
std::size_t pole_order_of(const ComplexMatrix& t);

// A_j -> S A_j S^{-1}, b -> S^{-*} b, c -> S c. Transfer is unchanged.
DescriptorRealization similarity_transform(const DescriptorRealization& r, const ComplexMatrix& s);

}  // namespace ncreal
