#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "json.hpp"
#include "ncreal/realization.hpp"

namespace ncreal {

// E_{alpha,beta} * e_omega with |alpha| = |beta| = |omega| + 1. Letters are 0-based.
struct FockBasisIndex {
    Word alpha;
    Word beta;
    Word omega;
    bool operator==(const FockBasisIndex&) const = default;
};

// Truncated F_n(C^d), word length <= L. Basis order: by |omega|, then omega, alpha, beta
// lexicographically.
class FockSpace {
public:
    FockSpace(std::size_t n, std::size_t d, std::size_t L);

    std::size_t n() const { return n_; }
    std::size_t d() const { return d_; }
    std::size_t L() const { return L_; }
    std::size_t size() const { return offset_.back(); }
    std::size_t level_offset(std::size_t l) const { return offset_[l]; }
    std::size_t level_size(std::size_t l) const { return offset_[l + 1] - offset_[l]; }

    // Word ranks: omega base d, alpha and beta base n, first letter most significant.
    std::size_t index(std::size_t l, std::size_t omega_rank, std::size_t alpha_rank, std::size_t beta_rank) const;
    std::size_t index(const FockBasisIndex& b) const;
    FockBasisIndex basis(std::size_t k) const;
    std::size_t vacuum(std::size_t i, std::size_t j) const { return i * n_ + j; }
    bool operator==(const FockSpace& o) const { return n_ == o.n_ && d_ == o.d_ && L_ == o.L_; }

private:
    std::size_t n_, d_, L_;
    std::vector<std::size_t> offset_;
};

std::vector<FockBasisIndex> fock_basis(std::size_t n, std::size_t d, std::size_t L);

// L_{i,j;k}: E_{a,b}*e_w -> E_{ia,jb}*e_{kw}; R_{a,b;w}: E_{al,be}*e_om -> E_{al a, be b}*e_{om w}.
// Images past length L are dropped.
SparseMatrix left_creation(const FockSpace& f, std::size_t i, std::size_t j, std::size_t k);
SparseMatrix right_creation(const FockSpace& f, std::size_t a, std::size_t b, std::size_t w);
// Adjoint of right_creation, built directly.
SparseMatrix right_annihilation(const FockSpace& f, std::size_t a, std::size_t b, std::size_t w);
// Word-transposing permutation.
SparseMatrix flip_unitary(const FockSpace& f);

struct TruncatedFockVector {
    std::size_t n = 0, d = 0, L = 0;
    std::vector<Complex> coeffs;  // indexed by FockSpace(n, d, L)

    TruncatedFockVector() = default;
    TruncatedFockVector(std::size_t n_, std::size_t d_, std::size_t L_);
    FockSpace space() const { return FockSpace(n, d, L); }
    Complex& operator[](std::size_t k) { return coeffs[k]; }
    Complex operator[](std::size_t k) const { return coeffs[k]; }
    double norm() const;
};

Complex inner(const TruncatedFockVector& f, const TruncatedFockVector& g);

// E_{alpha,beta}*e_omega(X) = (I (x) E_{a0 b0}) X_{w1} (I (x) E_{a1 b1}) ... X_{wl} (I (x) E_{al bl}).
ComplexMatrix basis_eval(const FockBasisIndex& b, const MatrixTuple& x);
// sum h_k E_k(X), formal evaluation about 0.
ComplexMatrix eval_at_zero(const TruncatedFockVector& h, const MatrixTuple& x);
// Evaluation about Y: eval_at_zero(h, X - I (x) Y).
ComplexMatrix eval_fock(const TruncatedFockVector& h, const MatrixTuple& x, const CentrePoint& y);

// Coefficients conj(y^* E_k(X) v). Warns when ||X||_col >= 1/sqrt(n).
TruncatedFockVector kernel_vector(std::size_t n, std::size_t d, std::size_t L, const MatrixTuple& x,
                                  const ComplexMatrix& y, const ComplexMatrix& v);

// State C^n (x) F; A_k(Z) = sum_ij Z E_ij (x) R*_{ij;k}, c v = v (x) h, b^* picks vacuum coefficients.
DescriptorRealization fock_realization(const TruncatedFockVector& h, const CentrePoint& y);
// Coefficients scaled by r^{|omega|}.
TruncatedFockVector dilate(const TruncatedFockVector& h, double r);
// Realization of dilate(h, r) with A scaled by 1/r; defines the same function as h.
DescriptorRealization fock_realization_dilated(const TruncatedFockVector& h, const CentrePoint& y, double r);

// f_{a,b} as truncated series in d n^2 letters; letter (a', b', w) has index (a' n + b') d + w.
struct ReshuffledSeries {
    std::size_t n = 0, d = 0, L = 0;
    // tables[a * n + b][word offset + word rank], words ordered by length then lexicographically.
    std::vector<std::vector<Complex>> tables;
};
ReshuffledSeries reshuffle(const TruncatedFockVector& h);
TruncatedFockVector unreshuffle(const ReshuffledSeries& s);

using NCEvaluator = std::function<ComplexMatrix(const MatrixTuple&)>;
// Multilinear moments on matrix units from nilpotent points, expanded into Fock coordinates.
TruncatedFockVector coeffs_from_nc_function(const NCEvaluator& f, const CentrePoint& y, std::size_t L);

nlohmann::json fock_to_json(const TruncatedFockVector& h);
TruncatedFockVector fock_from_json(const nlohmann::json& j);

}  // namespace ncreal
