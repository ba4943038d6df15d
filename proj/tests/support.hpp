#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ncreal/analysis.hpp"
#include "ncreal/parser.hpp"

namespace testsupport {

using namespace ncreal;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(g_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(g_); }
    std::size_t below(std::size_t k) { return std::uniform_int_distribution<std::size_t>(0, k - 1)(g_); }
    Complex complex() { return Complex(normal(), normal()) / std::sqrt(2.0); }
    std::mt19937_64& engine() { return g_; }

private:
    std::mt19937_64 g_;
};

ComplexMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, double scale = 1.0);
MatrixTuple random_tuple(Rng& rng, std::size_t n, std::size_t m, std::size_t d, double scale = 1.0);
CentrePoint random_centre(Rng& rng, std::size_t n, std::size_t d, double scale = 1.0);
// Dense random coefficients, scaled so that cb_row_norm_bound is about `strength`.
DescriptorRealization random_descriptor(Rng& rng, const CentrePoint& y, std::size_t N, double strength = 1.0);
DescriptorRealization direct_sum(const DescriptorRealization& r1, const DescriptorRealization& r2);
// Extra states that are unreachable (junk block with zero input) and unobservable.
DescriptorRealization pad_with_junk(Rng& rng, const DescriptorRealization& r, std::size_t extra);
// S = I + eps * G, G Gaussian.
ComplexMatrix near_identity(Rng& rng, std::size_t N, double eps);

// Random NC rational expression text in x1..xd with depth <= max_depth.
std::string random_expression_text(Rng& rng, std::size_t d, std::size_t max_depth);
// Resamples until every inverse is well-conditioned at y (sigma_min / max(1, sigma_max) >= 1e-3).
// Depth is kept within [min_depth, max_depth].
Expression random_expression(Rng& rng, const CentrePoint& y, std::size_t max_depth, std::string* text = nullptr,
                             std::size_t min_depth = 0);
// Smallest relative sigma over the inverse nodes of e at x (inf if none).
double inverse_conditioning(const Expression& e, const MatrixTuple& x);

// I (x) Y + eps * H at level m.
MatrixTuple perturbed_point(Rng& rng, const CentrePoint& y, std::size_t m, double eps);

// Independent oracles.
ComplexMatrix naive_multiply(const ComplexMatrix& a, const ComplexMatrix& b);
// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations.
std::vector<double> jacobi_hermitian_eigenvalues(ComplexMatrix h);
double max_rel(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace testsupport
