#pragma once

#include <cstddef>
#include <vector>

#include "ncreal/realization.hpp"

namespace ncreal {

struct SubspaceBasis {
    std::size_t ambient_dim = 0;
    ComplexMatrix basis;  // ambient_dim x k, orthonormal columns
    std::size_t dim() const { return basis.cols(); }
};

// Smallest subspace containing the seed columns and invariant under every A_j(E_pq).
// Columns of the result are orthonormal.
ComplexMatrix invariant_span(const MatrixLinearMap& a, const std::vector<ComplexMatrix>& seeds,
                             std::size_t max_steps = static_cast<std::size_t>(-1));
// Coefficients B^*, so that this map's A_j(E_pq) is the adjoint of the original's.
MatrixLinearMap adjoint_coefficients(const MatrixLinearMap& a);

SubspaceBasis controllable_basis(const DescriptorRealization& r);
SubspaceBasis observable_basis(const DescriptorRealization& r);
bool is_minimal(const DescriptorRealization& r);

// Restrict to the controllable space, then compress to the observable space of the restriction.
DescriptorRealization kalman_minimize(const DescriptorRealization& r);

// Recentre at X (level m over n): new centre of size mn, state dimension mN.
DescriptorRealization translate(const DescriptorRealization& r, const MatrixTuple& x);

// Largest residual of the four linearized Lost-Abbey identities over matrix units T, G, H and letters,
// each divided by max(1, product of the factor norms appearing in that identity).
double llac_residual(const DescriptorRealization& r);
bool is_nc_function(const DescriptorRealization& r, double tol);

// The level-(l+1) jointly nilpotent point with r * args[i] in block (i, i+1) of component w[i].
MatrixTuple nilpotent_point(const CentrePoint& y, const Word& w, const std::vector<ComplexMatrix>& args, double r);
ComplexMatrix moment_via_nilpotent(const DescriptorRealization& r, const Word& w, const std::vector<ComplexMatrix>& args,
                                   double scale = 1.0);

struct EquivalenceReport {
    bool equivalent = false;
    std::size_t depth = 0;
    double deviation = 0.0;
    // true: every moment was computed; false: checked on the depth-L reachable space of the difference realization.
    bool exhaustive = false;
};

// Matrix-unit moment count sum_{l <= L} (d n^2)^l.
double moment_count(std::size_t n, std::size_t d, std::size_t L);
// Max over depths l <= L of ||D_l||_F / max(1, ||M1_l||_F, ||M2_l||_F), where M_l stacks every
// matrix-unit moment of length l and D_l = M1_l - M2_l.
double max_moment_deviation(const DescriptorRealization& r1, const DescriptorRealization& r2, std::size_t L);
// ||b_diff^* Q_L|| / max(1, ||b_diff||), Q_L an orthonormal basis of the depth-L reachable space of
// (A1 (+) A2, b1 (+) -b2, c1 (+) c2). Zero iff all moments up to depth L agree.
double reachable_moment_deviation(const DescriptorRealization& r1, const DescriptorRealization& r2, std::size_t L);

// Exhaustive moments when their count is at most this; otherwise the reachable-space test.
inline constexpr double kExhaustiveMomentLimit = 20000.0;

EquivalenceReport equivalence_report(const DescriptorRealization& r1, const DescriptorRealization& r2, std::size_t L,
                                     double tol);
bool analytically_equivalent(const DescriptorRealization& r1, const DescriptorRealization& r2, std::size_t L, double tol);
// Default depth N1 + N2 (heuristic).
bool analytically_equivalent(const DescriptorRealization& r1, const DescriptorRealization& r2, double tol = 1e-8);

// S with S A1^w(args) c1 = A2^w(args) c2, so that r2 = similarity_transform(r1, S).
ComplexMatrix recover_similarity(const DescriptorRealization& r1, const DescriptorRealization& r2);

}  // namespace ncreal
