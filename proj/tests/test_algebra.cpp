#include <cmath>

#include "doctest.h"
#include "ncreal/algebra.hpp"
#include "ncreal/analysis.hpp"
#include "ncreal/error.hpp"
#include "ncreal/parser.hpp"
#include "support.hpp"

using namespace ncreal;
using namespace testsupport;

namespace {

FMRealization constant(double v, const CentrePoint& y) { return constant_fm(v * ComplexMatrix::identity(y.base_n()), y); }

// FM controllable and observable dimensions.
std::pair<std::size_t, std::size_t> fm_subspace_dims(const FMRealization& r) {
    std::vector<ComplexMatrix> seeds;
    for (const auto& b : r.B.coeffs()) seeds.push_back(b.to_dense());
    const std::size_t ctrl = invariant_span(r.A, seeds).cols();
    const std::size_t obs = invariant_span(adjoint_coefficients(r.A), {r.C.adjoint()}).cols();
    return {ctrl, obs};
}

}  // namespace

TEST_CASE("fm_add examples") {
    Rng rng(61);
    const CentrePoint y = random_centre(rng, 2, 2);
    const auto x = perturbed_point(rng, y, 2, 0.5);
    const auto r = fm_mul(coordinate_fm(0, y), coordinate_fm(1, y));
    const auto z = constant_fm(ComplexMatrix(2, 2), y);
    CHECK(z.state_dim() == 0);
    CHECK(rel_diff(transfer_fm(fm_add(r, z), x), transfer_fm(r, x)) < 1e-14);

    const CentrePoint y1 = random_centre(rng, 1, 1);
    const auto five = fm_add(constant(2.0, y1), constant(3.0, y1));
    CHECK(std::abs(transfer_fm(five, perturbed_point(rng, y1, 1, 1.0))(0, 0) - 5.0) < 1e-15);

    const auto s = fm_add(coordinate_fm(0, y), coordinate_fm(1, y));
    CHECK(rel_diff(transfer_fm(s, x), x[0] + x[1]) < 1e-12);
    CHECK(s.state_dim() == 4);
    CHECK_THROWS_AS(fm_add(coordinate_fm(0, y), coordinate_fm(0, random_centre(rng, 2, 2))), InputError);
}

TEST_CASE("fm_mul examples") {
    Rng rng(62);
    const CentrePoint y = random_centre(rng, 3, 2);
    const auto x = perturbed_point(rng, y, 1, 1.0);
    const auto p = fm_mul(coordinate_fm(0, y), coordinate_fm(1, y));
    CHECK(rel_diff(transfer_fm(p, x), naive_multiply(x[0], x[1])) < 1e-12);
    CHECK(p.state_dim() == 6);
    const auto u = fm_mul(constant(1.0, y), p);
    CHECK(rel_diff(transfer_fm(u, x), transfer_fm(p, x)) < 1e-14);
    CHECK(rel_diff(transfer_fm(p, ampliate(y, 1)), naive_multiply(y[0], y[1])) < 1e-14);
}

TEST_CASE("fm_inv examples") {
    Rng rng(63);
    const CentrePoint y1 = random_centre(rng, 1, 1);
    const auto half = fm_inv(constant(2.0, y1));
    CHECK(std::abs(transfer_fm(half, perturbed_point(rng, y1, 2, 1.0))(1, 1) - 0.5) < 1e-15);
    CHECK_THROWS_AS(fm_inv(constant(0.0, y1)), NumericalError);

    const CentrePoint y(2, 1, {ComplexMatrix::unit(2, 2, 0, 1), ComplexMatrix::unit(2, 2, 1, 0)});
    const auto comm = fm_add(fm_mul(coordinate_fm(0, y), coordinate_fm(1, y)),
                             fm_negate(fm_mul(coordinate_fm(1, y), coordinate_fm(0, y))));
    const auto ci = fm_inv(comm);
    ComplexMatrix expect(2, 2);
    expect(0, 0) = 1.0;
    expect(1, 1) = -1.0;
    CHECK(rel_diff(transfer_fm(ci, y), expect) < 1e-15);
    CHECK(ci.state_dim() == comm.state_dim());

    const CentrePoint yr = random_centre(rng, 2, 2);
    const auto r = fm_add(constant(3.0, yr), fm_mul(coordinate_fm(0, yr), coordinate_fm(1, yr)));
    REQUIRE(check_invertible(r.D).invertible);
    const auto twice = fm_inv(fm_inv(r));
    CHECK(max_moment_deviation(fm_to_desc(r), fm_to_desc(twice), 4) < 1e-10);
    CHECK(equivalence_report(fm_to_desc(r), fm_to_desc(twice), 6, 1e-10).equivalent);

    for (int t = 0; t < 5; ++t) {
        const auto xt = perturbed_point(rng, yr, 1 + t % 2, 0.3);
        if (!in_domain(r, xt)) continue;
        const ComplexMatrix prod = transfer_fm(fm_inv(r), xt) * transfer_fm(r, xt);
        CHECK(rel_diff(prod, ComplexMatrix::identity(prod.rows())) < 1e-9);
    }
}

TEST_CASE("fm_inv keeps minimality") {
    Rng rng(64);
    for (int t = 0; t < 5; ++t) {
        const CentrePoint y = random_centre(rng, 2, 2);
        FMRealization r = desc_to_fm(kalman_minimize(random_descriptor(rng, y, 3, 1.0)));
        r.D = r.D + 2.0 * ComplexMatrix::identity(2);
        const auto [c0, o0] = fm_subspace_dims(r);
        if (c0 != r.state_dim() || o0 != r.state_dim()) continue;
        const auto [c1, o1] = fm_subspace_dims(fm_inv(r));
        CHECK(c1 == r.state_dim());
        CHECK(o1 == r.state_dim());
    }
}

TEST_CASE("desc_to_fm and fm_to_desc") {
    Rng rng(65);
    const CentrePoint y = random_centre(rng, 2, 2);
    auto r0 = random_descriptor(rng, y, 3, 1.0);
    auto z = r0;
    z.A = MatrixLinearMap(2, 3, 3, 2);
    const auto fz = desc_to_fm(z);
    CHECK(fz.state_dim() == 0);
    CHECK(rel_diff(fz.D, adjoint_times(z.b, z.c)) == 0.0);

    const auto f = desc_to_fm(r0);
    for (int t = 0; t < 20; ++t) {
        const auto x = perturbed_point(rng, y, 1 + t % 2, 0.5);
        CHECK(rel_diff(transfer_fm(f, x), transfer(r0, x)) < 1e-10);
    }
    CHECK(max_moment_deviation(r0, fm_to_desc(f), 5) < 1e-10);

    const auto dm = random_matrix(rng, 2, 2);
    const auto cd = fm_to_desc(constant_fm(dm, y));
    CHECK(cd.state_dim() == 2);
    CHECK(rel_diff(cd.b, dm.adjoint()) == 0.0);
    CHECK(rel_diff(adjoint_times(cd.b, cd.c), dm) < 1e-15);

    const auto g = fm_mul(coordinate_fm(0, y), coordinate_fm(1, y));
    const auto [ctrl, obs] = fm_subspace_dims(g);
    (void)obs;
    if (ctrl == g.state_dim()) {
        const auto dg = fm_to_desc(g);
        // The descriptor's controllable space contains Ran c = 0 (+) C^n on top of the FM one.
        CHECK(controllable_basis(dg).dim() == g.state_dim() + 2);
    }
}

TEST_CASE("constants and coordinates") {
    Rng rng(66);
    const CentrePoint y = random_centre(rng, 2, 2);
    const auto x = random_tuple(rng, 2, 3, 2, 5.0);
    CHECK(rel_diff(transfer_fm(constant_fm(ComplexMatrix::identity(2), y), x), ComplexMatrix::identity(6)) == 0.0);
    CHECK(transfer_fm(constant_fm(ComplexMatrix(2, 2), y), x).max_abs() == 0.0);
    const auto m = random_matrix(rng, 2, 2);
    CHECK(rel_diff(transfer_fm(constant_fm(m, y), x), kron_identity(3, m)) == 0.0);

    const auto c1 = coordinate_fm(1, y);
    CHECK(rel_diff(transfer_fm(c1, ampliate(y, 2)), kron_identity(2, y[1])) == 0.0);
    const auto x2 = random_tuple(rng, 2, 2, 2);
    CHECK(rel_diff(transfer_fm(c1, x2), x2[1]) < 1e-15);
    CHECK_THROWS_AS(coordinate_fm(2, y), InputError);

    const auto dsc = fm_to_desc(c1);
    const auto u = matrix_units(2);
    for (const Word& w : all_words(2, 3)) {
        double biggest = 0.0;
        std::vector<std::size_t> pick(w.length(), 0);
        // sweep all matrix-unit tuples
        while (true) {
            std::vector<ComplexMatrix> args;
            for (auto p : pick) args.push_back(u[p]);
            biggest = std::max(biggest, moment(dsc, w, args).max_abs());
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == 4) pick[i++] = 0;
            if (i == pick.size()) break;
        }
        const bool expect_nonzero = w.empty() || (w.length() == 1 && w[0] == 1);
        CHECK((biggest > 0.5) == expect_nonzero);
    }
}

TEST_CASE("homomorphism and bookkeeping on random expressions") {
    Rng rng(67);
    for (int t = 0; t < 20; ++t) {
        const CentrePoint y = random_centre(rng, 1 + rng.below(3), 2);
        const auto r = realize_expression(random_expression(rng, y, 3), y);
        const auto s = realize_expression(random_expression(rng, y, 3), y);
        const auto sum = fm_add(r, s), prod = fm_mul(r, s);
        CHECK(sum.state_dim() == r.state_dim() + s.state_dim());
        CHECK(prod.state_dim() == r.state_dim() + s.state_dim());
        for (int k = 0; k < 3; ++k) {
            const auto x = perturbed_point(rng, y, 1 + k % 2, 0.05);
            if (!in_domain(r, x) || !in_domain(s, x)) continue;
            const auto fr = transfer_fm(r, x), fs = transfer_fm(s, x);
            CHECK(rel_diff(transfer_fm(sum, x), fr + fs) < 1e-10);
            CHECK(rel_diff(transfer_fm(prod, x), fr * fs) < 1e-10);
        }
    }
}
