#include <cmath>

#include "doctest.h"
#include "ncreal/algebra.hpp"
#include "ncreal/analysis.hpp"
#include "ncreal/error.hpp"
#include "ncreal/serialize.hpp"
#include "support.hpp"

using namespace ncreal;
using namespace testsupport;

namespace {

// d = 1, n = N = 1, A(g) = a g, b = c = 1, Y = 0.
DescriptorRealization scalar_realization(Complex a = 1.0) {
    DescriptorRealization r;
    r.A = MatrixLinearMap(1, 1, 1, 1);
    r.A.set_coeff(0, 0, 0, ComplexMatrix(1, 1, {a}));
    r.b = ComplexMatrix(1, 1, {Complex(1.0)});
    r.c = r.b;
    r.Y = MatrixTuple(1, 1, {ComplexMatrix(1, 1)});
    return r;
}

MatrixTuple scalar_point(Complex x) { return MatrixTuple(1, 1, {ComplexMatrix(1, 1, {x})}); }

MatrixTuple only_component(const MatrixTuple& x, std::size_t k) {
    MatrixTuple z = MatrixTuple::zeros(x.base_n(), x.level_m(), x.d());
    z[k] = x[k];
    return z;
}

FMRealization random_fm(Rng& rng, const CentrePoint& y, std::size_t N, double strength) {
    const std::size_t n = y.base_n(), d = y.d();
    FMRealization r;
    r.A = random_descriptor(rng, y, N, strength).A;
    r.B = MatrixLinearMap(n, N, n, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) r.B.set_coeff(j, p, q, random_matrix(rng, N, n));
    r.C = random_matrix(rng, n, N);
    r.D = random_matrix(rng, n, n);
    r.Y = y;
    return r;
}

}  // namespace

TEST_CASE("pencil examples") {
    Rng rng(41);
    const CentrePoint y = random_centre(rng, 2, 2);
    const auto r = random_descriptor(rng, y, 3);
    CHECK(rel_diff(pencil(r, ampliate(y, 2)), ComplexMatrix::identity(6)) == 0.0);
    auto z = r;
    z.A = MatrixLinearMap(2, 3, 3, 2);
    CHECK(rel_diff(pencil(z, perturbed_point(rng, y, 2, 3.0)), ComplexMatrix::identity(6)) == 0.0);
    const auto s = scalar_realization();
    CHECK(pencil(s, scalar_point(0.3))(0, 0) == Complex(0.7));
    CHECK_THROWS_AS(pencil(r, random_tuple(rng, 3, 1, 2)), InputError);
}

TEST_CASE("in_domain examples") {
    Rng rng(42);
    const CentrePoint y = random_centre(rng, 2, 2);
    const auto r = random_descriptor(rng, y, 3, 5.0);
    CHECK(in_domain(r, ampliate(y, 3)));
    const auto s = scalar_realization();
    CHECK_FALSE(in_domain(s, scalar_point(1.0)));
    CHECK(in_domain(s, scalar_point(0.999)));
}

TEST_CASE("transfer examples") {
    DescriptorRealization one;
    one.A = MatrixLinearMap(1, 1, 1, 1);
    one.b = ComplexMatrix(1, 1, {Complex(1.0)});
    one.c = one.b;
    one.Y = MatrixTuple(1, 1, {ComplexMatrix(1, 1)});
    for (double x : {-3.0, 0.0, 0.5, 7.0}) CHECK(std::abs(transfer(one, scalar_point(x))(0, 0) - 1.0) < 1e-15);

    Rng rng(43);
    const CentrePoint y = random_centre(rng, 2, 2);
    auto r = random_descriptor(rng, y, 3);
    r.A = MatrixLinearMap(2, 3, 3, 2);
    const MatrixTuple x = perturbed_point(rng, y, 2, 4.0);
    CHECK(rel_diff(transfer(r, x), kron_identity(2, adjoint_times(r.b, r.c))) < 1e-14);

    const auto s = scalar_realization();
    CHECK(std::abs(transfer(s, scalar_point(0.5))(0, 0) - 2.0) < 1e-14);
    try {
        transfer(s, scalar_point(1.0));
        FAIL("expected a numerical error");
    } catch (const NumericalError& e) {
        CHECK(e.sigma_min() < 1e-12);
    }
}

TEST_CASE("transfer respects direct sums") {
    Rng rng(44);
    const CentrePoint y = random_centre(rng, 2, 2);
    const auto r = random_descriptor(rng, y, 4, 1.0);
    for (int t = 0; t < 10; ++t) {
        const auto x = perturbed_point(rng, y, 1, 0.6), z = perturbed_point(rng, y, 2, 0.6);
        CHECK(rel_diff(transfer(r, direct_sum(x, z)), block_diag(transfer(r, x), transfer(r, z))) < 1e-11);
    }
}

TEST_CASE("transfer_fm examples") {
    Rng rng(45);
    const CentrePoint y = random_centre(rng, 2, 2);
    const auto f = random_fm(rng, y, 3, 1.0);
    CHECK(rel_diff(transfer_fm(f, ampliate(y, 2)), kron_identity(2, f.D)) == 0.0);
    const auto cx = coordinate_fm(1, y);
    const auto x = perturbed_point(rng, y, 2, 2.0);
    CHECK(rel_diff(transfer_fm(cx, x), x[1]) < 1e-14);

    const CentrePoint y1 = random_centre(rng, 1, 2);
    for (int t = 0; t < 5; ++t) {
        const auto g = random_fm(rng, y1, 3, 1.0);
        const auto dsc = fm_to_desc(g);
        for (int k = 0; k < 4; ++k) {
            const auto p = perturbed_point(rng, y1, 1 + k % 2, 0.5);
            CHECK(rel_diff(transfer_fm(g, p), transfer(dsc, p)) < 1e-10);
        }
    }
}

TEST_CASE("descriptor and FM conversions preserve transfer") {
    Rng rng(46);
    const CentrePoint y = random_centre(rng, 2, 2);
    const auto r = random_descriptor(rng, y, 3, 1.0);
    const auto f = desc_to_fm(r);
    const auto back = fm_to_desc(f);
    for (int t = 0; t < 8; ++t) {
        const auto x = perturbed_point(rng, y, 1 + t % 2, 0.5);
        CHECK(rel_diff(transfer_fm(f, x), transfer(r, x)) < 1e-10);
        CHECK(rel_diff(transfer(back, x), transfer(r, x)) < 1e-10);
    }
}

TEST_CASE("moment examples") {
    Rng rng(47);
    const CentrePoint y = random_centre(rng, 2, 2);
    auto r = random_descriptor(rng, y, 3);
    CHECK(rel_diff(moment(r, Word{}, {}), adjoint_times(r.b, r.c)) == 0.0);
    const auto u = matrix_units(2);
    CHECK(rel_diff(moment(r, Word{{0, 1}}, {u[1], u[2]}), moment_via_nilpotent(r, Word{{0, 1}}, {u[1], u[2]})) < 1e-10);
    auto z = r;
    z.A = MatrixLinearMap(2, 3, 3, 2);
    CHECK(moment(z, Word{{1}}, {u[0]}).max_abs() == 0.0);
    CHECK_THROWS_AS(moment(r, Word{{1}}, {}), InputError);
}

TEST_CASE("series_transfer: word-sum identity, nilpotent exactness, geometric tail") {
    Rng rng(48);
    const CentrePoint y = random_centre(rng, 2, 2);
    const auto r = random_descriptor(rng, y, 3, 1.0);
    const auto x = perturbed_point(rng, y, 2, 0.5);
    CHECK(rel_diff(series_transfer(r, x, 0), kron_identity(2, adjoint_times(r.b, r.c))) == 0.0);

    const MatrixTuple delta = x - ampliate(y, 2);
    for (std::size_t L = 1; L <= 4; ++L) {
        ComplexMatrix oracle(4, 4);
        const ComplexMatrix bh = kron_identity(2, r.b).adjoint(), c = kron_identity(2, r.c);
        for (const Word& w : all_words(2, L)) {
            ComplexMatrix p = ComplexMatrix::identity(6);
            for (int k : w.letters) p = p * ampliated_apply(r.A, only_component(delta, static_cast<std::size_t>(k)));
            oracle += bh * p * c;
        }
        CHECK(rel_diff(series_transfer(r, x, L), oracle) < 1e-12);
    }

    const auto u = matrix_units(2);
    const auto xn = nilpotent_point(y, Word{{0, 1, 1}}, {u[0], u[3], u[1]}, 2.0);
    CHECK(rel_diff(series_transfer(r, xn, 3), transfer(r, xn)) < 1e-12);
    CHECK(rel_diff(series_transfer(r, xn, 7), transfer(r, xn)) < 1e-12);

    const double cb = cb_row_norm_bound(r.A);
    MatrixTuple h = random_tuple(rng, 2, 1, 2);
    h = h.scaled(0.5 / (cb * column_norm(h)));
    const auto xg = ampliate(y, 1) + h;
    const auto exact = transfer(r, xg);
    const double e10 = rel_diff(series_transfer(r, xg, 10), exact), e20 = rel_diff(series_transfer(r, xg, 20), exact);
    const double scale = adjoint_times(r.b, r.b).max_abs() + adjoint_times(r.c, r.c).max_abs();
    CHECK(e10 <= 4.0 * scale * std::pow(0.5, 11));
    CHECK(e20 <= 4.0 * scale * std::pow(0.5, 21) + 1e-14);

    MatrixTuple h9 = random_tuple(rng, 2, 2, 2);
    h9 = h9.scaled(0.9 / (cb * column_norm(h9)));
    const auto x9 = ampliate(y, 2) + h9;
    CHECK(rel_diff(series_transfer(r, x9, 40), transfer(r, x9)) < 1e-8);
}

TEST_CASE("pole orders") {
    Rng rng(49);
    const CentrePoint y = random_centre(rng, 2, 2);
    const auto r = random_descriptor(rng, y, 3, 0.5);
    CHECK(pole_order(r, perturbed_point(rng, y, 1, 0.3)) == 0);

    ComplexMatrix j2(2, 2);
    j2(0, 0) = j2(1, 1) = 1.0;
    j2(0, 1) = 1.0;
    CHECK(pole_order_of(j2) == 2);
    ComplexMatrix j3 = ComplexMatrix::identity(4);
    j3(0, 1) = j3(1, 2) = 1.0;
    j3(3, 3) = 0.5;
    CHECK(pole_order_of(j3) == 3);
    ComplexMatrix dg = ComplexMatrix::identity(4);
    dg(3, 3) = -2.0;
    CHECK(pole_order_of(dg) == 1);

    // Jordan structure held under a similarity.
    const ComplexMatrix s = near_identity(rng, 4, 0.7);
    CHECK(pole_order_of(s * j3 * inverse(s)) == 3);
}

TEST_CASE("similarity_transform keeps the transfer function") {
    Rng rng(50);
    const CentrePoint y = random_centre(rng, 2, 2);
    const auto r = random_descriptor(rng, y, 3, 1.0);
    const auto s = similarity_transform(r, near_identity(rng, 3, 0.5));
    for (int t = 0; t < 5; ++t) {
        const auto x = perturbed_point(rng, y, 2, 0.5);
        CHECK(rel_diff(transfer(s, x), transfer(r, x)) < 1e-11);
        CHECK(pole_order(s, x) == pole_order(r, x));
    }
}

TEST_CASE("random realizations need not respect joint similarity") {
    Rng rng(51);
    const CentrePoint y = random_centre(rng, 2, 2);
    const auto r = kalman_minimize(random_descriptor(rng, y, 3, 1.0));
    REQUIRE(llac_residual(r) > 1e-3);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const auto x = perturbed_point(rng, y, 1, 0.3);
        const ComplexMatrix s = near_identity(rng, 2, 0.5);
        const auto sx = apply_similarity(s, x);
        if (!in_domain(r, x) || !in_domain(r, sx)) continue;
        const ComplexMatrix lhs = transfer(r, sx), rhs = inverse(s) * transfer(r, x) * s;
        worst = std::max(worst, (lhs - rhs).frobenius_norm());
    }
    CHECK(worst > 1e-3);
}

TEST_CASE("realization JSON round trip") {
    Rng rng(52);
    const CentrePoint y = random_centre(rng, 2, 2);
    const auto r = random_descriptor(rng, y, 3);
    const auto j = io::to_json(r);
    const auto back = io::realization_from_json(nlohmann::json::parse(j.dump())).desc;
    CHECK(rel_diff(back.b, r.b) == 0.0);
    CHECK(rel_diff(back.A.coeff(1, 0, 1).to_dense(), r.A.coeff(1, 0, 1).to_dense()) == 0.0);
    const auto f = desc_to_fm(r);
    const auto fb = io::realization_from_json(nlohmann::json::parse(io::to_json(f).dump()));
    CHECK(fb.is_fm);
    CHECK(rel_diff(fb.fm.D, f.D) == 0.0);
    CHECK_THROWS_AS(io::realization_from_json(nlohmann::json{{"kind", "nope"}}), InputError);
    auto bad = j;
    bad["b"]["rows"] = 7;
    CHECK_THROWS_AS(io::realization_from_json(bad), InputError);
}
