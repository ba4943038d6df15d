#include <string>

#include "doctest.h"
#include "ncreal/algebra.hpp"
#include "ncreal/analysis.hpp"
#include "ncreal/error.hpp"
#include "ncreal/parser.hpp"
#include "support.hpp"

using namespace ncreal;
using namespace testsupport;
using K = Expression::Kind;

namespace {

CentrePoint commutator_centre() { return CentrePoint(2, 1, {ComplexMatrix::unit(2, 2, 0, 1), ComplexMatrix::unit(2, 2, 1, 0)}); }

std::string error_of(const std::string& text, std::size_t d, const ConstantTable& c = {}) {
    try {
        parse(text, d, c);
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("parse: structure") {
    const auto e = parse("x1*x2 - x2*x1", 2);
    REQUIRE(e.kind == K::Sum);
    REQUIRE(e.children.size() == 2);
    CHECK(e.children[0].kind == K::Product);
    CHECK(e.children[0].children[0].var == 0);
    CHECK(e.children[0].children[1].var == 1);
    REQUIRE(e.children[1].kind == K::Negate);
    CHECK(e.children[1].children[0].kind == K::Product);
    CHECK(e.children[1].children[0].children[0].var == 1);

    const auto i = parse("inv(x1)", 1);
    CHECK(i.kind == K::Inverse);
    CHECK(i.children[0].kind == K::Variable);

    const auto c = parse("inv(x1*x2 - x2*x1)", 2);
    CHECK(c.kind == K::Inverse);
    CHECK(c.children[0].kind == K::Sum);

    const auto j = parse("  z1 x2 (x1) ", 2);
    CHECK(j.kind == K::Product);
    CHECK(j.children.size() == 3);
    const auto glued = parse("x1x2", 2);
    CHECK(glued.kind == K::Product);

    const auto lit = parse("-2.5e-1i + 3", 1);
    CHECK(lit.kind == K::Sum);
    CHECK(lit.children[0].kind == K::Negate);
    CHECK(lit.children[0].children[0].scalar == Complex(0.0, 0.25));

    ConstantTable t{{"M", ComplexMatrix::identity(2)}};
    const auto m = parse("M x1", 1, t);
    CHECK(m.children[0].kind == K::Constant);
    CHECK(m.children[0].name == "M");
    CHECK(parse("0x1", 1).kind == K::Product);
}

TEST_CASE("parse: errors carry positions") {
    CHECK(error_of("", 2).find("empty") != std::string::npos);
    CHECK(error_of("   ", 2).find("empty") != std::string::npos);
    CHECK(error_of("x1 + ", 2).find("byte 5") != std::string::npos);
    CHECK(error_of("x1 + )", 2).find("byte 5") != std::string::npos);
    CHECK(error_of("inv(x1", 2).find("')'") != std::string::npos);
    CHECK(error_of("x3", 2).find("out of range") != std::string::npos);
    CHECK(error_of("x0", 2).find("out of range") != std::string::npos);
    CHECK(error_of("x1 + foo", 2).find("unknown identifier 'foo'") != std::string::npos);
    CHECK(error_of("x1 + foo", 2).find("byte 5") != std::string::npos);
    CHECK(error_of("x1 / x2", 2).find("byte 3") != std::string::npos);
}

TEST_CASE("realize_expression examples") {
    Rng rng(71);
    const CentrePoint y = random_centre(rng, 2, 2);
    const auto r = realize_expression(parse("x1", 2), y);
    CHECK(r.state_dim() == 2);
    const auto x = perturbed_point(rng, y, 2, 1.0);
    CHECK(rel_diff(transfer_fm(r, x), x[0]) < 1e-15);

    const auto yc = commutator_centre();
    const auto ci = realize_expression(parse("inv(x1*x2 - x2*x1)", 2), yc);
    ComplexMatrix expect(2, 2);
    expect(0, 0) = 1.0;
    expect(1, 1) = -1.0;
    CHECK(rel_diff(transfer_fm(ci, yc), expect) < 1e-15);
    CHECK(in_domain(fm_to_desc(ci), yc));

    const CentrePoint ys = random_centre(rng, 1, 2);
    try {
        realize_expression(parse("x1 + inv(x1*x2 - x2*x1)", 2), ys);
        FAIL("expected an error");
    } catch (const InputError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("not defined at centre") != std::string::npos);
        CHECK(msg.find("byte 5") != std::string::npos);
    }
}

TEST_CASE("eval_expression examples") {
    const MatrixTuple x(1, 1, {ComplexMatrix(1, 1, {Complex(1.0)}), ComplexMatrix(1, 1, {Complex(2.0)})});
    CHECK(eval_expression(parse("x1 + x2", 2), x)(0, 0) == Complex(3.0));
    const auto yc = commutator_centre();
    const auto v = eval_expression(parse("inv(x1*x2 - x2*x1)", 2), yc);
    CHECK(std::abs(v(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(v(1, 1) + 1.0) < 1e-15);
    CHECK_THROWS_AS(eval_expression(parse("inv(x1 - x1)", 1), MatrixTuple(1, 1, {ComplexMatrix(1, 1)})), NumericalError);
    ConstantTable t{{"M", ComplexMatrix::unit(2, 2, 0, 1)}};
    const MatrixTuple x2 = MatrixTuple::zeros(2, 2, 1);
    CHECK(rel_diff(eval_expression(parse("2 M", 1, t), x2), kron_identity(2, 2.0 * t["M"])) == 0.0);
}

TEST_CASE("oracle equivalence on random expressions") {
    Rng rng(72);
    double worst = 0.0;
    for (int t = 0; t < 40; ++t) {
        const CentrePoint y = random_centre(rng, 1 + rng.below(3), 2);
        const Expression e = random_expression(rng, y, 4);
        const FMRealization r = realize_expression(e, y);
        for (int k = 0; k < 5; ++k) {
            const auto x = perturbed_point(rng, y, 1 + k % 2, 0.05);
            if (!in_domain(r, x) || inverse_conditioning(e, x) < 1e-6) continue;
            worst = std::max(worst, rel_diff(eval_expression(e, x), transfer_fm(r, x)));
        }
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("realized expressions certify as NC functions") {
    Rng rng(73);
    for (const char* text : {"x1*x2", "inv(x1) + x2 x1", "inv(2 + x1 x2) - x2"}) {
        const CentrePoint y = random_centre(rng, 2, 2);
        const Expression e = parse(text, 2);
        if (inverse_conditioning(e, y) < 1e-3) continue;
        const auto m = kalman_minimize(fm_to_desc(realize_expression(e, y)));
        CHECK(llac_residual(m) < 1e-10);
    }
}

TEST_CASE("printing round-trips through the parser") {
    Rng rng(74);
    for (int t = 0; t < 30; ++t) {
        const Expression e = parse(random_expression_text(rng, 2, 4), 2);
        const Expression again = parse(to_string(e), 2);
        const MatrixTuple x = random_tuple(rng, 2, 1, 2);
        try {
            CHECK(rel_diff(eval_expression(e, x), eval_expression(again, x)) < 1e-12);
        } catch (const NumericalError&) {
        }
    }
}
