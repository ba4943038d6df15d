#include "ncreal/core.hpp"

#include <algorithm>
#include <sstream>

#include "ncreal/error.hpp"
#include "ncreal/linalg.hpp"

namespace ncreal {

Word transpose(const Word& w) {
    Word t = w;
    std::reverse(t.letters.begin(), t.letters.end());
    return t;
}

Word concat(const Word& a, const Word& b) {
    Word c = a;
    c.letters.insert(c.letters.end(), b.letters.begin(), b.letters.end());
    return c;
}

std::string to_string(const Word& w) {
    if (w.empty()) return "()";
    std::ostringstream os;
    for (std::size_t i = 0; i < w.length(); ++i) os << (i ? "," : "") << (w[i] + 1);
    return os.str();
}

std::vector<Word> words_of_length(std::size_t d, std::size_t len) {
    if (d == 0) throw InputError("words_of_length: d must be at least 1");
    std::vector<Word> out;
    Word w;
    w.letters.assign(len, 0);
    while (true) {
        out.push_back(w);
        std::size_t i = len;
        while (i > 0 && w.letters[i - 1] == static_cast<int>(d) - 1) w.letters[--i] = 0;
        if (i == 0) break;
        ++w.letters[i - 1];
    }
    return out;
}

std::vector<Word> all_words(std::size_t d, std::size_t max_len) {
    if (d == 0) throw InputError("all_words: d must be at least 1");
    std::vector<Word> out;
    for (std::size_t l = 0; l <= max_len; ++l) {
        auto layer = words_of_length(d, l);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

MatrixTuple::MatrixTuple(std::size_t base_n, std::size_t level_m, std::vector<ComplexMatrix> components)
    : n_(base_n), m_(level_m), comps_(std::move(components)) {
    const std::size_t s = n_ * m_;
    for (std::size_t j = 0; j < comps_.size(); ++j)
        if (comps_[j].rows() != s || comps_[j].cols() != s)
            throw InputError("tuple component " + std::to_string(j + 1) + " is " + std::to_string(comps_[j].rows()) +
                             "x" + std::to_string(comps_[j].cols()) + ", expected " + std::to_string(s) + "x" +
                             std::to_string(s));
}

MatrixTuple MatrixTuple::zeros(std::size_t base_n, std::size_t level_m, std::size_t d) {
    return MatrixTuple(base_n, level_m, std::vector<ComplexMatrix>(d, ComplexMatrix(base_n * level_m, base_n * level_m)));
}

MatrixTuple MatrixTuple::operator-(const MatrixTuple& o) const {
    if (o.n_ != n_ || o.m_ != m_ || o.d() != d()) throw InputError("tuple difference: shape mismatch");
    std::vector<ComplexMatrix> c;
    for (std::size_t j = 0; j < d(); ++j) c.push_back(comps_[j] - o.comps_[j]);
    return MatrixTuple(n_, m_, std::move(c));
}

MatrixTuple MatrixTuple::operator+(const MatrixTuple& o) const {
    if (o.n_ != n_ || o.m_ != m_ || o.d() != d()) throw InputError("tuple sum: shape mismatch");
    std::vector<ComplexMatrix> c;
    for (std::size_t j = 0; j < d(); ++j) c.push_back(comps_[j] + o.comps_[j]);
    return MatrixTuple(n_, m_, std::move(c));
}

MatrixTuple MatrixTuple::scaled(Complex s) const {
    std::vector<ComplexMatrix> c;
    for (const auto& x : comps_) c.push_back(s * x);
    return MatrixTuple(n_, m_, std::move(c));
}

MatrixTuple MatrixTuple::as_centre() const { return MatrixTuple(side(), 1, comps_); }

MatrixTuple MatrixTuple::relevel(std::size_t n) const {
    if (n == 0 || side() % n != 0) throw InputError("relevel: side is not a multiple of the centre size");
    return MatrixTuple(n, side() / n, comps_);
}

void require_centre(const CentrePoint& y) {
    if (y.level_m() != 1) throw InputError("centre point must have level 1, got " + std::to_string(y.level_m()));
}

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& z) {
    if (x.base_n() != z.base_n() || x.d() != z.d())
        throw InputError("direct_sum: shapes (n=" + std::to_string(x.base_n()) + ", d=" + std::to_string(x.d()) +
                         ") and (n=" + std::to_string(z.base_n()) + ", d=" + std::to_string(z.d()) + ") differ");
    std::vector<ComplexMatrix> c;
    for (std::size_t j = 0; j < x.d(); ++j) c.push_back(block_diag(x[j], z[j]));
    return MatrixTuple(x.base_n(), x.level_m() + z.level_m(), std::move(c));
}

MatrixTuple ampliate(const CentrePoint& y, std::size_t m) {
    if (m == 0) throw InputError("ampliate: level must be at least 1");
    require_centre(y);
    std::vector<ComplexMatrix> c;
    for (std::size_t j = 0; j < y.d(); ++j) c.push_back(kron_identity(m, y[j]));
    return MatrixTuple(y.base_n(), m, std::move(c));
}

double column_norm(const MatrixTuple& x) {
    const std::size_t s = x.side();
    if (x.d() == 0 || s == 0) return 0.0;
    ComplexMatrix stack(x.d() * s, s);
    for (std::size_t j = 0; j < x.d(); ++j) stack.set_block(j * s, 0, x[j]);
    return spectral_norm(stack);
}

MatrixTuple apply_similarity(const ComplexMatrix& s, const MatrixTuple& x) {
    if (!s.is_square() || s.rows() != x.side())
        throw InputError("apply_similarity: S must be " + std::to_string(x.side()) + "x" + std::to_string(x.side()));
    const auto chk = check_invertible(s);
    if (!chk.invertible) throw NumericalError("apply_similarity: S is singular", chk.sigma_min);
    const auto f = lu_factor(s);
    std::vector<ComplexMatrix> c;
    for (std::size_t j = 0; j < x.d(); ++j) c.push_back(lu_solve(f, x[j] * s));
    return MatrixTuple(x.base_n(), x.level_m(), std::move(c));
}

std::vector<ComplexMatrix> matrix_units(std::size_t n) {
    std::vector<ComplexMatrix> u;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) u.push_back(ComplexMatrix::unit(n, n, p, q));
    return u;
}

}  // namespace ncreal
