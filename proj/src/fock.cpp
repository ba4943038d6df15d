#include "ncreal/fock.hpp"

#include <cmath>
#include <string>

#include "ncreal/analysis.hpp"
#include "ncreal/error.hpp"
#include "ncreal/log.hpp"

namespace ncreal {
namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

std::size_t rank_of(const Word& w, std::size_t base) {
    std::size_t r = 0;
    for (int c : w.letters) r = r * base + static_cast<std::size_t>(c);
    return r;
}

Word unrank(std::size_t r, std::size_t len, std::size_t base) {
    Word w;
    w.letters.assign(len, 0);
    for (std::size_t i = len; i-- > 0;) {
        w.letters[i] = static_cast<int>(r % base);
        r /= base;
    }
    return w;
}

void check_letters(const Word& w, std::size_t base, const char* what) {
    for (int c : w.letters)
        if (c < 0 || static_cast<std::size_t>(c) >= base) throw InputError(std::string("Fock index: ") + what + " letter out of range");
}

// Rows (s, a) of M become rows (s, b) of the input; everything else is zero: (I_m (x) E_ab) M.
ComplexMatrix left_unit(std::size_t m, std::size_t n, std::size_t a, std::size_t b, const ComplexMatrix& x) {
    ComplexMatrix out(x.rows(), x.cols());
    for (std::size_t s = 0; s < m; ++s) {
        const Complex* src = x.row(s * n + b);
        Complex* dst = out.row(s * n + a);
        for (std::size_t c = 0; c < x.cols(); ++c) dst[c] = src[c];
    }
    return out;
}

// M (I_m (x) E_ab): column (s, b) takes column (s, a).
ComplexMatrix right_unit(std::size_t m, std::size_t n, std::size_t a, std::size_t b, const ComplexMatrix& x) {
    ComplexMatrix out(x.rows(), x.cols());
    for (std::size_t r = 0; r < x.rows(); ++r)
        for (std::size_t s = 0; s < m; ++s) out(r, s * n + b) = x(r, s * n + a);
    return out;
}

void require_level(const TruncatedFockVector& h, const MatrixTuple& x) {
    if (x.base_n() != h.n || x.d() != h.d)
        throw InputError("Fock evaluation: point has n=" + std::to_string(x.base_n()) + ", d=" + std::to_string(x.d()) +
                         ", vector has n=" + std::to_string(h.n) + ", d=" + std::to_string(h.d));
}

}  // namespace

FockSpace::FockSpace(std::size_t n, std::size_t d, std::size_t L) : n_(n), d_(d), L_(L) {
    if (n == 0 || d == 0) throw InputError("Fock space needs n >= 1 and d >= 1");
    offset_.push_back(0);
    for (std::size_t l = 0; l <= L; ++l) offset_.push_back(offset_.back() + ipow(d, l) * ipow(n, 2 * (l + 1)));
}

std::size_t FockSpace::index(std::size_t l, std::size_t om, std::size_t al, std::size_t be) const {
    const std::size_t w = ipow(n_, l + 1);
    return offset_[l] + (om * w + al) * w + be;
}

std::size_t FockSpace::index(const FockBasisIndex& b) const {
    const std::size_t l = b.omega.length();
    if (b.alpha.length() != l + 1 || b.beta.length() != l + 1) throw InputError("Fock index: |alpha| = |beta| = |omega| + 1 violated");
    if (l > L_) throw InputError("Fock index: word length exceeds truncation");
    check_letters(b.alpha, n_, "alpha");
    check_letters(b.beta, n_, "beta");
    check_letters(b.omega, d_, "omega");
    return index(l, rank_of(b.omega, d_), rank_of(b.alpha, n_), rank_of(b.beta, n_));
}

FockBasisIndex FockSpace::basis(std::size_t k) const {
    std::size_t l = 0;
    while (k >= offset_[l + 1]) ++l;
    std::size_t r = k - offset_[l];
    const std::size_t w = ipow(n_, l + 1);
    FockBasisIndex b;
    b.beta = unrank(r % w, l + 1, n_);
    r /= w;
    b.alpha = unrank(r % w, l + 1, n_);
    b.omega = unrank(r / w, l, d_);
    return b;
}

std::vector<FockBasisIndex> fock_basis(std::size_t n, std::size_t d, std::size_t L) {
    const FockSpace f(n, d, L);
    std::vector<FockBasisIndex> out;
    out.reserve(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out.push_back(f.basis(k));
    return out;
}

SparseMatrix left_creation(const FockSpace& f, std::size_t i, std::size_t j, std::size_t k) {
    const std::size_t n = f.n(), d = f.d();
    std::vector<SparseMatrix::Triplet> t;
    for (std::size_t l = 0; l < f.L(); ++l) {
        const std::size_t w = ipow(n, l + 1), nw = ipow(d, l);
        for (std::size_t om = 0; om < nw; ++om)
            for (std::size_t al = 0; al < w; ++al)
                for (std::size_t be = 0; be < w; ++be)
                    t.push_back({f.index(l + 1, k * nw + om, i * w + al, j * w + be), f.index(l, om, al, be), 1.0});
    }
    return SparseMatrix::from_triplets(f.size(), f.size(), std::move(t));
}

SparseMatrix right_creation(const FockSpace& f, std::size_t a, std::size_t b, std::size_t wl) {
    return right_annihilation(f, a, b, wl).adjoint();
}

SparseMatrix right_annihilation(const FockSpace& f, std::size_t a, std::size_t b, std::size_t wl) {
    const std::size_t n = f.n(), d = f.d();
    std::vector<SparseMatrix::Triplet> t;
    for (std::size_t l = 0; l < f.L(); ++l) {
        const std::size_t w = ipow(n, l + 1), nw = ipow(d, l);
        for (std::size_t om = 0; om < nw; ++om)
            for (std::size_t al = 0; al < w; ++al)
                for (std::size_t be = 0; be < w; ++be)
                    t.push_back({f.index(l, om, al, be), f.index(l + 1, om * d + wl, al * n + a, be * n + b), 1.0});
    }
    return SparseMatrix::from_triplets(f.size(), f.size(), std::move(t));
}

SparseMatrix flip_unitary(const FockSpace& f) {
    std::vector<SparseMatrix::Triplet> t;
    t.reserve(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        const FockBasisIndex b = f.basis(k);
        t.push_back({f.index(FockBasisIndex{transpose(b.alpha), transpose(b.beta), transpose(b.omega)}), k, 1.0});
    }
    return SparseMatrix::from_triplets(f.size(), f.size(), std::move(t));
}

TruncatedFockVector::TruncatedFockVector(std::size_t n_, std::size_t d_, std::size_t L_)
    : n(n_), d(d_), L(L_), coeffs(FockSpace(n_, d_, L_).size()) {}

double TruncatedFockVector::norm() const {
    double s = 0.0;
    for (const auto& z : coeffs) s += std::norm(z);
    return std::sqrt(s);
}

Complex inner(const TruncatedFockVector& f, const TruncatedFockVector& g) {
    if (f.n != g.n || f.d != g.d || f.L != g.L) throw InputError("Fock inner product: spaces differ");
    Complex s = 0.0;
    for (std::size_t k = 0; k < f.coeffs.size(); ++k) s += std::conj(f.coeffs[k]) * g.coeffs[k];
    return s;
}

ComplexMatrix basis_eval(const FockBasisIndex& b, const MatrixTuple& x) {
    const std::size_t m = x.level_m(), n = x.base_n();
    ComplexMatrix p = left_unit(m, n, b.alpha[0], b.beta[0], ComplexMatrix::identity(m * n));
    for (std::size_t i = 0; i < b.omega.length(); ++i) {
        p = p * x[static_cast<std::size_t>(b.omega[i])];
        p = right_unit(m, n, b.alpha[i + 1], b.beta[i + 1], p);
    }
    return p;
}

ComplexMatrix eval_at_zero(const TruncatedFockVector& h, const MatrixTuple& x) {
    require_level(h, x);
    const FockSpace f = h.space();
    ComplexMatrix out(x.side(), x.side());
    for (std::size_t k = 0; k < f.size(); ++k)
        if (h.coeffs[k] != Complex(0.0)) out.add_block(0, 0, basis_eval(f.basis(k), x), h.coeffs[k]);
    return out;
}

ComplexMatrix eval_fock(const TruncatedFockVector& h, const MatrixTuple& x, const CentrePoint& y) {
    require_centre(y);
    require_level(h, x);
    return eval_at_zero(h, x - ampliate(y, x.level_m()));
}

TruncatedFockVector kernel_vector(std::size_t n, std::size_t d, std::size_t L, const MatrixTuple& x,
                                  const ComplexMatrix& y, const ComplexMatrix& v) {
    TruncatedFockVector k(n, d, L);
    require_level(k, x);
    if (y.rows() != x.side() || v.rows() != x.side() || y.cols() != 1 || v.cols() != 1)
        throw InputError("kernel_vector: y and v must be column vectors of length " + std::to_string(x.side()));
    if (column_norm(x) >= 1.0 / std::sqrt(static_cast<double>(n)))
        log::warn("kernel_vector: ||X||_col >= 1/sqrt(n); the untruncated kernel need not converge");
    const FockSpace f = k.space();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const ComplexMatrix e = basis_eval(f.basis(i), x);
        k.coeffs[i] = std::conj(adjoint_times(y, e * v)(0, 0));
    }
    return k;
}

DescriptorRealization fock_realization(const TruncatedFockVector& h, const CentrePoint& y) {
    require_centre(y);
    if (y.base_n() != h.n || y.d() != h.d) throw InputError("fock_realization: centre does not match the Fock vector");
    const FockSpace f = h.space();
    const std::size_t n = h.n, d = h.d, F = f.size(), N = n * F;

    std::vector<SparseMatrix> coeffs(d * n * n);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t q = 0; q < n; ++q) {
            std::vector<std::vector<SparseMatrix::Triplet>> by_p(n);
            for (std::size_t j = 0; j < n; ++j) {
                // E_pq E_qj = E_pj, so A_k(E_pq) = sum_j E_pj (x) R*_{q,j;k}.
                const auto rs = right_annihilation(f, q, j, k).triplets();
                for (std::size_t p = 0; p < n; ++p)
                    for (const auto& e : rs) by_p[p].push_back({p * F + e.row, j * F + e.col, e.value});
            }
            for (std::size_t p = 0; p < n; ++p)
                coeffs[(k * n + p) * n + q] = SparseMatrix::from_triplets(N, N, std::move(by_p[p]));
        }

    DescriptorRealization r;
    r.A = MatrixLinearMap(n, N, N, d, std::move(coeffs));
    r.b = ComplexMatrix(N, n);
    r.c = ComplexMatrix(N, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r.b(j * F + f.vacuum(i, j), i) = 1.0;
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t k = 0; k < F; ++k) r.c(s * F + k, s) = h.coeffs[k];
    r.Y = y;
    return r;
}

TruncatedFockVector dilate(const TruncatedFockVector& h, double r) {
    TruncatedFockVector out = h;
    const FockSpace f = h.space();
    for (std::size_t l = 0; l <= h.L; ++l) {
        const double s = std::pow(r, static_cast<double>(l));
        for (std::size_t k = f.level_offset(l); k < f.level_offset(l + 1); ++k) out.coeffs[k] *= s;
    }
    return out;
}

DescriptorRealization fock_realization_dilated(const TruncatedFockVector& h, const CentrePoint& y, double r) {
    if (!(r > 0.0)) throw InputError("dilation parameter must be positive");
    DescriptorRealization out = fock_realization(dilate(h, r), y);
    out.A = scaled(out.A, 1.0 / r);
    return out;
}

ReshuffledSeries reshuffle(const TruncatedFockVector& h) {
    const FockSpace f = h.space();
    const std::size_t n = h.n, d = h.d, g = d * n * n;
    ReshuffledSeries s{n, d, h.L, {}};
    std::vector<std::size_t> off{0};
    for (std::size_t l = 0; l <= h.L; ++l) off.push_back(off.back() + ipow(g, l));
    s.tables.assign(n * n, std::vector<Complex>(off.back()));
    for (std::size_t k = 0; k < f.size(); ++k) {
        const FockBasisIndex b = f.basis(k);
        const std::size_t l = b.omega.length();
        std::size_t r = 0;
        for (std::size_t i = 0; i < l; ++i)
            r = r * g + (static_cast<std::size_t>(b.alpha[i]) * n + static_cast<std::size_t>(b.beta[i])) * d +
                static_cast<std::size_t>(b.omega[i]);
        s.tables[static_cast<std::size_t>(b.alpha[l]) * n + static_cast<std::size_t>(b.beta[l])][off[l] + r] = h.coeffs[k];
    }
    return s;
}

TruncatedFockVector unreshuffle(const ReshuffledSeries& s) {
    TruncatedFockVector h(s.n, s.d, s.L);
    const FockSpace f = h.space();
    const std::size_t n = s.n, d = s.d, g = d * n * n;
    if (s.tables.size() != n * n) throw InputError("unreshuffle: expected n*n tables");
    std::size_t off = 0;
    for (std::size_t l = 0; l <= s.L; ++l) {
        const std::size_t count = ipow(g, l);
        for (std::size_t ab = 0; ab < n * n; ++ab) {
            if (s.tables[ab].size() < off + count) throw InputError("unreshuffle: table too short");
            for (std::size_t r = 0; r < count; ++r) {
                FockBasisIndex b;
                b.alpha.letters.resize(l + 1);
                b.beta.letters.resize(l + 1);
                b.omega.letters.resize(l);
                std::size_t t = r;
                for (std::size_t i = l; i-- > 0;) {
                    const std::size_t letter = t % g;
                    t /= g;
                    b.omega.letters[i] = static_cast<int>(letter % d);
                    b.beta.letters[i] = static_cast<int>((letter / d) % n);
                    b.alpha.letters[i] = static_cast<int>(letter / d / n);
                }
                b.alpha.letters[l] = static_cast<int>(ab / n);
                b.beta.letters[l] = static_cast<int>(ab % n);
                h.coeffs[f.index(b)] = s.tables[ab][off + r];
            }
        }
        off += count;
    }
    return h;
}

TruncatedFockVector coeffs_from_nc_function(const NCEvaluator& fn, const CentrePoint& y, std::size_t L) {
    require_centre(y);
    const std::size_t n = y.base_n(), d = y.d();
    TruncatedFockVector h(n, d, L);
    const FockSpace f = h.space();
    const auto units = matrix_units(n);
    for (std::size_t l = 0; l <= L; ++l) {
        const std::size_t nargs = ipow(n * n, l);
        for (const Word& w : words_of_length(d, l)) {
            for (std::size_t pick = 0; pick < nargs; ++pick) {
                // Argument i is E_{p_i q_i}; the unit index p*n+q is digit i of pick in base n^2.
                std::vector<std::size_t> u(l);
                for (std::size_t i = l, t = pick; i-- > 0; t /= n * n) u[i] = t % (n * n);
                std::vector<ComplexMatrix> args;
                for (std::size_t i = 0; i < l; ++i) args.push_back(units[u[i]]);
                ComplexMatrix value;
                try {
                    value = fn(nilpotent_point(y, w, args, 1.0));
                } catch (const NumericalError& e) {
                    throw NumericalError("coeffs_from_nc_function: evaluation failed at a nilpotent point (" +
                                             std::string(e.what()) + ")",
                                         e.sigma_min());
                }
                if (value.rows() != (l + 1) * n || value.cols() != (l + 1) * n)
                    throw InputError("coeffs_from_nc_function: evaluator returned the wrong shape");
                const ComplexMatrix blk = value.block(0, l * n, n, n);
                FockBasisIndex b;
                b.omega = w;
                b.alpha.letters.resize(l + 1);
                b.beta.letters.resize(l + 1);
                for (std::size_t i = 0; i < l; ++i) {
                    b.beta.letters[i] = static_cast<int>(u[i] / n);       // p_{i+1}
                    b.alpha.letters[i + 1] = static_cast<int>(u[i] % n);  // q_{i+1}
                }
                for (std::size_t a0 = 0; a0 < n; ++a0)
                    for (std::size_t bl = 0; bl < n; ++bl) {
                        b.alpha.letters[0] = static_cast<int>(a0);
                        b.beta.letters[l] = static_cast<int>(bl);
                        h.coeffs[f.index(b)] = blk(a0, bl);
                    }
            }
        }
    }
    return h;
}

nlohmann::json fock_to_json(const TruncatedFockVector& h) {
    using nlohmann::json;
    const FockSpace f = h.space();
    auto one_based = [](const Word& w) {
        json a = json::array();
        for (int c : w.letters) a.push_back(c + 1);
        return a;
    };
    json terms = json::array();
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (h.coeffs[k] == Complex(0.0)) continue;
        const FockBasisIndex b = f.basis(k);
        terms.push_back(json{{"alpha", one_based(b.alpha)},
                             {"beta", one_based(b.beta)},
                             {"omega", one_based(b.omega)},
                             {"c", json::array({h.coeffs[k].real(), h.coeffs[k].imag()})}});
    }
    return json{{"n", h.n}, {"d", h.d}, {"L", h.L}, {"terms", terms}};
}

TruncatedFockVector fock_from_json(const nlohmann::json& j) {
    try {
        const std::size_t n = j.at("n").get<std::size_t>(), d = j.at("d").get<std::size_t>(), L = j.at("L").get<std::size_t>();
        if (n == 0 || d == 0) throw InputError("Fock vector needs n >= 1 and d >= 1");
        TruncatedFockVector h(n, d, L);
        const FockSpace f = h.space();
        auto zero_based = [](const nlohmann::json& a, const char* what) {
            Word w;
            for (const auto& c : a) {
                const long long v = c.get<long long>();
                if (v < 1) throw InputError(std::string("Fock term: ") + what + " letters are 1-based");
                w.letters.push_back(static_cast<int>(v - 1));
            }
            return w;
        };
        for (const auto& t : j.at("terms")) {
            FockBasisIndex b{zero_based(t.at("alpha"), "alpha"), zero_based(t.at("beta"), "beta"),
                             zero_based(t.at("omega"), "omega")};
            const auto& c = t.at("c");
            Complex z = c.is_number() ? Complex(c.get<double>(), 0.0) : Complex(c.at(0).get<double>(), c.at(1).get<double>());
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InputError("Fock term coefficient is not finite");
            h.coeffs[f.index(b)] += z;
        }
        return h;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed Fock vector: ") + e.what());
    }
}

}  // namespace ncreal
