#include "support.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "ncreal/error.hpp"

namespace testsupport {

ComplexMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, double scale) {
    ComplexMatrix m(r, c);
    for (std::size_t k = 0; k < m.size(); ++k) m.data()[k] = scale * rng.complex();
    return m;
}

MatrixTuple random_tuple(Rng& rng, std::size_t n, std::size_t m, std::size_t d, double scale) {
    std::vector<ComplexMatrix> c;
    for (std::size_t j = 0; j < d; ++j) c.push_back(random_matrix(rng, n * m, n * m, scale));
    return MatrixTuple(n, m, std::move(c));
}

CentrePoint random_centre(Rng& rng, std::size_t n, std::size_t d, double scale) { return random_tuple(rng, n, 1, d, scale); }

DescriptorRealization random_descriptor(Rng& rng, const CentrePoint& y, std::size_t N, double strength) {
    const std::size_t n = y.base_n(), d = y.d();
    DescriptorRealization r;
    r.A = MatrixLinearMap(n, N, N, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) r.A.set_coeff(j, p, q, random_matrix(rng, N, N));
    const double cb = cb_row_norm_bound(r.A);
    if (cb > 0.0) r.A = scaled(r.A, strength / cb);
    r.b = random_matrix(rng, N, n);
    r.c = random_matrix(rng, N, n);
    r.Y = y;
    return r;
}

DescriptorRealization direct_sum(const DescriptorRealization& r1, const DescriptorRealization& r2) {
    const std::size_t n = r1.n(), d = r1.d(), N1 = r1.state_dim(), N2 = r2.state_dim(), N = N1 + N2;
    DescriptorRealization r;
    r.A = MatrixLinearMap(n, N, N, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q)
                r.A.set_coeff(j, p, q, block_diag(r1.A.coeff(j, p, q).to_dense(), r2.A.coeff(j, p, q).to_dense()));
    r.b = vstack(r1.b, r2.b);
    r.c = vstack(r1.c, r2.c);
    r.Y = r1.Y;
    return r;
}

DescriptorRealization pad_with_junk(Rng& rng, const DescriptorRealization& r, std::size_t extra) {
    // States [orig | u | o]: u is never reached (no input, nothing flows into it from orig or o);
    // o is never seen (zero output weight, nothing flows from it into orig or u).
    const std::size_t n = r.n(), d = r.d(), N0 = r.state_dim();
    const std::size_t nu = (extra + 1) / 2, no = extra - nu, N = N0 + nu + no;
    const double s = 1.0 / std::sqrt(static_cast<double>(N) * n * n * d);
    DescriptorRealization out;
    out.A = MatrixLinearMap(n, N, N, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
                ComplexMatrix b(N, N);
                b.set_block(0, 0, r.A.coeff(j, p, q).to_dense());
                b.set_block(0, N0, random_matrix(rng, N0, nu, s));
                b.set_block(N0, N0, random_matrix(rng, nu, nu, s));
                b.set_block(N0 + nu, 0, random_matrix(rng, no, N0, s));
                b.set_block(N0 + nu, N0 + nu, random_matrix(rng, no, no, s));
                out.A.set_coeff(j, p, q, b);
            }
    out.b = ComplexMatrix(N, n);
    out.b.set_block(0, 0, r.b);
    out.b.set_block(N0, 0, random_matrix(rng, nu, n));
    out.c = ComplexMatrix(N, n);
    out.c.set_block(0, 0, r.c);
    out.c.set_block(N0 + nu, 0, random_matrix(rng, no, n));
    out.Y = r.Y;
    return out;
}

ComplexMatrix near_identity(Rng& rng, std::size_t N, double eps) {
    return ComplexMatrix::identity(N) + random_matrix(rng, N, N, eps / std::sqrt(static_cast<double>(std::max<std::size_t>(N, 1))));
}

namespace {

std::string gen(Rng& rng, std::size_t d, std::size_t depth) {
    const double u = rng.uniform(0.0, 1.0);
    if (depth == 0 || u < 0.25) {
        if (rng.uniform(0.0, 1.0) < 0.75) return "x" + std::to_string(1 + rng.below(d));
        static const char* lits[] = {"0.5", "1", "2", "1.5", "0.25", "3", "0.75", "2i", "0.5i"};
        return lits[rng.below(9)];
    }
    const std::string a = gen(rng, d, depth - 1);
    switch (rng.below(7)) {
        case 0: return "(" + a + " + " + gen(rng, d, depth - 1) + ")";
        case 1: return "(" + a + " - " + gen(rng, d, depth - 1) + ")";
        case 2: return "(" + a + ")*(" + gen(rng, d, depth - 1) + ")";
        case 3: return "(" + a + ")(" + gen(rng, d, depth - 1) + ")";
        case 4:
        case 5: return "inv(" + a + ")";
        default: return "-(" + a + ")";
    }
}

}  // namespace

std::string random_expression_text(Rng& rng, std::size_t d, std::size_t max_depth) { return gen(rng, d, max_depth); }

double inverse_conditioning(const Expression& e, const MatrixTuple& x) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& c : e.children) worst = std::min(worst, inverse_conditioning(c, x));
    if (e.kind == Expression::Kind::Inverse) {
        try {
            const auto chk = check_invertible(eval_expression(e.children[0], x));
            worst = std::min(worst, chk.sigma_min / std::max(1.0, chk.sigma_max));
        } catch (const NumericalError&) {
            worst = 0.0;
        }
    }
    return worst;
}

Expression random_expression(Rng& rng, const CentrePoint& y, std::size_t max_depth, std::string* text,
                             std::size_t min_depth) {
    while (true) {
        const std::string t = random_expression_text(rng, y.d(), max_depth);
        Expression e = parse(t, y.d());
        if (depth(e) > max_depth || depth(e) < min_depth) continue;
        if (inverse_conditioning(e, y) < 1e-3) continue;
        if (text) *text = t;
        return e;
    }
}

MatrixTuple perturbed_point(Rng& rng, const CentrePoint& y, std::size_t m, double eps) {
    MatrixTuple h = random_tuple(rng, y.base_n(), m, y.d());
    const double cn = column_norm(h);
    return ampliate(y, m) + h.scaled(eps / cn);
}

ComplexMatrix naive_multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

std::vector<double> jacobi_hermitian_eigenvalues(ComplexMatrix h) {
    // Real symmetric embedding [[Re, -Im], [Im, Re]]; each eigenvalue appears twice.
    const std::size_t n = h.rows(), m = 2 * n;
    std::vector<double> a(m * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a[i * m + j] = a[(i + n) * m + j + n] = h(i, j).real();
            a[i * m + j + n] = -h(i, j).imag();
            a[(i + n) * m + j] = h(i, j).imag();
        }
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (i != j) off += a[i * m + j] * a[i * m + j];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q) {
                const double apq = a[p * m + q];
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a[q * m + q] - a[p * m + p]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (std::size_t k = 0; k < m; ++k) {
                    const double akp = a[k * m + p], akq = a[k * m + q];
                    a[k * m + p] = c * akp - s * akq;
                    a[k * m + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    const double apk = a[p * m + k], aqk = a[q * m + k];
                    a[p * m + k] = c * apk - s * aqk;
                    a[q * m + k] = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev;
    for (std::size_t i = 0; i < m; ++i) ev.push_back(a[i * m + i]);
    std::sort(ev.begin(), ev.end(), std::greater<>());
    std::vector<double> out;
    for (std::size_t i = 0; i < m; i += 2) out.push_back(ev[i]);
    return out;
}

double max_rel(const ComplexMatrix& a, const ComplexMatrix& b) { return rel_diff(a, b); }

}  // namespace testsupport
