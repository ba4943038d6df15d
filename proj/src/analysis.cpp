#include "ncreal/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ncreal/error.hpp"
#include "ncreal/log.hpp"

namespace ncreal {
namespace {

double max_col_norm(const ComplexMatrix& m) {
    double best = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) s += std::norm(m(i, j));
        best = std::max(best, std::sqrt(s));
    }
    return best;
}

double coeff_scale(const MatrixLinearMap& a) {
    double s = 0.0;
    for (const auto& b : a.coeffs()) s = std::max(s, b.frobenius_norm());
    return s;
}

ComplexMatrix join_columns(const std::vector<ComplexMatrix>& blocks, std::size_t rows) {
    std::size_t cols = 0;
    for (const auto& b : blocks) cols += b.cols();
    ComplexMatrix out(rows, cols);
    std::size_t c = 0;
    for (const auto& b : blocks) {
        out.set_block(0, c, b);
        c += b.cols();
    }
    return out;
}

// Every nonzero A_j(E_pq) applied to the columns of v.
ComplexMatrix generator_images(const MatrixLinearMap& a, const ComplexMatrix& v) {
    std::vector<ComplexMatrix> blocks;
    for (const auto& b : a.coeffs())
        if (b.nnz() > 0) blocks.push_back(b.multiply(v));
    return join_columns(blocks, a.rows());
}

bool same_centre(const CentrePoint& y1, const CentrePoint& y2) {
    if (y1.base_n() != y2.base_n() || y1.d() != y2.d() || y1.level_m() != y2.level_m()) return false;
    for (std::size_t j = 0; j < y1.d(); ++j)
        if ((y1[j] - y2[j]).frobenius_norm() > 1e-12 * std::max(1.0, y1[j].frobenius_norm())) return false;
    return true;
}

void require_same_centre(const DescriptorRealization& r1, const DescriptorRealization& r2, const char* op) {
    if (!same_centre(r1.Y, r2.Y)) throw InputError(std::string(op) + ": realizations have different centres");
}

MatrixLinearMap direct_sum_map(const MatrixLinearMap& a1, const MatrixLinearMap& a2) {
    const std::size_t N1 = a1.rows(), N = N1 + a2.rows();
    std::vector<SparseMatrix> c;
    for (std::size_t k = 0; k < a1.coeffs().size(); ++k) {
        auto t = a1.coeffs()[k].triplets();
        for (auto e : a2.coeffs()[k].triplets()) t.push_back({e.row + N1, e.col + N1, e.value});
        c.push_back(SparseMatrix::from_triplets(N, N, std::move(t)));
    }
    return MatrixLinearMap(a1.n(), N, N, a1.d(), std::move(c));
}

}  // namespace

ComplexMatrix invariant_span(const MatrixLinearMap& a, const std::vector<ComplexMatrix>& seeds, std::size_t max_steps) {
    const std::size_t N = a.rows();
    OrthoBasis basis(N);
    const ComplexMatrix s0 = join_columns(seeds, N);
    const double seed_scale = max_col_norm(s0);
    if (seed_scale == 0.0) return basis.matrix();
    ComplexMatrix frontier = basis.extend(s0, kRankTol * seed_scale);
    const double gen_tol = kRankTol * coeff_scale(a);
    for (std::size_t step = 0; step < max_steps && frontier.cols() > 0 && basis.size() < N; ++step) {
        const ComplexMatrix cand = generator_images(a, frontier);
        if (cand.cols() == 0 || gen_tol == 0.0) break;
        frontier = basis.extend(cand, gen_tol);
    }
    return basis.matrix();
}

MatrixLinearMap adjoint_coefficients(const MatrixLinearMap& a) {
    std::vector<SparseMatrix> c;
    for (const auto& b : a.coeffs()) c.push_back(b.adjoint());
    return MatrixLinearMap(a.n(), a.cols(), a.rows(), a.d(), std::move(c));
}

SubspaceBasis controllable_basis(const DescriptorRealization& r) {
    r.validate();
    return {r.state_dim(), invariant_span(r.A, {r.c})};
}

SubspaceBasis observable_basis(const DescriptorRealization& r) {
    r.validate();
    return {r.state_dim(), invariant_span(adjoint_coefficients(r.A), {r.b})};
}

bool is_minimal(const DescriptorRealization& r) {
    const std::size_t N = r.state_dim();
    return controllable_basis(r).dim() == N && observable_basis(r).dim() == N;
}

DescriptorRealization kalman_minimize(const DescriptorRealization& r) {
    const ComplexMatrix p = controllable_basis(r).basis;
    DescriptorRealization c;
    c.Y = r.Y;
    c.A = compress(r.A, p, p);
    c.b = adjoint_times(p, r.b);
    c.c = adjoint_times(p, r.c);
    const ComplexMatrix q = observable_basis(c).basis;
    DescriptorRealization out;
    out.Y = r.Y;
    out.A = compress(c.A, q, q);
    out.b = adjoint_times(q, c.b);
    out.c = adjoint_times(q, c.c);
    log::debug("kalman_minimize: " + std::to_string(r.state_dim()) + " -> " + std::to_string(p.cols()) + " -> " +
               std::to_string(q.cols()));
    return out;
}

DescriptorRealization translate(const DescriptorRealization& r, const MatrixTuple& x) {
    r.validate();
    const ComplexMatrix l = pencil(r, x);
    const auto chk = check_invertible(l);
    if (!chk.invertible)
        throw NumericalError("translate: point outside the invertibility domain (sigma_min=" + format_sigma(chk.sigma_min) + ")",
                             chk.sigma_min);
    const std::size_t m = x.level_m(), n = r.n(), N = r.state_dim(), d = r.d();
    const std::size_t n2 = m * n, N2 = m * N;
    const ComplexMatrix lam = inverse(l);
    DescriptorRealization out;
    out.Y = x.as_centre();
    out.A = MatrixLinearMap(n2, N2, N2, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < m; ++k) {
            const ComplexMatrix lk = lam.block(0, k * N, N2, N);
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) {
                    const ComplexMatrix img = lk * r.A.coeff(j, p, q).to_dense();
                    for (std::size_t ll = 0; ll < m; ++ll) {
                        ComplexMatrix coeff(N2, N2);
                        coeff.set_block(0, ll * N, img);
                        out.A.set_coeff(j, k * n + p, ll * n + q, coeff);
                    }
                }
        }
    out.b = kron_identity(m, r.b);
    out.c = lam * kron_identity(m, r.c);
    return out;
}

double llac_residual(const DescriptorRealization& r) {
    r.validate();
    const std::size_t n = r.n(), d = r.d(), N = r.state_dim(), nu = n * n;
    const auto units = matrix_units(n);
    auto uidx = [n](std::size_t p, std::size_t q) { return p * n + q; };
    std::vector<std::vector<ComplexMatrix>> bd(d, std::vector<ComplexMatrix>(nu));
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) bd[j][uidx(p, q)] = r.A.coeff(j, p, q).to_dense();
    // K_T = A([T, Y]) for each matrix unit T.
    std::vector<ComplexMatrix> kt(nu);
    for (std::size_t t = 0; t < nu; ++t) {
        ComplexMatrix acc(N, N);
        for (std::size_t j = 0; j < d; ++j) {
            const ComplexMatrix comm = units[t] * r.Y[j] - r.Y[j] * units[t];
            for (std::size_t u = 0; u < nu; ++u)
                if (comm.data()[u] != Complex(0.0)) acc.add_block(0, 0, bd[j][u], comm.data()[u]);
        }
        kt[t] = std::move(acc);
    }
    const ComplexMatrix bh = r.b.adjoint();
    const ComplexMatrix bc = bh * r.c;
    // Each identity is measured against the size of its factors: products of b, c, A_j(E_pq) and
    // max(1, ||A([T,Y])||), floored at 1.
    double na = 0.0, nk = 1.0;
    for (const auto& row : bd)
        for (const auto& m : row) na = std::max(na, m.frobenius_norm());
    for (const auto& m : kt) nk = std::max(nk, m.frobenius_norm());
    const double nb = r.b.frobenius_norm(), nc = r.c.frobenius_norm();
    const double s1 = std::max(1.0, nb * nc * nk), s2 = std::max(1.0, nb * na * nk), s3 = std::max(1.0, na * nc * nk),
                 s4 = std::max(1.0, na * na * nk);
    double worst = 0.0;
    auto note = [&](const ComplexMatrix& m, double scale) { worst = std::max(worst, m.frobenius_norm() / scale); };

    for (std::size_t t = 0; t < nu; ++t) note(units[t] * bc - bc * units[t] - bh * kt[t] * r.c, s1);
    if (N == 0) return worst;

    std::vector<ComplexMatrix> bhk(nu), kc(nu);
    for (std::size_t t = 0; t < nu; ++t) {
        bhk[t] = bh * kt[t];
        kc[t] = kt[t] * r.c;
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const std::size_t t = uidx(a, b);
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t e = 0; e < n; ++e) {
                        const std::size_t h = uidx(c, e);
                        // LAC2 with T = E_ab, H = E_ce; TH = delta_bc E_ae.
                        ComplexMatrix l2 = units[t] * (bh * bd[i][h]);
                        if (b == c) l2 -= bh * bd[i][uidx(a, e)];
                        l2 -= bhk[t] * bd[i][h];
                        note(l2, s2);
                        // LAC3 with H = E_ce, T = E_ab; HT = delta_ea E_cb.
                        ComplexMatrix l3(N, n);
                        if (e == a) l3 += bd[i][uidx(c, b)] * r.c;
                        l3 -= bd[i][h] * r.c * units[t];
                        l3 -= bd[i][h] * kc[t];
                        note(l3, s3);
                    }
            }
    // LAC4: A_i(GT)A_j(H) - A_i(G)A_j(TH) - A_i(G) K_T A_j(H), stacked over (j, H).
    ComplexMatrix w(N, d * nu * N);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t h = 0; h < nu; ++h) w.set_block(0, (j * nu + h) * N, bd[j][h]);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t e = 0; e < n; ++e)
            for (std::size_t f = 0; f < n; ++f) {
                const ComplexMatrix& ag = bd[i][uidx(e, f)];
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b) {
                        const std::size_t t = uidx(a, b);
                        ComplexMatrix left = -(ag * kt[t]);
                        if (f == a) left += bd[i][uidx(e, b)];
                        ComplexMatrix res = left * w;
                        // TH = delta_bc E_a,x for H = E_c,x.
                        for (std::size_t j = 0; j < d; ++j)
                            for (std::size_t x = 0; x < n; ++x) {
                                const ComplexMatrix prod = ag * bd[j][uidx(a, x)];
                                res.add_block(0, (j * nu + uidx(b, x)) * N, prod, -1.0);
                            }
                        for (std::size_t blk = 0; blk < d * nu; ++blk) note(res.block(0, blk * N, N, N), s4);
                    }
            }
    return worst;
}

bool is_nc_function(const DescriptorRealization& r, double tol) { return llac_residual(kalman_minimize(r)) <= tol; }

MatrixTuple nilpotent_point(const CentrePoint& y, const Word& w, const std::vector<ComplexMatrix>& args, double r) {
    require_centre(y);
    if (args.size() != w.length())
        throw InputError("nilpotent_point: word of length " + std::to_string(w.length()) + " given " +
                         std::to_string(args.size()) + " arguments");
    if (!(r > 0.0)) throw InputError("nilpotent_point: r must be positive");
    const std::size_t l = w.length(), n = y.base_n();
    MatrixTuple x = ampliate(y, l + 1);
    for (std::size_t i = 0; i < l; ++i) {
        const std::size_t k = static_cast<std::size_t>(w[i]);
        if (k >= y.d()) throw InputError("nilpotent_point: letter out of range");
        if (args[i].rows() != n || args[i].cols() != n) throw InputError("nilpotent_point: argument must be n x n");
        x[k].add_block(i * n, (i + 1) * n, args[i], r);
    }
    return x;
}

ComplexMatrix moment_via_nilpotent(const DescriptorRealization& r, const Word& w, const std::vector<ComplexMatrix>& args,
                                   double scale) {
    const MatrixTuple x = nilpotent_point(r.Y, w, args, scale);
    const std::size_t l = w.length(), n = r.n();
    const ComplexMatrix f = transfer(r, x);
    return f.block(0, l * n, n, n) * Complex(std::pow(scale, -static_cast<double>(l)));
}

double moment_count(std::size_t n, std::size_t d, std::size_t L) {
    const double g = static_cast<double>(d * n * n);
    double total = 0.0, term = 1.0;
    for (std::size_t l = 0; l <= L; ++l) {
        total += term;
        term *= g;
    }
    return total;
}

double max_moment_deviation(const DescriptorRealization& r1, const DescriptorRealization& r2, std::size_t L) {
    require_same_centre(r1, r2, "max_moment_deviation");
    const ComplexMatrix b1h = r1.b.adjoint(), b2h = r2.b.adjoint();
    std::vector<std::pair<ComplexMatrix, ComplexMatrix>> layer{{r1.c, r2.c}};
    double worst = 0.0;
    for (std::size_t l = 0;; ++l) {
        double diff = 0.0, n1 = 0.0, n2 = 0.0;
        for (const auto& [v1, v2] : layer) {
            const ComplexMatrix m1 = b1h * v1, m2 = b2h * v2;
            diff += std::pow((m1 - m2).frobenius_norm(), 2);
            n1 += std::pow(m1.frobenius_norm(), 2);
            n2 += std::pow(m2.frobenius_norm(), 2);
        }
        worst = std::max(worst, std::sqrt(diff) / std::max({1.0, std::sqrt(n1), std::sqrt(n2)}));
        if (l == L) break;
        std::vector<std::pair<ComplexMatrix, ComplexMatrix>> next;
        next.reserve(layer.size() * r1.A.coeffs().size());
        for (std::size_t k = 0; k < r1.A.coeffs().size(); ++k)
            for (const auto& [v1, v2] : layer)
                next.emplace_back(r1.A.coeffs()[k].multiply(v1), r2.A.coeffs()[k].multiply(v2));
        layer = std::move(next);
    }
    return worst;
}

double reachable_moment_deviation(const DescriptorRealization& r1, const DescriptorRealization& r2, std::size_t L) {
    require_same_centre(r1, r2, "reachable_moment_deviation");
    const MatrixLinearMap a = direct_sum_map(r1.A, r2.A);
    const ComplexMatrix c = vstack(r1.c, r2.c);
    const ComplexMatrix b = vstack(r1.b, -r2.b);
    const ComplexMatrix q = invariant_span(a, {c}, L);
    if (q.cols() == 0) return 0.0;
    return spectral_norm(adjoint_times(b, q)) / std::max(1.0, spectral_norm(b));
}

EquivalenceReport equivalence_report(const DescriptorRealization& r1, const DescriptorRealization& r2, std::size_t L,
                                     double tol) {
    require_same_centre(r1, r2, "analytically_equivalent");
    EquivalenceReport rep;
    rep.depth = L;
    rep.exhaustive = moment_count(r1.n(), r1.d(), L) <= kExhaustiveMomentLimit;
    rep.deviation = rep.exhaustive ? max_moment_deviation(r1, r2, L) : reachable_moment_deviation(r1, r2, L);
    rep.equivalent = rep.deviation <= tol;
    return rep;
}

bool analytically_equivalent(const DescriptorRealization& r1, const DescriptorRealization& r2, std::size_t L, double tol) {
    return equivalence_report(r1, r2, L, tol).equivalent;
}

bool analytically_equivalent(const DescriptorRealization& r1, const DescriptorRealization& r2, double tol) {
    return analytically_equivalent(r1, r2, r1.state_dim() + r2.state_dim(), tol);
}

ComplexMatrix recover_similarity(const DescriptorRealization& r1, const DescriptorRealization& r2) {
    require_same_centre(r1, r2, "recover_similarity");
    const std::size_t N = r1.state_dim();
    if (r2.state_dim() != N)
        throw InputError("recover_similarity: state dimensions differ (" + std::to_string(N) + " vs " +
                         std::to_string(r2.state_dim()) + ")");
    if (!is_minimal(r1) || !is_minimal(r2)) throw InputError("recover_similarity: both realizations must be minimal");
    if (N == 0) return ComplexMatrix(0, 0);

    std::vector<ComplexMatrix> k1, k2;
    std::vector<std::pair<ComplexMatrix, ComplexMatrix>> queue;
    OrthoBasis basis(N);
    auto offer = [&](ComplexMatrix v1, ComplexMatrix v2) {
        const double s = v1.frobenius_norm();
        if (s == 0.0) return;
        v1 *= 1.0 / s;
        v2 *= 1.0 / s;
        k1.push_back(v1);
        k2.push_back(v2);
        if (basis.size() < N && basis.extend(v1, kRankTol).cols() == 1) queue.emplace_back(v1, v2);
    };
    for (std::size_t j = 0; j < r1.n(); ++j) offer(r1.c.col(j), r2.c.col(j));
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto pair = queue[head];
        for (std::size_t k = 0; k < r1.A.coeffs().size(); ++k)
            offer(r1.A.coeffs()[k].multiply(pair.first), r2.A.coeffs()[k].multiply(pair.second));
    }
    const ComplexMatrix m1 = join_columns(k1, N), m2 = join_columns(k2, N);
    if (numerical_rank(m1, kRankTol) < N) throw InputError("recover_similarity: reachable vectors do not span the state space");
    const ComplexMatrix s = m2 * pseudo_inverse(m1);
    const double res = (s * m1 - m2).frobenius_norm() / std::max(1.0, m2.frobenius_norm());
    if (res > 1e-8)
        throw InputError("recover_similarity: intertwining system is inconsistent (residual " + std::to_string(res) +
                         "); realizations are not equivalent");
    const auto chk = check_invertible(s);
    if (!chk.invertible) throw NumericalError("recover_similarity: recovered map is singular", chk.sigma_min);
    return s;
}

}  // namespace ncreal
