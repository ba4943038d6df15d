#include "ncreal/algebra.hpp"

#include <string>

#include "ncreal/analysis.hpp"
#include "ncreal/error.hpp"

namespace ncreal {
namespace {

class Blocks {
public:
    Blocks(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
    void put(std::size_t r0, std::size_t c0, const SparseMatrix& s) {
        for (auto t : s.triplets()) t_.push_back({t.row + r0, t.col + c0, t.value});
    }
    void put(std::size_t r0, std::size_t c0, const ComplexMatrix& m) { put(r0, c0, SparseMatrix::from_dense(m)); }
    SparseMatrix build() { return SparseMatrix::from_triplets(rows_, cols_, std::move(t_)); }

private:
    std::size_t rows_, cols_;
    std::vector<SparseMatrix::Triplet> t_;
};

void require_compatible(const FMRealization& r, const FMRealization& s, const char* op) {
    const bool same = r.n() == s.n() && r.d() == s.d() &&
                      [&] {
                          for (std::size_t j = 0; j < r.d(); ++j)
                              if (r.Y[j].entries() != s.Y[j].entries()) return false;
                          return true;
                      }();
    if (!same) throw InputError(std::string(op) + ": realizations have different centres");
}

}  // namespace

FMRealization fm_add(const FMRealization& r, const FMRealization& s) {
    require_compatible(r, s, "fm_add");
    const std::size_t n = r.n(), d = r.d(), N1 = r.state_dim(), N2 = s.state_dim(), N = N1 + N2;
    FMRealization out;
    out.Y = r.Y;
    out.A = MatrixLinearMap(n, N, N, d);
    out.B = MatrixLinearMap(n, N, n, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
                Blocks a(N, N), b(N, n);
                a.put(0, 0, r.A.coeff(j, p, q));
                a.put(N1, N1, s.A.coeff(j, p, q));
                b.put(0, 0, r.B.coeff(j, p, q));
                b.put(N1, 0, s.B.coeff(j, p, q));
                out.A.set_coeff(j, p, q, a.build());
                out.B.set_coeff(j, p, q, b.build());
            }
    out.C = hstack(r.C, s.C);
    out.D = r.D + s.D;
    return out;
}

FMRealization fm_mul(const FMRealization& r, const FMRealization& s) {
    require_compatible(r, s, "fm_mul");
    const std::size_t n = r.n(), d = r.d(), N1 = r.state_dim(), N2 = s.state_dim(), N = N1 + N2;
    FMRealization out;
    out.Y = r.Y;
    out.A = MatrixLinearMap(n, N, N, d);
    out.B = MatrixLinearMap(n, N, n, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
                const ComplexMatrix bj = r.B.coeff(j, p, q).to_dense();
                Blocks a(N, N), b(N, n);
                a.put(0, 0, r.A.coeff(j, p, q));
                a.put(0, N1, bj * s.C);
                a.put(N1, N1, s.A.coeff(j, p, q));
                b.put(0, 0, bj * s.D);
                b.put(N1, 0, s.B.coeff(j, p, q));
                out.A.set_coeff(j, p, q, a.build());
                out.B.set_coeff(j, p, q, b.build());
            }
    out.C = hstack(r.C, r.D * s.C);
    out.D = r.D * s.D;
    return out;
}

FMRealization fm_inv(const FMRealization& r) {
    const auto chk = check_invertible(r.D);
    if (!chk.invertible)
        throw NumericalError("realization not invertible at centre (sigma_min(D)=" + format_sigma(chk.sigma_min) + ")",
                             chk.sigma_min);
    const std::size_t n = r.n(), d = r.d(), N = r.state_dim();
    const ComplexMatrix dinv = inverse(r.D);
    const ComplexMatrix dinv_c = dinv * r.C;
    FMRealization out;
    out.Y = r.Y;
    out.A = MatrixLinearMap(n, N, N, d);
    out.B = MatrixLinearMap(n, N, n, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
                const ComplexMatrix bj = r.B.coeff(j, p, q).to_dense();
                ComplexMatrix a = r.A.coeff(j, p, q).to_dense();
                a -= bj * dinv_c;
                out.A.set_coeff(j, p, q, a);
                out.B.set_coeff(j, p, q, -(bj * dinv));
            }
    out.C = dinv_c;
    out.D = dinv;
    return out;
}

FMRealization fm_negate(const FMRealization& r) {
    FMRealization out = r;
    out.C = -r.C;
    out.D = -r.D;
    return out;
}

FMRealization desc_to_fm(const DescriptorRealization& r) {
    r.validate();
    const std::size_t n = r.n(), d = r.d();
    std::vector<ComplexMatrix> seeds;
    const auto units = matrix_units(n);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t u = 0; u < units.size(); ++u) seeds.push_back(apply_to(r.A, j, units[u], r.c));
    const ComplexMatrix p = invariant_span(r.A, seeds);
    const std::size_t N = p.cols();
    FMRealization out;
    out.Y = r.Y;
    out.A = compress(r.A, p, p);
    out.B = MatrixLinearMap(n, N, n, d);
    const ComplexMatrix ph = p.adjoint();
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t pp = 0; pp < n; ++pp)
            for (std::size_t q = 0; q < n; ++q)
                out.B.set_coeff(j, pp, q, ph * r.A.coeff(j, pp, q).multiply(r.c));
    out.C = adjoint_times(r.b, p);
    out.D = adjoint_times(r.b, r.c);
    return out;
}

DescriptorRealization fm_to_desc(const FMRealization& r) {
    r.validate();
    const std::size_t n = r.n(), d = r.d(), N = r.state_dim(), M = N + n;
    DescriptorRealization out;
    out.Y = r.Y;
    out.A = MatrixLinearMap(n, M, M, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
                Blocks a(M, M);
                a.put(0, 0, r.A.coeff(j, p, q));
                a.put(0, N, r.B.coeff(j, p, q));
                out.A.set_coeff(j, p, q, a.build());
            }
    out.b = vstack(r.C.adjoint(), r.D.adjoint());
    out.c = vstack(ComplexMatrix(N, n), ComplexMatrix::identity(n));
    return out;
}

FMRealization constant_fm(const ComplexMatrix& m, const CentrePoint& y) {
    require_centre(y);
    const std::size_t n = y.base_n(), d = y.d();
    if (m.rows() != n || m.cols() != n) throw InputError("constant_fm: constant must be " + std::to_string(n) + "x" + std::to_string(n));
    FMRealization out;
    out.Y = y;
    out.A = MatrixLinearMap(n, 0, 0, d);
    out.B = MatrixLinearMap(n, 0, n, d);
    out.C = ComplexMatrix(n, 0);
    out.D = m;
    return out;
}

FMRealization coordinate_fm(std::size_t k, const CentrePoint& y) {
    require_centre(y);
    const std::size_t n = y.base_n(), d = y.d();
    if (k >= d) throw InputError("coordinate_fm: variable index " + std::to_string(k + 1) + " exceeds d=" + std::to_string(d));
    FMRealization out;
    out.Y = y;
    out.A = MatrixLinearMap(n, n, n, d);
    out.B = MatrixLinearMap(n, n, n, d);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) out.B.set_coeff(k, p, q, ComplexMatrix::unit(n, n, p, q));
    out.C = ComplexMatrix::identity(n);
    out.D = y[k];
    return out;
}

}  // namespace ncreal
