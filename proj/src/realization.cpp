#include "ncreal/realization.hpp"

#include <cmath>
#include <string>

#include "ncreal/error.hpp"

namespace ncreal {
namespace {

void require_point(std::size_t n, std::size_t d, const MatrixTuple& x) {
    if (x.base_n() != n || x.d() != d)
        throw InputError("point has n=" + std::to_string(x.base_n()) + ", d=" + std::to_string(x.d()) +
                         " but realization has n=" + std::to_string(n) + ", d=" + std::to_string(d));
}

void validate_map(const MatrixLinearMap& a, std::size_t n, std::size_t d, std::size_t rows, std::size_t cols,
                  const char* what) {
    if (a.n() != n || a.d() != d || a.rows() != rows || a.cols() != cols)
        throw InputError(std::string(what) + " has inconsistent dimensions");
}

[[noreturn]] void outside(const InvertibilityCheck& chk) {
    throw NumericalError("point outside the invertibility domain (pencil sigma_min=" + format_sigma(chk.sigma_min) +
                             ")",
                         chk.sigma_min);
}

}  // namespace

void DescriptorRealization::validate() const {
    require_centre(Y);
    const std::size_t N = b.rows();
    validate_map(A, n(), d(), N, N, "descriptor A");
    if (b.cols() != n() || c.rows() != N || c.cols() != n()) throw InputError("descriptor b, c have inconsistent dimensions");
}

void FMRealization::validate() const {
    require_centre(Y);
    const std::size_t N = C.cols();
    validate_map(A, n(), d(), N, N, "FM A");
    validate_map(B, n(), d(), N, n(), "FM B");
    if (C.rows() != n() || D.rows() != n() || D.cols() != n()) throw InputError("FM C, D have inconsistent dimensions");
}

ComplexMatrix pencil(const MatrixLinearMap& a, const CentrePoint& y, const MatrixTuple& x) {
    require_point(y.base_n(), y.d(), x);
    const MatrixTuple delta = x - ampliate(y, x.level_m());
    ComplexMatrix t = ampliated_apply(a, delta);
    ComplexMatrix l = ComplexMatrix::identity(t.rows());
    l -= t;
    return l;
}

ComplexMatrix pencil(const DescriptorRealization& r, const MatrixTuple& x) { return pencil(r.A, r.Y, x); }
ComplexMatrix pencil(const FMRealization& r, const MatrixTuple& x) { return pencil(r.A, r.Y, x); }

InvertibilityCheck pencil_check(const DescriptorRealization& r, const MatrixTuple& x) {
    return check_invertible(pencil(r, x));
}

bool in_domain(const DescriptorRealization& r, const MatrixTuple& x) { return pencil_check(r, x).invertible; }

bool in_domain(const FMRealization& r, const MatrixTuple& x) { return check_invertible(pencil(r, x)).invertible; }

ComplexMatrix transfer(const DescriptorRealization& r, const MatrixTuple& x) {
    require_point(r.n(), r.d(), x);
    const std::size_t m = x.level_m();
    const ComplexMatrix l = pencil(r, x);
    const auto chk = check_invertible(l);
    if (!chk.invertible) outside(chk);
    if (r.state_dim() == 0) return ComplexMatrix(m * r.n(), m * r.n());
    const ComplexMatrix z = lu_solve(lu_factor(l), kron_identity(m, r.c));
    return adjoint_times(kron_identity(m, r.b), z);
}

ComplexMatrix transfer_fm(const FMRealization& r, const MatrixTuple& x) {
    require_point(r.n(), r.d(), x);
    const std::size_t m = x.level_m();
    ComplexMatrix out = kron_identity(m, r.D);
    if (r.state_dim() == 0) return out;
    const MatrixTuple delta = x - ampliate(r.Y, m);
    ComplexMatrix l = ComplexMatrix::identity(m * r.state_dim());
    l -= ampliated_apply(r.A, delta);
    const auto chk = check_invertible(l);
    if (!chk.invertible) outside(chk);
    const ComplexMatrix rhs = ampliated_apply(r.B, delta);
    out += kron_identity(m, r.C) * lu_solve(lu_factor(l), rhs);
    return out;
}

ComplexMatrix moment(const DescriptorRealization& r, const Word& w, const std::vector<ComplexMatrix>& args) {
    if (args.size() != w.length())
        throw InputError("moment: word of length " + std::to_string(w.length()) + " given " +
                         std::to_string(args.size()) + " arguments");
    ComplexMatrix v = r.c;
    for (std::size_t i = w.length(); i-- > 0;) v = apply_to(r.A, static_cast<std::size_t>(w[i]), args[i], v);
    return adjoint_times(r.b, v);
}

ComplexMatrix series_transfer(const DescriptorRealization& r, const MatrixTuple& x, std::size_t L) {
    require_point(r.n(), r.d(), x);
    const std::size_t m = x.level_m();
    const ComplexMatrix t = ampliated_apply(r.A, x - ampliate(r.Y, m));
    ComplexMatrix v = kron_identity(m, r.c);
    ComplexMatrix acc = v;
    for (std::size_t l = 0; l < L; ++l) {
        v = t * v;
        acc += v;
    }
    return adjoint_times(kron_identity(m, r.b), acc);
}

std::size_t pole_order_of(const ComplexMatrix& t) {
    const std::size_t n = t.rows();
    ComplexMatrix m = ComplexMatrix::identity(n);
    m -= t;
    if (check_invertible(m).invertible) return 0;
    // Scale so that ||M|| = 1; the cutoff on M^k is then 1e-10 in absolute terms.
    const double s = spectral_norm(m);
    if (s == 0.0) return 1;
    m *= 1.0 / s;
    ComplexMatrix mk = m;
    std::size_t rank = numerical_rank(mk, 0.0, kRankTol);
    for (std::size_t k = 1; k < n; ++k) {
        mk = mk * m;
        const std::size_t next = numerical_rank(mk, 0.0, kRankTol);
        if (next == rank) return k;
        rank = next;
    }
    return n;
}

std::size_t pole_order(const DescriptorRealization& r, const MatrixTuple& x) {
    require_point(r.n(), r.d(), x);
    return pole_order_of(ampliated_apply(r.A, x - ampliate(r.Y, x.level_m())));
}

DescriptorRealization similarity_transform(const DescriptorRealization& r, const ComplexMatrix& s) {
    const std::size_t N = r.state_dim();
    if (!s.is_square() || s.rows() != N) throw InputError("similarity_transform: S must be NxN");
    const auto chk = check_invertible(s);
    if (!chk.invertible) throw NumericalError("similarity_transform: S is singular", chk.sigma_min);
    const auto f = lu_factor(s);
    const ComplexMatrix sinv = lu_solve(f, ComplexMatrix::identity(N));
    std::vector<SparseMatrix> c;
    for (const auto& b : r.A.coeffs()) c.push_back(SparseMatrix::from_dense(s * b.to_dense() * sinv));
    DescriptorRealization out;
    out.A = MatrixLinearMap(r.n(), N, N, r.d(), std::move(c));
    out.b = sinv.adjoint() * r.b;
    out.c = s * r.c;
    out.Y = r.Y;
    return out;
}

}  // namespace ncreal
