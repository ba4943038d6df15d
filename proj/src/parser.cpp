#include "ncreal/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "ncreal/algebra.hpp"
#include "ncreal/error.hpp"

namespace ncreal {
namespace {

class Parser {
public:
    Parser(const std::string& s, std::size_t d, const ConstantTable& c) : s_(s), d_(d), consts_(c) {}

    Expression run() {
        skip();
        if (pos_ == s_.size()) fail("empty expression");
        Expression e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
    [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
        throw InputError("syntax error at byte " + std::to_string(at) + ": " + msg);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    void expect(char c) {
        if (!peek(c)) fail(pos_ < s_.size() ? "expected '" + std::string(1, c) + "'" : "unexpected end of input, expected '" + std::string(1, c) + "'");
        ++pos_;
    }
    bool starts_factor() {
        skip();
        if (pos_ >= s_.size()) return false;
        const char c = s_[pos_];
        return c == '(' || c == '.' || std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    Expression expr() {
        const std::size_t at = pos_;
        std::vector<Expression> terms;
        terms.push_back(term());
        while (true) {
            if (peek('+')) {
                ++pos_;
                terms.push_back(term());
            } else if (peek('-')) {
                const std::size_t neg_at = pos_++;
                Expression n;
                n.kind = Expression::Kind::Negate;
                n.offset = neg_at;
                n.children.push_back(term());
                terms.push_back(std::move(n));
            } else {
                break;
            }
        }
        if (terms.size() == 1) return std::move(terms.front());
        Expression s;
        s.kind = Expression::Kind::Sum;
        s.offset = at;
        s.children = std::move(terms);
        return s;
    }

    Expression term() {
        skip();
        const std::size_t at = pos_;
        std::vector<Expression> f;
        f.push_back(factor());
        while (true) {
            if (peek('*')) {
                ++pos_;
                f.push_back(factor());
            } else if (starts_factor()) {
                f.push_back(factor());
            } else {
                break;
            }
        }
        if (f.size() == 1) return std::move(f.front());
        Expression p;
        p.kind = Expression::Kind::Product;
        p.offset = at;
        p.children = std::move(f);
        return p;
    }

    Expression factor() {
        skip();
        const std::size_t at = pos_;
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '-') {
            ++pos_;
            Expression n;
            n.kind = Expression::Kind::Negate;
            n.offset = at;
            n.children.push_back(factor());
            return n;
        }
        if (c == '(') {
            ++pos_;
            Expression e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Expression number() {
        const std::size_t at = pos_;
        auto digit = [&](std::size_t i) { return i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i])); };
        std::size_t p = pos_;
        bool any = false;
        while (digit(p)) ++p, any = true;
        if (p < s_.size() && s_[p] == '.') {
            ++p;
            while (digit(p)) ++p, any = true;
        }
        if (!any) fail("malformed number");
        if (p < s_.size() && (s_[p] == 'e' || s_[p] == 'E')) {
            std::size_t q = p + 1;
            if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
            if (digit(q)) {
                while (digit(q)) ++q;
                p = q;
            }
        }
        const double v = std::strtod(s_.substr(pos_, p - pos_).c_str(), nullptr);
        pos_ = p;
        Expression e;
        e.kind = Expression::Kind::Constant;
        e.offset = at;
        if (pos_ < s_.size() && s_[pos_] == 'i' &&
            !(pos_ + 1 < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '_'))) {
            ++pos_;
            e.scalar = Complex(0.0, v);
        } else {
            e.scalar = Complex(v, 0.0);
        }
        return e;
    }

    Expression identifier() {
        const std::size_t at = pos_;
        const char c = s_[pos_];
        if ((c == 'x' || c == 'z') && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
            std::size_t p = pos_ + 1;
            std::size_t k = 0;
            while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
                k = k * 10 + static_cast<std::size_t>(s_[p] - '0');
                if (k > 1000000) fail_at(at, "variable index too large");
                ++p;
            }
            if (k == 0 || k > d_)
                fail_at(at, "variable " + s_.substr(at, p - at) + " out of range 1.." + std::to_string(d_));
            pos_ = p;
            Expression e;
            e.kind = Expression::Kind::Variable;
            e.offset = at;
            e.var = k - 1;
            return e;
        }
        std::size_t p = pos_;
        while (p < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p])) || s_[p] == '_')) ++p;
        const std::string name = s_.substr(pos_, p - pos_);
        pos_ = p;
        if (name == "inv" && peek('(')) {
            ++pos_;
            Expression inv;
            inv.kind = Expression::Kind::Inverse;
            inv.offset = at;
            inv.children.push_back(expr());
            expect(')');
            return inv;
        }
        const auto it = consts_.find(name);
        if (it == consts_.end()) fail_at(at, "unknown identifier '" + name + "'");
        Expression e;
        e.kind = Expression::Kind::Constant;
        e.offset = at;
        e.name = name;
        e.matrix = it->second;
        return e;
    }

    const std::string& s_;
    std::size_t d_;
    const ConstantTable& consts_;
    std::size_t pos_ = 0;
};

ComplexMatrix constant_value(const Expression& e, std::size_t n, std::size_t m) {
    if (e.name.empty()) return e.scalar * ComplexMatrix::identity(m * n);
    if (e.matrix.rows() != n || e.matrix.cols() != n)
        throw InputError("constant '" + e.name + "' is " + std::to_string(e.matrix.rows()) + "x" +
                         std::to_string(e.matrix.cols()) + ", expected " + std::to_string(n) + "x" + std::to_string(n));
    return kron_identity(m, e.matrix);
}

void print(const Expression& e, std::ostringstream& os) {
    using K = Expression::Kind;
    switch (e.kind) {
        case K::Variable:
            os << 'x' << e.var + 1;
            return;
        case K::Constant:
            if (!e.name.empty()) {
                os << e.name;
            } else if (e.scalar.imag() == 0.0) {
                os << e.scalar.real();
            } else {
                os << '(' << e.scalar.real() << '+' << e.scalar.imag() << "i)";
            }
            return;
        case K::Negate:
            os << "-(";
            print(e.children[0], os);
            os << ')';
            return;
        case K::Inverse:
            os << "inv(";
            print(e.children[0], os);
            os << ')';
            return;
        case K::Sum:
        case K::Product:
            os << '(';
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i) os << (e.kind == K::Sum ? " + " : "*");
                print(e.children[i], os);
            }
            os << ')';
            return;
    }
}

}  // namespace

Expression parse(const std::string& text, std::size_t d, const ConstantTable& constants) {
    return Parser(text, d, constants).run();
}

std::string to_string(const Expression& e) {
    std::ostringstream os;
    os.precision(17);
    print(e, os);
    return os.str();
}

std::size_t depth(const Expression& e) {
    std::size_t best = 0;
    for (const auto& c : e.children) best = std::max(best, depth(c));
    return e.children.empty() ? 0 : best + 1;
}

FMRealization realize_expression(const Expression& e, const CentrePoint& y) {
    require_centre(y);
    using K = Expression::Kind;
    switch (e.kind) {
        case K::Variable:
            return coordinate_fm(e.var, y);
        case K::Constant:
            return constant_fm(constant_value(e, y.base_n(), 1), y);
        case K::Negate:
            return fm_negate(realize_expression(e.children[0], y));
        case K::Sum: {
            FMRealization acc = realize_expression(e.children[0], y);
            for (std::size_t i = 1; i < e.children.size(); ++i) acc = fm_add(acc, realize_expression(e.children[i], y));
            return acc;
        }
        case K::Product: {
            FMRealization acc = realize_expression(e.children[0], y);
            for (std::size_t i = 1; i < e.children.size(); ++i) acc = fm_mul(acc, realize_expression(e.children[i], y));
            return acc;
        }
        case K::Inverse: {
            FMRealization inner = realize_expression(e.children[0], y);
            const auto chk = check_invertible(inner.D);
            if (!chk.invertible)
                throw InputError("expression not defined at centre Y: inv at byte " + std::to_string(e.offset) +
                                 " is singular there (sigma_min=" + format_sigma(chk.sigma_min) + ")");
            return fm_inv(inner);
        }
    }
    throw InputError("unknown expression node");
}

ComplexMatrix eval_expression(const Expression& e, const MatrixTuple& x) {
    using K = Expression::Kind;
    switch (e.kind) {
        case K::Variable:
            if (e.var >= x.d()) throw InputError("variable x" + std::to_string(e.var + 1) + " exceeds point dimension");
            return x[e.var];
        case K::Constant:
            return constant_value(e, x.base_n(), x.level_m());
        case K::Negate:
            return -eval_expression(e.children[0], x);
        case K::Sum: {
            ComplexMatrix acc = eval_expression(e.children[0], x);
            for (std::size_t i = 1; i < e.children.size(); ++i) acc += eval_expression(e.children[i], x);
            return acc;
        }
        case K::Product: {
            ComplexMatrix acc = eval_expression(e.children[0], x);
            for (std::size_t i = 1; i < e.children.size(); ++i) acc = acc * eval_expression(e.children[i], x);
            return acc;
        }
        case K::Inverse: {
            const ComplexMatrix inner = eval_expression(e.children[0], x);
            const auto chk = check_invertible(inner);
            if (!chk.invertible)
                throw NumericalError("inv at byte " + std::to_string(e.offset) + " is singular at the point", chk.sigma_min);
            return inverse(inner);
        }
    }
    throw InputError("unknown expression node");
}

}  // namespace ncreal
