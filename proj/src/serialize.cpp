#include "ncreal/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ncreal/algebra.hpp"
#include "ncreal/error.hpp"

namespace ncreal::io {
namespace {

json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InputError("complex entry must be [re, im]");
    const Complex z(j[0].get<double>(), j[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InputError("complex entry is not finite");
    return z;
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::size_t count_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer() || v.get<long long>() < 0) throw InputError(std::string("field \"") + key + "\" must be a nonnegative integer");
    return static_cast<std::size_t>(v.get<long long>());
}

json flat_entries(const Complex* p, std::size_t count) {
    json a = json::array();
    for (std::size_t i = 0; i < count; ++i) a.push_back(complex_json(p[i]));
    return a;
}

std::vector<Complex> entries_from(const json& j, std::size_t expect) {
    if (!j.is_array()) throw InputError("expected an array of complex entries");
    if (j.size() != expect)
        throw InputError("expected " + std::to_string(expect) + " entries, found " + std::to_string(j.size()));
    std::vector<Complex> v;
    v.reserve(expect);
    for (const auto& e : j) v.push_back(complex_from(e));
    return v;
}

json sparse_json(const SparseMatrix& s) {
    const std::size_t size = s.rows() * s.cols();
    if (size <= 64 || 4 * s.nnz() >= size) return flat_entries(s.to_dense().data(), size);
    json t = json::array();
    for (const auto& e : s.triplets()) t.push_back(json::array({e.row, e.col, e.value.real(), e.value.imag()}));
    return json{{"sparse", t}};
}

SparseMatrix sparse_from(const json& j, std::size_t rows, std::size_t cols) {
    if (j.is_object()) {
        std::vector<SparseMatrix::Triplet> t;
        for (const auto& e : field(j, "sparse")) {
            if (!e.is_array() || e.size() != 4) throw InputError("sparse entry must be [row, col, re, im]");
            t.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(),
                         Complex(e[2].get<double>(), e[3].get<double>())});
        }
        return SparseMatrix::from_triplets(rows, cols, std::move(t));
    }
    return SparseMatrix::from_dense(ComplexMatrix(rows, cols, entries_from(j, rows * cols)));
}

}  // namespace

json to_json(const ComplexMatrix& m) {
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", flat_entries(m.data(), m.size())}};
}

ComplexMatrix matrix_from_json(const json& j) {
    if (j.is_array()) {
        // Nested rows [[z, z], [z, z]] are accepted for hand-written inputs.
        const std::size_t r = j.size();
        const std::size_t c = r ? j[0].size() : 0;
        std::vector<Complex> v;
        for (const auto& row : j) {
            if (!row.is_array() || row.size() != c) throw InputError("ragged matrix rows");
            for (const auto& e : row) v.push_back(complex_from(e));
        }
        return ComplexMatrix(r, c, std::move(v));
    }
    const std::size_t r = count_field(j, "rows"), c = count_field(j, "cols");
    return ComplexMatrix(r, c, entries_from(field(j, "data"), r * c));
}

json to_json(const MatrixTuple& x) {
    json comps = json::array();
    for (const auto& c : x.components()) comps.push_back(flat_entries(c.data(), c.size()));
    return json{{"n", x.base_n()}, {"m", x.level_m()}, {"d", x.d()}, {"components", comps}};
}

MatrixTuple tuple_from_json(const json& j) {
    const std::size_t n = count_field(j, "n"), d = count_field(j, "d");
    const std::size_t m = j.contains("m") ? count_field(j, "m") : 1;
    const json& comps = field(j, "components");
    if (!comps.is_array() || comps.size() != d)
        throw InputError("tuple needs " + std::to_string(d) + " components");
    const std::size_t s = n * m;
    std::vector<ComplexMatrix> c;
    for (const auto& e : comps) {
        if (!e.is_object()) {
            c.emplace_back(s, s, entries_from(e, s * s));
            continue;
        }
        ComplexMatrix mat = matrix_from_json(e);
        if (mat.rows() != s || mat.cols() != s) throw InputError("tuple component must be " + std::to_string(s) + "x" + std::to_string(s));
        c.push_back(std::move(mat));
    }
    return MatrixTuple(n, m, std::move(c));
}

json to_json(const MatrixLinearMap& a) {
    json coeffs = json::array();
    for (const auto& b : a.coeffs()) coeffs.push_back(sparse_json(b));
    json j{{"n", a.n()}, {"N", a.rows()}, {"d", a.d()}, {"coeffs", coeffs}};
    if (a.cols() != a.rows()) j["cols"] = a.cols();
    return j;
}

MatrixLinearMap linmap_from_json(const json& j) {
    const std::size_t n = count_field(j, "n"), N = count_field(j, "N"), d = count_field(j, "d");
    const std::size_t cols = j.contains("cols") ? count_field(j, "cols") : N;
    const json& coeffs = field(j, "coeffs");
    if (!coeffs.is_array() || coeffs.size() != d * n * n)
        throw InputError("linear map needs d*n*n = " + std::to_string(d * n * n) + " coefficient matrices");
    std::vector<SparseMatrix> c;
    for (const auto& e : coeffs) c.push_back(sparse_from(e, N, cols));
    return MatrixLinearMap(n, N, cols, d, std::move(c));
}

json to_json(const DescriptorRealization& r) {
    return json{{"kind", "descriptor"}, {"A", to_json(r.A)}, {"b", to_json(r.b)}, {"c", to_json(r.c)}, {"Y", to_json(r.Y)}};
}

json to_json(const FMRealization& r) {
    return json{{"kind", "fm"},          {"A", to_json(r.A)}, {"B", to_json(r.B)},
                {"C", to_json(r.C)},     {"D", to_json(r.D)}, {"Y", to_json(r.Y)}};
}

DescriptorRealization AnyRealization::descriptor() const { return is_fm ? fm_to_desc(fm) : desc; }

AnyRealization realization_from_json(const json& j) {
    const json& kind = field(j, "kind");
    if (!kind.is_string()) throw InputError("\"kind\" must be a string");
    AnyRealization out;
    try {
        if (kind == "descriptor") {
            out.desc.A = linmap_from_json(field(j, "A"));
            out.desc.b = matrix_from_json(field(j, "b"));
            out.desc.c = matrix_from_json(field(j, "c"));
            out.desc.Y = tuple_from_json(field(j, "Y"));
            out.desc.validate();
        } else if (kind == "fm") {
            out.is_fm = true;
            out.fm.A = linmap_from_json(field(j, "A"));
            out.fm.B = linmap_from_json(field(j, "B"));
            out.fm.C = matrix_from_json(field(j, "C"));
            out.fm.D = matrix_from_json(field(j, "D"));
            out.fm.Y = tuple_from_json(field(j, "Y"));
            out.fm.validate();
        } else {
            throw InputError("unknown realization kind \"" + kind.get<std::string>() + "\"");
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed realization: ") + e.what());
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json read_json_file(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file '" + path + "'");
    out << text;
}

}  // namespace ncreal::io
