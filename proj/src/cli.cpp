#include "ncreal/cli.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "ncreal/algebra.hpp"
#include "ncreal/analysis.hpp"
#include "ncreal/error.hpp"
#include "ncreal/fock.hpp"
#include "ncreal/log.hpp"
#include "ncreal/parser.hpp"
#include "ncreal/serialize.hpp"

namespace ncreal {
namespace {

using io::json;

struct JobConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string out;
    double tol = -1.0;  // < 0: command default
    long long depth = -1;
    std::size_t samples = 20;
    std::uint64_t seed = 1;
    std::size_t level = 1;
    double radius = 1.0;
};

json report(const std::string& command) { return json{{"schema_version", "1"}, {"command", command}}; }

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void emit(const JobConfig&, const json& rep, std::ostream& out) { out << rep.dump(2) << '\n'; }

CentrePoint read_centre(const std::string& path) {
    MatrixTuple y = io::tuple_from_json(io::read_json_file(path));
    require_centre(y);
    return y;
}

Expression read_expression(const std::string& path, std::size_t d) {
    const std::string text = io::read_text_file(path);
    std::string expr = text;
    ConstantTable constants;
    json j;
    bool is_json = false;
    try {
        j = json::parse(text);
        is_json = j.is_object();
    } catch (const json::parse_error&) {
    }
    if (is_json) {
        if (!j.contains("expression") || !j["expression"].is_string()) throw InputError("expression file needs a string field \"expression\"");
        expr = j["expression"].get<std::string>();
        if (j.contains("constants")) {
            if (!j["constants"].is_object()) throw InputError("\"constants\" must be an object");
            for (const auto& [name, m] : j["constants"].items()) constants[name] = io::matrix_from_json(m);
        }
    }
    return parse(expr, d, constants);
}

void write_json(const std::string& path, const json& j) { io::write_text_file(path, j.dump(2) + "\n"); }

struct MapView {
    MatrixLinearMap A;
    CentrePoint Y;
};

MapView pencil_map(const io::AnyRealization& r) {
    if (r.is_fm) return {r.fm.A, r.fm.Y};
    return {r.desc.A, r.desc.Y};
}

int cmd_realize(const JobConfig& cfg, std::ostream& out) {
    const CentrePoint y = read_centre(cfg.inputs.at(1));
    const Expression e = read_expression(cfg.inputs.at(0), y.d());
    const FMRealization r = realize_expression(e, y);
    const double cb = cb_row_norm_bound(r.A);
    json rep = report("realize");
    rep["state_dim"] = r.state_dim();
    rep["cb_row_norm_bound"] = cb;
    rep["domain_radius_lower_bound"] = cb > 0.0 ? json(1.0 / cb) : json(nullptr);
    if (cfg.out.empty()) {
        rep["realization"] = io::to_json(r);
    } else {
        write_json(cfg.out, io::to_json(r));
        rep["output"] = cfg.out;
    }
    emit(cfg, rep, out);
    return 0;
}

int cmd_eval(const JobConfig& cfg, std::ostream& out) {
    const auto r = io::realization_from_json(io::read_json_file(cfg.inputs.at(0)));
    const MatrixTuple x = io::tuple_from_json(io::read_json_file(cfg.inputs.at(1)));
    const MapView v = pencil_map(r);
    if (x.base_n() != v.Y.base_n() || x.d() != v.Y.d()) throw InputError("point does not match the realization's centre size");
    const auto chk = check_invertible(pencil(v.A, v.Y, x));
    json rep = report("eval");
    rep["in_domain"] = chk.invertible;
    rep["sigma_min"] = finite_or_null(chk.sigma_min);
    if (!chk.invertible) {
        rep["value"] = nullptr;
        emit(cfg, rep, out);
        return 3;
    }
    rep["value"] = io::to_json(r.is_fm ? transfer_fm(r.fm, x) : transfer(r.desc, x));
    emit(cfg, rep, out);
    return 0;
}

int cmd_minimize(const JobConfig& cfg, std::ostream& out) {
    const DescriptorRealization r = io::realization_from_json(io::read_json_file(cfg.inputs.at(0))).descriptor();
    const DescriptorRealization m = kalman_minimize(r);
    const std::size_t L = cfg.depth >= 0 ? static_cast<std::size_t>(cfg.depth) : 2 * r.state_dim();
    const auto eq = equivalence_report(r, m, L, cfg.tol >= 0 ? cfg.tol : 1e-10);
    json rep = report("minimize");
    rep["state_dim_before"] = r.state_dim();
    rep["state_dim_after"] = m.state_dim();
    rep["minimal"] = is_minimal(m);
    rep["moment_depth"] = L;
    rep["moment_residual"] = eq.deviation;
    rep["moment_check"] = eq.exhaustive ? "exhaustive" : "reachable-space";
    if (cfg.out.empty()) {
        rep["realization"] = io::to_json(m);
    } else {
        write_json(cfg.out, io::to_json(m));
        rep["output"] = cfg.out;
    }
    emit(cfg, rep, out);
    return 0;
}

int cmd_certify(const JobConfig& cfg, std::ostream& out) {
    const DescriptorRealization r = io::realization_from_json(io::read_json_file(cfg.inputs.at(0))).descriptor();
    const double tol = cfg.tol >= 0 ? cfg.tol : 1e-9;
    const DescriptorRealization m = kalman_minimize(r);
    const double res = llac_residual(m);
    const std::size_t L = cfg.depth >= 0 ? static_cast<std::size_t>(cfg.depth) : 2 * r.state_dim();
    const auto eq = equivalence_report(r, m, L, 1e-10);
    json rep = report("certify");
    rep["minimal"] = is_minimal(r);
    rep["minimal_state_dim"] = m.state_dim();
    rep["lac_residual"] = res;
    rep["tolerance"] = tol;
    rep["is_nc_function"] = res <= tol;
    rep["moment_depth"] = L;
    rep["moment_residual"] = eq.deviation;
    emit(cfg, rep, out);
    return 0;
}

int cmd_translate(const JobConfig& cfg, std::ostream& out) {
    const DescriptorRealization r = io::realization_from_json(io::read_json_file(cfg.inputs.at(0))).descriptor();
    const MatrixTuple x = io::tuple_from_json(io::read_json_file(cfg.inputs.at(1)));
    const DescriptorRealization t = translate(r, x);
    json rep = report("translate");
    rep["state_dim_before"] = r.state_dim();
    rep["state_dim_after"] = t.state_dim();
    rep["centre_size"] = t.n();
    rep["minimal_before"] = is_minimal(r);
    rep["minimal_after"] = is_minimal(t);
    if (cfg.out.empty()) {
        rep["realization"] = io::to_json(t);
    } else {
        write_json(cfg.out, io::to_json(t));
        rep["output"] = cfg.out;
    }
    emit(cfg, rep, out);
    return 0;
}

int cmd_equiv(const JobConfig& cfg, std::ostream& out) {
    const DescriptorRealization r1 = io::realization_from_json(io::read_json_file(cfg.inputs.at(0))).descriptor();
    const DescriptorRealization r2 = io::realization_from_json(io::read_json_file(cfg.inputs.at(1))).descriptor();
    const bool heuristic = cfg.depth < 0;
    const std::size_t L = heuristic ? r1.state_dim() + r2.state_dim() : static_cast<std::size_t>(cfg.depth);
    const auto eq = equivalence_report(r1, r2, L, cfg.tol >= 0 ? cfg.tol : 1e-8);
    json rep = report("equiv");
    rep["equivalent"] = eq.equivalent;
    rep["depth"] = L;
    rep["depth_is_heuristic"] = heuristic;
    rep["deviation"] = eq.deviation;
    rep["method"] = eq.exhaustive ? "exhaustive" : "reachable-space";
    emit(cfg, rep, out);
    return 0;
}

int cmd_fock(const JobConfig& cfg, std::ostream& out) {
    const TruncatedFockVector h = fock_from_json(io::read_json_file(cfg.inputs.at(0)));
    const CentrePoint y = read_centre(cfg.inputs.at(1));
    const DescriptorRealization r = fock_realization_dilated(h, y, cfg.radius);
    json rep = report("fock");
    rep["fock_dim"] = h.coeffs.size();
    rep["state_dim"] = r.state_dim();
    rep["radius"] = cfg.radius;
    if (cfg.out.empty()) {
        rep["realization"] = io::to_json(r);
    } else {
        write_json(cfg.out, io::to_json(r));
        rep["output"] = cfg.out;
    }
    emit(cfg, rep, out);
    return 0;
}

std::string fmt(double v) {
    if (!std::isfinite(v)) return v > 0 ? "inf" : "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int cmd_domain_sample(const JobConfig& cfg, std::ostream& out) {
    const auto r = io::realization_from_json(io::read_json_file(cfg.inputs.at(0)));
    const MapView v = pencil_map(r);
    const std::size_t m = cfg.level, n = v.Y.base_n(), d = v.Y.d(), s = m * n;
    if (m == 0) throw InputError("--level must be at least 1");
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_real_distribution<double> frac(0.0, 2.0);

    std::ostringstream csv;
    csv << "index,kind,in_domain,sigma_min,pole_order\n";
    const MatrixTuple base = ampliate(v.Y, m);
    auto row = [&](std::size_t i, const char* kind, const MatrixTuple& x) {
        const ComplexMatrix t = ampliated_apply(v.A, x - base);
        const auto chk = check_invertible(ComplexMatrix::identity(t.rows()) - t);
        csv << i << ',' << kind << ',' << (chk.invertible ? "true" : "false") << ',' << fmt(chk.sigma_min) << ','
            << pole_order_of(t) << '\n';
    };
    row(0, "centre", base);
    for (std::size_t i = 1; i <= cfg.samples; ++i) {
        std::vector<ComplexMatrix> h(d, ComplexMatrix(s, s));
        for (auto& c : h)
            for (std::size_t k = 0; k < c.size(); ++k) c.data()[k] = Complex(unif(rng), unif(rng));
        const MatrixTuple dir(n, m, h);
        const double u = frac(rng);
        const ComplexMatrix t = ampliated_apply(v.A, dir);
        Complex lambda = 0.0;
        for (const Complex& e : eigenvalues(t))
            if (std::abs(e) > std::abs(lambda)) lambda = e;
        const bool have_pole = std::abs(lambda) > 1e-12 * std::max(1.0, t.max_abs());
        if (i % 2 == 1 && have_pole) {
            row(i, "boundary", base + dir.scaled(1.0 / lambda));
        } else {
            const double scale = have_pole ? u / std::abs(lambda) : u;
            row(i, "random", base + dir.scaled(scale));
        }
    }
    if (cfg.out.empty()) {
        out << csv.str();
    } else {
        io::write_text_file(cfg.out, csv.str());
        json rep = report("domain-sample");
        rep["rows"] = cfg.samples + 1;
        rep["output"] = cfg.out;
        emit(cfg, rep, out);
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ncreal: matrix-centre realizations of NC rational functions"};
    app.require_subcommand(1);
    JobConfig cfg;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--tol", cfg.tol, "tolerance override");
        sub->add_option("--depth", cfg.depth, "moment depth");
        sub->add_option("--samples", cfg.samples, "sample count");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("-o,--out", cfg.out, "output file");
    };
    struct Spec {
        const char* name;
        const char* help;
        std::vector<const char*> files;
        int (*run)(const JobConfig&, std::ostream&);
    };
    const std::vector<Spec> specs = {
        {"realize", "build an FM realization of an expression about a centre", {"expr_file", "centre_file"}, cmd_realize},
        {"eval", "evaluate the transfer function at a point", {"real_file", "point_file"}, cmd_eval},
        {"minimize", "Kalman minimization", {"real_file"}, cmd_minimize},
        {"certify", "minimality and LAC certificate", {"real_file"}, cmd_certify},
        {"translate", "recentre a realization at a point of its domain", {"real_file", "point_file"}, cmd_translate},
        {"equiv", "analytic equivalence of two realizations", {"real_file_1", "real_file_2"}, cmd_equiv},
        {"fock", "realization of a truncated Fock vector", {"fock_file", "centre_file"}, cmd_fock},
        {"domain-sample", "CSV of sampled points with domain flags", {"real_file"}, cmd_domain_sample},
    };
    std::vector<std::string> slots(2);
    std::vector<std::pair<CLI::App*, const Spec*>> subs;
    for (const auto& sp : specs) {
        CLI::App* sub = app.add_subcommand(sp.name, sp.help);
        common(sub);
        for (std::size_t i = 0; i < sp.files.size(); ++i) sub->add_option(sp.files[i], slots[i], sp.files[i])->required();
        if (std::string(sp.name) == "domain-sample") sub->add_option("--level", cfg.level, "level m of sampled points");
        if (std::string(sp.name) == "fock") sub->add_option("--radius", cfg.radius, "dilation parameter r > 0");
        subs.emplace_back(sub, &sp);
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::Success&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        for (const auto& [sub, sp] : subs) {
            if (!sub->parsed()) continue;
            cfg.command = sp->name;
            cfg.inputs.assign(slots.begin(), slots.begin() + static_cast<long>(sp->files.size()));
            log::debug("running " + cfg.command);
            return sp->run(cfg, out);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace ncreal
