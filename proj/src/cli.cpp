#include "ffapprox/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ffapprox/cfrac.hpp"
#include "ffapprox/corpus.hpp"
#include "ffapprox/exponents.hpp"
#include "ffapprox/parse.hpp"
#include "ffapprox/reduce.hpp"
#include "ffapprox/roots.hpp"
#include "ffapprox/verify.hpp"

namespace ffa {

namespace {

using nlohmann::json;

struct Payload {
    json report;
    std::vector<std::vector<std::string>> table;  // first row is the header
    std::vector<std::string> witnesses;
    int exit_code = 0;
};

json rat_json(const Rational& r) { return {{"num", r.num()}, {"den", r.den()}}; }
json opt_rat(const std::optional<Rational>& r) { return r ? rat_json(*r) : json(nullptr); }

json field_json(const Field& F) {
    json j{{"p", F.p()}, {"f", F.f()}};
    if (F.f() > 1) j["modulus"] = F.modulus();
    return j;
}

std::string series_preview(const LaurentSeries& x, std::size_t terms = 12) { return x.to_string(terms); }

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::string csv_text(const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
        out += "\n";
    }
    return out;
}

json report_json(const VerificationReport& r) {
    json j{{"check", r.check},        {"instances", r.instances}, {"passed", r.passed},
           {"quarantined", r.quarantined}, {"gated", r.gated},   {"ok", r.ok()},
           {"measured", r.measured},  {"notes", r.notes}};
    const std::size_t keep = std::min<std::size_t>(r.counterexamples.size(), 20);
    j["counterexamples"] = std::vector<std::string>(r.counterexamples.begin(),
                                                    r.counterexamples.begin() + static_cast<std::ptrdiff_t>(keep));
    return j;
}

json estimate_json(const ExponentEstimate& e) {
    json levels = json::array();
    for (const auto& l : e.per_level) levels.push_back({{"h", l.h}, {"value", rat_json(l.value)}});
    json j{{"kind", kind_name(e.kind)},
           {"window",
            {{"n", e.window.n}, {"h_min", e.window.h_min}, {"h_max", e.window.h_max},
             {"filter", filter_name(e.window.filter)}}},
           {"value", opt_rat(e.value)},
           {"witness", e.value ? json(e.witness_string()) : json(nullptr)},
           {"witness_h", e.witness_h},
           {"witness_nu", e.witness_nu},
           {"per_level", levels},
           {"skipped", e.skipped}};
    return j;
}


struct Flags {
    int p = 2;
    int f = 1;
    std::string modulus;
    std::string series = "mahler";
    std::string poly;
    int n = 1;
    int hmin = 1;
    int hmax = 4;
    int dmax = 10;
    std::int64_t prec = 256;
    std::uint64_t seed = 0;
    std::string filter = "all";
    int workers = 1;
    std::string format = "json";
    std::string out;
};

struct Context {
    RunConfig cfg;
    Flags flags;

    EstimatorOptions options() const { return {cfg.budget, cfg.enum_budget, cfg.workers}; }
    SeriesSpec spec() const { return parse_series_spec(cfg.field, flags.series); }
    EnumerationWindow window() const { return {flags.n, flags.hmin, flags.hmax, parse_filter(flags.filter)}; }
    json base(const std::string& kind) const { return {{"kind", kind}, {"field", field_json(*cfg.field)}}; }
};

Payload cmd_exponent(const Context& c, const std::string& which) {
    const SeriesSpec spec = c.spec();
    const LaurentSeries xi = spec.build(c.flags.prec);
    EnumerationWindow w = c.window();
    const EstimatorOptions opt = c.options();
    ExponentEstimate e;
    if (which == "w")
        e = estimate_wn(xi, w, opt);
    else if (which == "wstar")
        e = estimate_wn_star(xi, w, opt);
    else if (which == "what")
        e = estimate_what(xi, w, w.filter == Filter::Separable, opt);
    else if (which == "lambda")
        e = estimate_lambda(xi, w, opt);
    else
        e = estimate_lambda_hat(xi, w, opt);
    Payload out;
    out.report = c.base(kind_name(e.kind));
    out.report["series"] = spec.format();
    const json ej = estimate_json(e);
    for (const auto& [k, v] : ej.items())
        if (k != "kind") out.report[k] = v;
    out.table.push_back({"h", "num", "den"});
    for (const auto& l : e.per_level)
        out.table.push_back({std::to_string(l.h), std::to_string(l.value.num()), std::to_string(l.value.den())});
    if (e.value) out.witnesses.push_back(e.witness_string());
    return out;
}

Payload cmd_cf(const Context& c) {
    const SeriesSpec spec = c.spec();
    const LaurentSeries xi = spec.build(c.flags.prec);
    const CFExpansion e = cf_expand(xi, c.flags.dmax, c.cfg.budget);
    const std::vector<bool> exact = cf_exactness_check(xi, e, c.cfg.budget);
    Payload out;
    out.report = c.base("cf");
    out.report["series"] = spec.format();
    json qs = json::array(), conv = json::array();
    out.table.push_back({"k", "quotient", "p_k", "q_k", "exact"});
    for (std::size_t k = 0; k < e.quotients.size(); ++k) {
        qs.push_back(e.quotients[k].to_string());
        const auto& [pk, qk] = e.convergents[k];
        conv.push_back({{"p", pk.to_string()}, {"q", qk.to_string()}});
        const std::string ex = k < exact.size() ? (exact[k] ? "true" : "false") : "";
        out.table.push_back({std::to_string(k), e.quotients[k].to_string(), pk.to_string(), qk.to_string(), ex});
        out.witnesses.push_back("(" + pk.to_string() + ")/(" + qk.to_string() + ")");
    }
    out.report["quotients"] = qs;
    out.report["convergents"] = conv;
    out.report["finite"] = e.finite;
    out.report["exactness"] = exact;
    const W1Estimate w1 = cf_w1_estimate(e);
    out.report["w1"] = {{"value", w1.k >= 0 ? rat_json(w1.value) : json(nullptr)},
                        {"k", w1.k},
                        {"witness", w1.k >= 0 ? json(w1.witness.to_string()) : json(nullptr)},
                        {"degenerate", w1.degenerate}};
    for (bool b : exact)
        if (!b) out.exit_code = 2;
    return out;
}

XPoly require_poly(const Context& c) {
    if (c.flags.poly.empty()) throw Error(ErrorKind::InvalidArgument, "--poly is required");
    return parse_xpoly(c.cfg.field, c.flags.poly);
}

Payload cmd_roots(const Context& c, bool with_series) {
    const XPoly P = require_poly(c);
    const NewtonPolygon np = newton_polygon(P);
    const std::vector<LaurentSeries> roots = base_roots(P, c.flags.prec);
    Payload out;
    out.report = c.base("roots");
    out.report["poly"] = P.to_string();
    json segs = json::array();
    for (const auto& s : np.segments) segs.push_back({{"slope", rat_json(s.slope)}, {"length", s.length()}});
    out.report["newton_segments"] = segs;
    json rs = json::array();
    out.table.push_back({"root", "valuation", "series"});
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const std::string v = roots[i].is_certified_zero() ? "inf" : std::to_string(roots[i].start());
        rs.push_back({{"valuation", v}, {"series", series_preview(roots[i], 16)}});
        out.table.push_back({std::to_string(i), v, series_preview(roots[i], 16)});
        out.witnesses.push_back(series_preview(roots[i], 32));
    }
    out.report["roots"] = rs;
    if (with_series && !roots.empty()) {
        const SeriesSpec spec = c.spec();
        const ClosestRoot cr = closest_root(P, spec.build(c.flags.prec), c.cfg.budget);
        out.report["series"] = spec.format();
        out.report["closest"] = {{"nu", cr.nu}, {"alpha", series_preview(cr.alpha, 16)}};
    }
    return out;
}

Payload cmd_reduce(const Context& c, const std::string& which) {
    const XPoly P = require_poly(c);
    const SeriesSpec spec = c.spec();
    const LaurentSeries xi = spec.build(c.flags.prec);
    Payload out;
    out.report = c.base("reduce_" + which);
    out.report["series"] = spec.format();
    out.report["poly"] = P.to_string();
    if (which == "cartop") {
        const SeparableReduction r = xp_separable_reduce(P, xi, c.cfg.budget);
        json steps = json::array();
        out.table.push_back({"step", "j", "s", "intermediate", "nu_g", "certificate"});
        for (std::size_t i = 0; i < r.trace.steps.size(); ++i) {
            const auto& s = r.trace.steps[i];
            steps.push_back({{"j", s.j}, {"s", s.s}, {"intermediate", s.intermediate.to_string()}, {"v", s.v},
                             {"nu_g", s.nu_g}, {"certificate", s.certificate}});
            out.table.push_back({std::to_string(i), std::to_string(s.j), std::to_string(s.s),
                                 s.intermediate.to_string(), std::to_string(s.nu_g), s.certificate ? "true" : "false"});
        }
        out.report["Q"] = r.Q.to_string();
        out.report["steps"] = steps;
        out.report["nu_p"] = r.nu_p;
        out.report["nu_q"] = r.nu_q;
        out.report["w"] = rat_json(r.w);
        out.report["p_reduced"] = r.p_reduced;
        out.report["in_condition"] = r.in_condition;
        out.report["bound_holds"] = r.bound_holds;
        out.report["certified"] = r.trace.certified();
        out.witnesses.push_back(r.Q.to_string());
        if (r.in_condition && !(r.bound_holds && r.p_reduced && r.trace.certified())) out.exit_code = 2;
    } else {
        const PrReduction r = xp_pr_reduce(P, xi, c.cfg.budget);
        out.report["r"] = r.r;
        out.report["P0"] = r.P0.to_string();
        out.report["nu_p"] = r.nu_p;
        out.report["nu_p0"] = r.nu_p0;
        out.report["conditions"] = {{"separable_factor", r.separable_factor}, {"degree_bound", r.degree_bound},
                                    {"value_bound", r.value_bound},           {"height_bound", r.height_bound},
                                    {"r_bound", r.r_bound}};
        out.table.push_back({"r", "P0", "nu_p", "nu_p0", "all"});
        out.table.push_back({std::to_string(r.r), r.P0.to_string(), std::to_string(r.nu_p), std::to_string(r.nu_p0),
                             r.all() ? "true" : "false"});
        out.witnesses.push_back(r.P0.to_string());
        if (!r.all()) out.exit_code = 2;
    }
    return out;
}

Payload cmd_verify(const Context& c, const std::string& suite) {
    std::vector<NamedSeries> named;
    if (suite == "inequalities" || suite == "frobenius" || suite == "all")
        for (const auto& spec : corpus(c.cfg.field)) named.push_back({spec.format(), spec.build(c.flags.prec)});
    const int h = c.flags.hmax;
    std::vector<VerificationReport> reps;
    auto take = [&](std::vector<VerificationReport> r) { reps.insert(reps.end(), r.begin(), r.end()); };
    if (suite == "identities" || suite == "all") take(verify_identity_suite(c.cfg.seed));
    if (suite == "reductions" || suite == "all") take(verify_reduction_suite(c.cfg.seed));
    if (suite == "inequalities" || suite == "all")
        take(verify_inequality_suite(named, {{1, 1, h, Filter::All}, {2, 1, h, Filter::All}}, c.cfg.seed, {},
                                     c.options()));
    if (suite == "frobenius" || suite == "all")
        take(verify_frobenius_suite(named, {{1, 1, std::min(h, 3), Filter::All}}, c.cfg.seed, {}, c.options()));
    Payload out;
    out.report = c.base("verify");
    out.report["suite"] = suite;
    out.report["seed"] = c.cfg.seed;
    json arr = json::array();
    out.table.push_back({"check", "instances", "passed", "quarantined", "gated", "ok"});
    for (const auto& r : reps) {
        arr.push_back(report_json(r));
        out.table.push_back({r.check, std::to_string(r.instances), std::to_string(r.passed),
                             std::to_string(r.quarantined), r.gated ? "true" : "false", r.ok() ? "true" : "false"});
        for (const auto& ce : r.counterexamples) out.witnesses.push_back(r.check + ": " + ce);
    }
    out.report["reports"] = arr;
    const bool ok = all_gated_ok(reps);
    out.report["ok"] = ok;
    out.exit_code = ok ? 0 : 2;
    return out;
}

Payload cmd_classify(const Context& c) {
    const SeriesSpec spec = c.spec();
    const ClassifyReport r = classify_report(spec.build(c.flags.prec), c.flags.n, c.flags.hmax, c.options());
    Payload out;
    out.report = c.base("classify");
    out.report["series"] = spec.format();
    json rows = json::array();
    out.table.push_back({"n", "h", "w", "w_hat"});
    for (const auto& row : r.rows) {
        rows.push_back({{"n", row.n}, {"h", row.h}, {"w", opt_rat(row.w)}, {"w_hat", opt_rat(row.what)}});
        out.table.push_back({std::to_string(row.n), std::to_string(row.h), row.w ? row.w->to_string() : "",
                             row.what ? row.what->to_string() : ""});
    }
    out.report["rows"] = rows;
    out.report["suggestion"] = r.suggestion;
    out.report["disclaimer"] = r.disclaimer;
    out.witnesses.push_back(r.suggestion);
    return out;
}

Payload cmd_corpus(const Context& c) {
    Payload out;
    out.report = c.base("corpus");
    json arr = json::array();
    out.table.push_back({"spec", "preview"});
    for (const auto& spec : corpus(c.cfg.field)) {
        const std::string pv = series_preview(spec.build(64), 10);
        arr.push_back({{"spec", spec.format()}, {"preview", pv}});
        out.table.push_back({spec.format(), pv});
        out.witnesses.push_back(spec.format());
    }
    out.report["series"] = arr;
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
    f << text;
}

void emit(const Payload& p, const RunConfig& cfg, std::ostream& out) {
    const std::string js = p.report.dump(2) + "\n";
    const std::string csv = csv_text(p.table);
    std::string wit;
    for (const auto& w : p.witnesses) wit += w + "\n";
    out << (cfg.format == "csv" ? csv : js);
    if (!cfg.out.empty()) {
        std::filesystem::create_directories(cfg.out);
        write_file(std::filesystem::path(cfg.out) / "report.json", js);
        write_file(std::filesystem::path(cfg.out) / "tables.csv", csv);
        write_file(std::filesystem::path(cfg.out) / "witnesses.txt", wit);
    }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Diophantine approximation exponents over F_q((1/T))", "ffapprox"};
    app.require_subcommand(1);
    Flags fl;
    app.add_option("--p", fl.p, "characteristic")->check(CLI::PositiveNumber);
    app.add_option("--f", fl.f, "extension degree, q = p^f <= 256")->check(CLI::PositiveNumber);
    app.add_option("--modulus", fl.modulus, "irreducible modulus in g, e.g. g^2+g+1");
    app.add_option("--series", fl.series, "series spec (see `corpus list`)");
    app.add_option("--poly", fl.poly, "polynomial in X over F_q[T] (roots, reduce)");
    app.add_option("--n", fl.n, "X-degree bound");
    app.add_option("--hmin", fl.hmin, "smallest height level");
    app.add_option("--hmax", fl.hmax, "largest height level");
    app.add_option("--dmax", fl.dmax, "number of partial quotients (cf)")->check(CLI::NonNegativeNumber);
    app.add_option("--prec", fl.prec, "initial precision of series and roots")->check(CLI::PositiveNumber);
    app.add_option("--seed", fl.seed, "seed of the verification generators");
    app.add_option("--filter", fl.filter, "all | separable | irreducible");
    app.add_option("--workers", fl.workers, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--format", fl.format, "stdout format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", fl.out, "directory for report.json, tables.csv, witnesses.txt");

    std::string kind, suite, rkind, what;
    auto* exp = app.add_subcommand("exponent", "estimate an exponent on a height window")->fallthrough();
    exp->add_option("kind", kind)->required()->check(CLI::IsMember({"w", "wstar", "what", "lambda", "lambdahat"}));
    auto* cf = app.add_subcommand("cf", "continued fraction expansion")->fallthrough();
    auto* roots = app.add_subcommand("roots", "base-field roots and Newton polygon of --poly")->fallthrough();
    auto* red = app.add_subcommand("reduce", "separable (cartop) or p-reduction (pr) of --poly at --series")
                    ->fallthrough();
    red->add_option("kind", rkind)->required()->check(CLI::IsMember({"cartop", "pr"}));
    auto* ver = app.add_subcommand("verify", "run verification suites")->fallthrough();
    ver->add_option("suite", suite)
        ->required()
        ->check(CLI::IsMember({"identities", "reductions", "inequalities", "frobenius", "all"}));
    auto* cls = app.add_subcommand("classify", "exponent table with a regime suggestion")->fallthrough();
    auto* cor = app.add_subcommand("corpus", "named series")->fallthrough();
    cor->add_option("action", what)->required()->check(CLI::IsMember({"list"}));

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        Context c;
        c.flags = fl;
        c.cfg.field = Field::make(fl.p, fl.f, fl.modulus.empty() ? std::vector<int>{} : parse_modulus(fl.modulus, fl.p));
        c.cfg.workers = fl.workers;
        c.cfg.seed = fl.seed;
        c.cfg.format = fl.format;
        c.cfg.out = fl.out;
        Payload p;
        if (*exp)
            p = cmd_exponent(c, kind);
        else if (*cf)
            p = cmd_cf(c);
        else if (*roots)
            p = cmd_roots(c, app.get_option("--series")->count() > 0);
        else if (*red)
            p = cmd_reduce(c, rkind);
        else if (*ver)
            p = cmd_verify(c, suite);
        else if (*cls)
            p = cmd_classify(c);
        else
            p = cmd_corpus(c);
        emit(p, c.cfg, out);
        return p.exit_code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_command(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_command(args, std::cout, std::cerr);
}

}  // namespace ffa
