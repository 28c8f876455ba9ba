#include "telecert/frontend/cli.hpp"

#include "telecert/certify/certificate.hpp"
#include "telecert/certify/json_io.hpp"
#include "telecert/embed/embed.hpp"
#include "telecert/errors.hpp"
#include "telecert/frontend/compile.hpp"
#include "telecert/oracle/oracle.hpp"
#include "telecert/tower/admission.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace telecert {

namespace {

struct Args {
    std::string terms;
    std::string summand;
    std::string expr;
    std::string var = "k";
    std::string params;
    std::string format = "json";
    std::string seed_c;
    std::string spec;
    long start_r = -1;
    long max_order = 4;
    bool diagonal = false;
    bool no_scan = false;
    long from = -1;
    long to = -1;
    int degree = 2;
    int coeff_degree = 2;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ParamArg {
    std::string name;
    std::optional<Rational> value;
};

// "m" or "m=7/3".
ParamArg parse_params(const std::string& s)
{
    ParamArg p;
    if (s.empty())
        return p;
    auto eq = s.find('=');
    p.name = s.substr(0, eq);
    if (p.name.find(',') != std::string::npos)
        throw UsageError("--params: at most one parameter is supported");
    if (eq != std::string::npos) {
        try {
            Rational v(s.substr(eq + 1));
            v.canonicalize();
            p.value = v;
        } catch (const std::invalid_argument&) {
            throw UsageError("--params: '" + s.substr(eq + 1) + "' is not a rational number");
        }
    }
    return p;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void dump(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

// Tower and summands from --spec or --terms.
struct Problem {
    Tower tower;
    std::vector<TowerElem> f;
    std::vector<std::string> names;
    std::vector<std::string> notes;
};

Problem load_problem(const Args& a)
{
    Problem p;
    if (!a.spec.empty()) {
        TowerSpecDoc d = load_tower_spec(read_file(a.spec));
        p.tower = d.tower;
        p.f = d.summands;
        p.names = d.summand_text;
    } else {
        if (a.terms.empty())
            throw UsageError("--terms or --spec is required");
        auto exprs = parse_expr_list(a.terms);
        Compiled c = compile_to_tower(exprs, CompileOptions{a.var, parse_params(a.params).name});
        p.tower = c.tower;
        p.f = c.f;
        p.notes = c.notes;
        for (const auto& e : exprs)
            p.names.push_back(print_expr(e));
    }
    if (a.seed_c.empty() && a.start_r < 0)
        return p;
    // Re-seed the last generator.
    if (p.tower.size() == 0)
        throw UsageError("--seed-c/--start-r need a tower with at least one generator");
    const Tower& t = p.tower;
    Tower prefix(t.base(), t.var(), t.param());
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        prefix = prefix.extended(t.generator(i));
    const Generator& last = t.generator(t.size() - 1);
    Seed seed = last.seed;
    if (a.start_r >= 0)
        seed.r = a.start_r;
    if (!a.seed_c.empty()) {
        TowerElem c = lower_in_tower(parse_expr(a.seed_c), Tower(t.base(), t.var(), t.param()));
        if (!c.is_constant())
            throw UsageError("--seed-c must be a constant");
        seed.c = c.is_zero() ? Constant(0) : c.base_value().constant_value();
    }
    Admission adm = last.kind == GenKind::Pi ? admit_pi(prefix, last.name, last.alpha, seed)
                                             : admit_sigma(prefix, last.name, last.beta, seed);
    p.tower = admitted(adm);
    return p;
}

ScanOptions scan_options(const Args& a)
{
    ScanOptions s;
    s.enabled = !a.no_scan;
    s.degree = a.degree;
    s.coeff_degree = a.coeff_degree;
    s.from = a.from;
    s.to = a.to;
    return s;
}

int run_sums(const Args& a, bool scan, std::ostream& out, std::ostream& err)
{
    Problem p = load_problem(a);
    for (const auto& n : p.notes)
        err << "note: " << n << "\n";
    CertifyOptions opts;
    opts.scan = scan_options(a);
    opts.scan.enabled = scan && !a.no_scan;
    Certificate c = certify_sums(p.tower, p.f, opts);
    if (a.format == "text")
        out << certificate_to_text(c);
    else
        dump(out, certificate_to_json(c));
    return 0;
}

int run_zeilberger(const Args& a, std::ostream& out, std::ostream& err)
{
    if (a.summand.empty())
        throw UsageError("--summand is required");
    Expr s = parse_expr(a.summand);
    CompileOptions co{a.var, parse_params(a.params).name};
    co.param = detect_param({s}, co);
    if (co.param.empty())
        throw UsageError("the summand needs a parameter (e.g. m)");
    HyperRatios r = hypergeometric_ratios(s, co);
    CertifyOptions opts;
    opts.scan = scan_options(a);
    ZeilbergerCertificate z = certify_zeilberger(r.alpha_k, r.alpha_m, a.max_order, opts, a.diagonal);
    if (z.recurrence.verdict == Verdict::Relation) {
        auto term = [&](const Rational& m0, long k) {
            Constant v = eval_direct(s, k, co, m0);
            return v.is_zero() ? Rational(0) : v.constant_value();
        };
        try {
            verify_recurrence_direct(z.recurrence, term, {Rational(7), Rational(11), Rational(13)}, 40);
        } catch (const NotCompilable& e) {
            err << "note: direct check skipped: " << e.what() << "\n";
        }
    }
    if (a.format == "text")
        out << certificate_to_text(z);
    else
        dump(out, certificate_to_json(z));
    return 0;
}

int run_products(const Args& a, std::ostream& out)
{
    if (a.terms.empty())
        throw UsageError("--terms is required");
    auto exprs = parse_expr_list(a.terms);
    CompileOptions co{a.var, parse_params(a.params).name};
    co.param = detect_param(exprs, co);
    Tower base(BaseKind::Rational, a.var, co.param);
    std::vector<BaseFun> f;
    for (const auto& e : exprs) {
        TowerElem x = lower_in_tower(e, base);
        if (!x.is_base())
            throw NotCompilable("product factors must be rational functions of " + a.var);
        f.push_back(x.base_value());
    }
    CertifyOptions opts;
    opts.scan = scan_options(a);
    Certificate c = certify_products(f, opts);
    if (a.format == "text")
        out << certificate_to_text(c);
    else
        dump(out, certificate_to_json(c));
    return 0;
}

int run_eval(const Args& a, std::ostream& out)
{
    std::string text = !a.expr.empty() ? a.expr : a.terms;
    if (text.empty())
        throw UsageError("--expr is required");
    ParamArg pa = parse_params(a.params);
    Expr e = parse_expr(text);
    Compiled c = compile_to_tower({e}, CompileOptions{a.var, pa.name});
    if (c.tower.has_param() && !pa.value && c.tower.base() == BaseKind::QPower)
        throw UsageError("eval on the q-base needs --params q=<value>");
    long lo = std::max(o_fn(c.tower, c.f[0]), 0L);
    for (std::size_t i = 0; i < c.tower.size(); ++i)
        lo = std::max(lo, c.tower.generator(i).seed.r - 1);
    long from = a.from >= 0 ? a.from : std::max(lo, 1L);
    long to = a.to >= 0 ? a.to : from + 9;
    if (from < lo)
        throw StartTooSmall("values are defined from " + a.var + " = " + std::to_string(lo));
    if (to < from)
        throw UsageError("--to must not be below --from");
    EvContext ctx(c.tower, pa.value);
    std::vector<std::string> vals;
    for (long n = from; n <= to; ++n)
        vals.push_back(c.tower.format(ctx.ev(c.f[0], n)));
    if (a.format == "text") {
        for (std::size_t i = 0; i < vals.size(); ++i)
            out << (i ? ", " : "") << vals[i];
        out << "\n";
    } else {
        Json j;
        j["expr"] = print_expr(e);
        j["range"] = Json::array({from, to});
        j["values"] = vals;
        dump(out, j);
    }
    return 0;
}

int run_oracle(const Args& a, std::ostream& out)
{
    Problem p = load_problem(a);
    OracleQuery q;
    q.tower = p.tower;
    long start = 0;
    for (const auto& f : p.f) {
        SeqSpec s{SeqKind::Term, f, 0};
        s.start = minimal_start(p.tower, s);
        start = std::max(start, s.start);
        q.sequences.push_back(s);
    }
    for (auto& s : q.sequences)
        s.start = start;
    q.degree = a.degree;
    q.coeff_degree = a.coeff_degree;
    q.from = a.from >= 0 ? a.from : start;
    std::size_t cols = oracle_columns(q.sequences.size(), q.degree, q.coeff_degree).size();
    q.to = a.to >= 0 ? a.to : q.from + static_cast<long>(cols) + q.margin - 1;
    auto rels = oracle_search(q);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < p.f.size(); ++i)
        names.push_back("x" + std::to_string(i + 1));
    if (a.format == "text") {
        for (std::size_t i = 0; i < names.size(); ++i)
            out << names[i] << " = " << p.names[i] << "\n";
        out << rels.size() << " relation(s) for n in [" << q.from << ", " << q.to << "]\n";
        for (const auto& r : rels)
            out << "  " << format_relation(r, names) << " = 0\n";
        return 0;
    }
    Json j;
    j["sequences"] = p.names;
    j["degree"] = q.degree;
    j["coeff_degree"] = q.coeff_degree;
    j["range"] = Json::array({q.from, q.to});
    Json rj = Json::array();
    for (const auto& r : rels) {
        Json m = Json::object();
        for (std::size_t i = 0; i < r.monomials.size(); ++i)
            m[format_monomial(r.monomials[i], names)] = r.coeffs[i].get_str();
        rj.push_back(m);
    }
    j["relations"] = rj;
    dump(out, j);
    return 0;
}

int run_tower_check(const Args& a, std::ostream& out)
{
    Problem p = load_problem(a);
    if (a.format == "text") {
        out << "tower admitted with " << p.tower.size() << " generator(s)\n";
        for (const auto& g : p.tower.generators())
            out << "  " << g.name << ": " << (g.kind == GenKind::Pi ? "pi, alpha = " + p.tower.format(g.alpha)
                                                                     : "sigma, beta = " + p.tower.format(g.beta))
                << ", seed r = " << g.seed.r << ", c = " << p.tower.format(g.seed.c) << "\n";
        for (std::size_t i = 0; i < p.f.size(); ++i)
            out << "  f" << i + 1 << " = " << p.tower.format(p.f[i]) << "\n";
        return 0;
    }
    Json j;
    j["admitted"] = true;
    j["tower"] = tower_to_json(p.tower);
    Json fs = Json::array();
    for (const auto& f : p.f)
        fs.push_back(p.tower.format(f));
    j["terms"] = fs;
    j["notes"] = p.notes;
    dump(out, j);
    return 0;
}

int report(std::ostream& out, std::ostream& err, const std::string& format, const std::string& code,
           const std::string& msg, int exit_code)
{
    err << "error: " << code << ": " << msg << "\n";
    if (format == "json")
        dump(out, Json{{"error", code}, {"message", msg}});
    return exit_code;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Telescoping and algebraic independence certificates for nested sums and products"};
    app.require_subcommand(1);
    Args a;

    auto common = [&](CLI::App* s) {
        s->add_option("--var", a.var, "Summation variable")->capture_default_str();
        s->add_option("--params", a.params, "Parameter symbol, or name=value for eval");
        s->add_option("--format", a.format, "Output format")
            ->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
    };
    auto towered = [&](CLI::App* s) {
        s->add_option("--terms", a.terms, "Comma-separated expressions");
        s->add_option("--spec", a.spec, "Tower-spec JSON file");
        s->add_option("--seed-c", a.seed_c, "Seed value c of the last generator");
        s->add_option("--start-r", a.start_r, "Seed start r of the last generator");
    };
    auto scanned = [&](CLI::App* s) {
        s->add_option("--degree", a.degree, "Oracle total degree in the sequences")->capture_default_str();
        s->add_option("--coeff-degree", a.coeff_degree, "Oracle degree in n")->capture_default_str();
        s->add_option("--from", a.from, "First index of the scan");
        s->add_option("--to", a.to, "Last index of the scan");
    };

    auto* tel = app.add_subcommand("telescope", "Parameterized telescoping without the oracle scan");
    common(tel);
    towered(tel);
    auto* ind = app.add_subcommand("independent", "Relation or independence certificate with oracle scan");
    common(ind);
    towered(ind);
    scanned(ind);
    ind->add_flag("--no-scan", a.no_scan, "Skip the oracle scan");
    auto* zb = app.add_subcommand("zeilberger", "Minimal-order recurrence for a definite hypergeometric sum");
    common(zb);
    scanned(zb);
    zb->add_option("--summand", a.summand, "Hypergeometric summand in k and the parameter")->required();
    zb->add_option("--max-order", a.max_order, "Largest recurrence order to try")->capture_default_str();
    zb->add_flag("--diagonal", a.diagonal, "Ask for the diagonal n = m (refused)");
    zb->add_flag("--no-scan", a.no_scan, "Skip the oracle scan");
    auto* pr = app.add_subcommand("products", "Multiplicative relations among products of rational factors");
    common(pr);
    pr->add_option("--terms", a.terms, "Comma-separated rational factors")->required();
    auto* ev = app.add_subcommand("eval", "Values of an expression through its tower embedding");
    common(ev);
    ev->add_option("--expr", a.expr, "Expression")->required();
    ev->add_option("--from", a.from, "First index");
    ev->add_option("--to", a.to, "Last index");
    auto* orc = app.add_subcommand("oracle", "Polynomial relations among term sequences by exact nullspace");
    common(orc);
    towered(orc);
    scanned(orc);
    auto* tc = app.add_subcommand("tower-check", "Compile or load a tower and run admission");
    common(tc);
    towered(tc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        return report(out, err, a.format, "UsageError", e.what(), 1);
    }

    try {
        if (tel->parsed())
            return run_sums(a, false, out, err);
        if (ind->parsed())
            return run_sums(a, true, out, err);
        if (zb->parsed())
            return run_zeilberger(a, out, err);
        if (pr->parsed())
            return run_products(a, out);
        if (ev->parsed())
            return run_eval(a, out);
        if (orc->parsed())
            return run_oracle(a, out);
        return run_tower_check(a, out);
    } catch (const UsageError& e) {
        return report(out, err, a.format, "UsageError", e.what(), 1);
    } catch (const SyntaxError& e) {
        return report(out, err, a.format, e.code(), e.what(), 1);
    } catch (const StartTooSmall& e) {
        return report(out, err, a.format, e.code(), e.what(), 1);
    } catch (const InsufficientSamples& e) {
        return report(out, err, a.format, e.code(), e.what(), 1);
    } catch (const VerificationFailed& e) {
        return report(out, err, a.format, e.code(), e.what(), 3);
    } catch (const Error& e) {
        return report(out, err, a.format, e.code(), e.what(), 2);
    } catch (const std::invalid_argument& e) {
        return report(out, err, a.format, "UsageError", e.what(), 1);
    }
}

}  // namespace telecert
