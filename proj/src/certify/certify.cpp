#include "telecert/certify/certificate.hpp"

#include "telecert/errors.hpp"
#include "telecert/oracle/oracle.hpp"
#include "telecert/tower/admission.hpp"

#include <algorithm>

namespace telecert {

namespace {

const char* kScanLimitation =
    "the oracle scan only searches relations with coefficients polynomial in n; "
    "the symbolic verdict covers coefficients from the whole tower";

bool constant_uses_param(const Constant& c) { return !c.is_constant(); }

bool uses_param(const BaseFun& f)
{
    for (const auto& c : f.num().coeffs())
        if (constant_uses_param(c))
            return true;
    for (const auto& c : f.den().coeffs())
        if (constant_uses_param(c))
            return true;
    return false;
}

std::string completeness_note(const std::string& cls)
{
    if (cls == "R")
        return "class R: rational solutions are complete through the universal denominator and degree bound";
    if (cls == "H")
        return "class H: g = v*t reduces to a first-order rational equation solved completely";
    if (cls == "D")
        return "class D: g is polynomial in the Sigma generators with bounded degree; coefficients solved completely";
    if (cls == "HxD")
        return "class HxD: twisted first-order equations over the Sigma polynomial ring, degree-bounded and complete";
    if (cls == "multi")
        return "several Pi monomials: each block decouples under the shift and is solved completely";
    if (cls == "Pi")
        return "multiplicative: exponent constraints from shiftless orbits and contents form a complete integer system";
    return "";
}

Constant at_param(const Constant& c, const std::optional<Rational>& v)
{
    return v ? Constant(specialize(c, *v)) : c;
}

std::vector<std::optional<Rational>> check_points(const Tower& t)
{
    std::vector<std::optional<Rational>> pts;
    if (t.has_param())
        for (const auto& v : verification_params(t))
            pts.emplace_back(v);
    else
        pts.emplace_back(std::nullopt);
    return pts;
}

// First n in [from, to] where the relation fails at one specialization, or -1.
long first_failure(const Certificate& cert, const std::optional<Rational>& v, long from, long to)
{
    EvContext ctx(cert.tower, v);
    std::vector<Constant> c;
    for (const auto& ci : cert.c)
        c.push_back(at_param(ci, v));
    Constant g_r = ctx.ev(cert.g, from);
    if (cert.kind == "products") {
        if (g_r.is_zero())
            return from;
        Constant acc(1);
        for (long n = from; n <= to; ++n) {
            for (std::size_t i = 0; i < cert.f.size(); ++i) {
                long e = c[i].is_zero() ? 0 : c[i].constant_value().get_num().get_si();
                if (e != 0)
                    acc *= pow(ctx.ev(cert.f[i], n), e);
            }
            if (ctx.ev(cert.g, n + 1) != acc * g_r)
                return n;
        }
        return -1;
    }
    Constant acc(0);
    for (long n = from; n <= to; ++n) {
        for (std::size_t i = 0; i < cert.f.size(); ++i)
            if (!c[i].is_zero())
                acc += c[i] * ctx.ev(cert.f[i], n);
        if (ctx.ev(cert.g, n + 1) - g_r != acc)
            return n;
    }
    return -1;
}

long sums_start(const Tower& t, const std::vector<TowerElem>& f)
{
    long r = 0;
    for (const auto& fi : f)
        r = std::max(r, minimal_start(t, SeqSpec{SeqKind::Sum, fi, 0}));
    return r;
}

void finish_relation(Certificate& cert, const CertifyOptions& opts)
{
    VerifyReport rep = verify_relation(cert, opts.verify_to);
    cert.verified_range = std::make_pair(rep.from, rep.to);
    cert.verified_params = rep.params;
}

std::vector<SeqSpec> sum_specs(const std::vector<TowerElem>& f, long start)
{
    std::vector<SeqSpec> s;
    for (const auto& fi : f)
        s.push_back(SeqSpec{SeqKind::Sum, fi, start});
    return s;
}

std::vector<std::string> indexed_names(const std::string& stem, std::size_t n)
{
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i)
        names.push_back(stem + std::to_string(i));
    return names;
}

std::string shifted_m(long i) { return i == 0 ? "m" : "m+" + std::to_string(i); }

}  // namespace

std::string verdict_name(Verdict v) { return v == Verdict::Relation ? "Relation" : "Independent"; }

std::vector<Rational> verification_params(const Tower& t) { return default_param_values(t); }

void run_scan(Certificate& cert, const std::vector<SeqSpec>& seqs, const std::vector<std::string>& names,
              const ScanOptions& opts)
{
    if (!opts.enabled)
        return;
    OracleQuery q;
    q.tower = cert.tower;
    q.sequences = seqs;
    q.degree = opts.degree;
    q.coeff_degree = opts.coeff_degree;
    q.param_values = opts.param_values;
    long from = 0;
    for (const auto& s : seqs)
        from = std::max(from, s.start);
    q.from = opts.from >= 0 ? opts.from : from;
    long cols = static_cast<long>(oracle_columns(seqs.size(), q.degree, q.coeff_degree).size());
    q.to = opts.to >= 0 ? opts.to : q.from + cols + q.margin - 1;
    auto rels = oracle_search(q);
    OracleScanRecord rec;
    rec.degree = q.degree;
    rec.coeff_degree = q.coeff_degree;
    rec.from = q.from;
    rec.to = q.to;
    rec.relations_found = static_cast<long>(rels.size());
    rec.sequences = names;
    if (cert.tower.has_param())
        rec.param_values = q.param_values.empty() ? default_param_values(cert.tower) : q.param_values;
    cert.scan = rec;
    if (!rels.empty())
        throw VerificationFailed("oracle scan found " + std::to_string(rels.size()) +
                                 " relation(s) contradicting the independence verdict, e.g. " +
                                 format_relation(rels[0], names));
}

VerifyReport check_relation(const Certificate& cert, long N)
{
    if (cert.verdict != Verdict::Relation)
        throw std::invalid_argument("verify_relation needs a Relation certificate");
    VerifyReport rep;
    rep.from = cert.start;
    rep.to = N >= 0 ? N : std::max(200L, cert.start + 100);
    for (const auto& v : check_points(cert.tower)) {
        if (v)
            rep.params.push_back(*v);
        long bad = first_failure(cert, v, rep.from, rep.to);
        if (bad >= 0) {
            rep.pass = false;
            rep.first_failure = bad;
            return rep;
        }
    }
    return rep;
}

VerifyReport verify_relation(const Certificate& cert, long N)
{
    VerifyReport rep = check_relation(cert, N);
    if (!rep.pass) {
        std::string where = "relation fails at n = " + std::to_string(rep.first_failure);
        if (!rep.params.empty())
            where += " (" + cert.tower.param() + " = " + rep.params.back().get_str() + ")";
        throw VerificationFailed(where);
    }
    return rep;
}

Certificate certify_sums(const Tower& t, const std::vector<TowerElem>& f, const CertifyOptions& opts)
{
    Certificate cert;
    cert.kind = "sums";
    cert.tower = t;
    cert.f = f;
    cert.problem_class = classify_problem(t, f);
    cert.start = sums_start(t, f);
    cert.completeness = completeness_note(cert.problem_class);
    if (auto s = param_telescope(t, f)) {
        cert.verdict = Verdict::Relation;
        cert.c = s->c;
        cert.g = s->g;
        cert.start = std::max(cert.start, o_fn(t, s->g));
        finish_relation(cert, opts);
        return cert;
    }
    cert.verdict = Verdict::Independent;
    cert.scan_limitation = kScanLimitation;
    // The generators the summands use join the sums in the independent set.
    std::vector<bool> used(t.size(), false);
    for (const auto& fi : f)
        for (const auto& [m, c] : fi.terms())
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] != 0)
                    used[i] = true;
    std::vector<SeqSpec> seqs;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!used[i])
            continue;
        SeqSpec s{SeqKind::Term, t.gen(i), 0};
        cert.start = std::max(cert.start, minimal_start(t, s));
        seqs.push_back(s);
        names.push_back(t.generator(i).name + "(n)");
    }
    for (auto& s : seqs)
        s.start = cert.start;
    auto sums = sum_specs(f, cert.start);
    seqs.insert(seqs.end(), sums.begin(), sums.end());
    std::string sum_text = "S_i(n) = sum_{k=" + std::to_string(cert.start) + "}^{n} f_i(k)";
    if (names.empty()) {
        cert.statement =
            "the sums " + sum_text + " are algebraically independent over the image of the tower in the ring of sequences";
    } else {
        std::string list;
        for (const auto& n : names)
            list += n + ", ";
        cert.statement = "the sequences " + list + "S_1(n), ..., S_" + std::to_string(f.size()) + "(n), with " +
                         sum_text + ", are algebraically independent over the image of the base field in the ring of "
                         "sequences";
    }
    auto snames = indexed_names("S", f.size());
    names.insert(names.end(), snames.begin(), snames.end());
    run_scan(cert, seqs, names, opts.scan);
    return cert;
}

Certificate certify_products(const std::vector<BaseFun>& f, const CertifyOptions& opts)
{
    bool param = std::any_of(f.begin(), f.end(), uses_param);
    Certificate cert;
    cert.kind = "products";
    cert.problem_class = "Pi";
    cert.tower = param ? Tower(BaseKind::Rational, "k", "m") : Tower();
    cert.completeness = completeness_note("Pi");
    long start = 0;
    for (const auto& fi : f) {
        if (fi.is_zero())
            throw std::invalid_argument("product factors must be nonzero");
        TowerElem e(fi);
        cert.f.push_back(e);
        start = std::max({start, o_fn(cert.tower, e), z_fn(cert.tower, e)});
    }
    cert.start = start;
    if (auto s = solve_multiplicative(f)) {
        cert.verdict = Verdict::Relation;
        for (long ci : s->c)
            cert.c.emplace_back(Rational(ci));
        cert.g = TowerElem(s->g);
        cert.start = std::max({cert.start, o_fn(cert.tower, cert.g), z_fn(cert.tower, cert.g)});
        finish_relation(cert, opts);
        return cert;
    }
    cert.verdict = Verdict::Independent;
    cert.statement = "the products P_i(n) = prod_{k=" + std::to_string(cert.start) +
                     "}^{n} f_i(k) are algebraically independent over the image of the base field in the ring of "
                     "sequences";
    cert.scan_limitation = kScanLimitation;
    std::vector<SeqSpec> seqs;
    for (const auto& e : cert.f)
        seqs.push_back(SeqSpec{SeqKind::Product, e, cert.start});
    run_scan(cert, seqs, indexed_names("P", f.size()), opts.scan);
    return cert;
}

ZeilbergerCertificate certify_zeilberger(const BaseFun& alpha_k, const BaseFun& alpha_m, long max_order,
                                         const CertifyOptions& opts, bool diagonal)
{
    if (diagonal)
        throw DiagonalSpecialization(
            "definite sums with the upper bound tied to the parameter (n = m) are not covered: the "
            "independence statement is about indefinite sums over K(m)(n), and on the diagonal the sums may "
            "satisfy relations that the tower cannot see");
    ZeilbergerResult z = zeilberger(alpha_k, alpha_m, max_order);
    ZeilbergerCertificate out;
    Certificate& rec = out.recurrence;
    rec.kind = "zeilberger";
    rec.tower = z.tower;
    rec.f = z.f;
    rec.max_order = max_order;
    rec.problem_class = classify_problem(z.tower, z.f);
    rec.completeness = completeness_note(rec.problem_class) + "; orders tried ascending, so the order is minimal";
    rec.start = sums_start(z.tower, z.f);

    // Independence of the term and the sums that failed to telescope.
    auto independence = [&](std::size_t nsums) {
        Certificate ind;
        ind.kind = "zeilberger";
        ind.verdict = Verdict::Independent;
        ind.tower = z.tower;
        ind.f.assign(z.f.begin(), z.f.begin() + static_cast<long>(nsums));
        ind.max_order = static_cast<long>(nsums) - 1;
        ind.problem_class = classify_problem(z.tower, ind.f);
        ind.completeness = rec.completeness;
        ind.start = sums_start(z.tower, ind.f);
        std::vector<SeqSpec> seqs;
        std::vector<std::string> names;
        std::string list;
        if (!z.rational_term) {
            // The term itself is transcendental over K(m)(n) only when it is not rational.
            seqs.push_back(SeqSpec{SeqKind::Term, z.f[0], ind.start});
            names.push_back("f(m,n)");
        }
        for (std::size_t i = 0; i < nsums; ++i) {
            seqs.push_back(SeqSpec{SeqKind::Sum, z.f[i], ind.start});
            names.push_back("S(" + shifted_m(static_cast<long>(i)) + ",n)");
        }
        for (const auto& n : names)
            list += (list.empty() ? "" : ", ") + n;
        ind.statement = list + ", with S(m+i,n) = sum_{k=" + std::to_string(ind.start) +
                        "}^{n} f(m+i,k), are algebraically independent over the image of the tower";
        ind.scan_limitation = kScanLimitation;
        run_scan(ind, seqs, names, opts.scan);
        return ind;
    };

    if (!z.found) {
        out.recurrence = independence(z.f.size());
        out.recurrence.completeness += "; no recurrence up to order " + std::to_string(max_order);
        return out;
    }
    rec.verdict = Verdict::Relation;
    rec.order = z.order;
    rec.c = z.c;
    rec.g = z.g;
    rec.start = std::max(rec.start, o_fn(z.tower, z.g));
    finish_relation(rec, opts);
    if (z.order >= 1)
        out.independence = independence(static_cast<std::size_t>(z.order));
    return out;
}

void verify_recurrence_direct(Certificate& rec, const std::function<Rational(const Rational&, long)>& term,
                              const std::vector<Rational>& params, long n_max)
{
    if (rec.verdict != Verdict::Relation || rec.kind != "zeilberger")
        throw std::invalid_argument("direct verification needs a zeilberger recurrence");
    EvContext gen(rec.tower);
    const TowerElem& kernel = rec.f[0];
    long r = rec.start;
    for (const Rational& m0 : params) {
        std::string at = " at " + rec.tower.param() + " = " + m0.get_str();
        std::vector<Rational> c;
        for (const auto& ci : rec.c)
            c.push_back(specialize(ci, m0));
        // term(m0, k) = C * ev(kernel, k) at m0 for the normalization C of the kernel.
        std::optional<Rational> norm;
        for (long k = r; k <= r + 60 && !norm; ++k) {
            Rational direct = term(m0, k);
            if (direct == 0)
                continue;
            try {
                Rational e = specialize(gen.ev(kernel, k), m0);
                if (e != 0)
                    norm = direct / e;
            } catch (const SpecializationPole&) {
            }
        }
        if (!norm)
            throw VerificationFailed("no index normalizes the summand" + at);
        Rational g_r = specialize(gen.ev(rec.g, r), m0);
        Rational acc = 0;
        for (long n = r; n <= n_max; ++n) {
            for (std::size_t i = 0; i < c.size(); ++i)
                if (c[i] != 0)
                    acc += c[i] * term(m0 + static_cast<long>(i), n);
            Rational rhs = *norm * (specialize(gen.ev(rec.g, n + 1), m0) - g_r);
            if (acc != rhs)
                throw VerificationFailed("recurrence fails against direct values at n = " + std::to_string(n) + at);
        }
        rec.numeric_checks.push_back(NumericCheck{m0, n_max});
    }
}

}  // namespace telecert
