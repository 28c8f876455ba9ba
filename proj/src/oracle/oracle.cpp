#include "telecert/oracle/oracle.hpp"

#include "telecert/algebra/linalg.hpp"
#include "telecert/errors.hpp"
#include "telecert/kernels/modular.hpp"

#include <algorithm>
#include <cstdint>

namespace telecert {

namespace {

void compositions(std::size_t nvars, int total, std::vector<int>& cur, std::size_t i,
                  std::vector<std::vector<int>>& out)
{
    if (i + 1 == nvars) {
        cur[i] = total;
        out.push_back(cur);
        return;
    }
    for (int e = total; e >= 0; --e) {
        cur[i] = e;
        compositions(nvars, total - e, cur, i + 1, out);
    }
}

std::optional<Rational> param_of(const Tower& t, const std::optional<Rational>& v)
{
    return t.has_param() ? v : std::nullopt;
}

Rational as_rational(const Constant& c)
{
    if (!c.is_constant())
        throw UnsupportedShape("oracle values must be rational numbers; specialize the parameter");
    return c.is_zero() ? Rational(0) : c.constant_value();
}

// Values of each sequence for n = from..to (exact, after specialization).
std::vector<std::vector<Rational>> sample_values(const Tower& t, const std::vector<SeqSpec>& seqs,
                                                 const std::optional<Rational>& param, long from, long to)
{
    EvContext ctx(t, param_of(t, param));
    std::vector<std::vector<Rational>> vals;
    for (const SeqSpec& s : seqs) {
        if (from < s.start)
            throw StartTooSmall("sample range starts at " + std::to_string(from) + " but the sequence starts at " +
                                std::to_string(s.start));
        std::vector<Constant> v = materialize(ctx, s, to);
        std::vector<Rational> row;
        row.reserve(static_cast<std::size_t>(to - from + 1));
        for (long n = from; n <= to; ++n)
            row.push_back(as_rational(v[static_cast<std::size_t>(n - s.start)]));
        vals.push_back(std::move(row));
    }
    return vals;
}

Rational monomial_value(const OracleMonomial& m, long n, const std::vector<Rational>& x)
{
    Rational r = 1;
    for (int j = 0; j < m.n_power; ++j)
        r *= n;
    for (std::size_t i = 0; i < m.x.size(); ++i)
        for (int e = 0; e < m.x[i]; ++e)
            r *= x[i];
    return r;
}

bool residue(const Rational& v, std::uint32_t p, std::uint32_t& out)
{
    unsigned long d = mpz_fdiv_ui(v.get_den_mpz_t(), p);
    if (d == 0)
        return false;
    unsigned long num = mpz_fdiv_ui(v.get_num_mpz_t(), p);
    out = static_cast<std::uint32_t>(num * std::uint64_t(kernels::inv_mod(static_cast<std::uint32_t>(d), p)) % p);
    return true;
}

// Rank of the sample matrix modulo p, or nullopt if some value has a denominator divisible by p.
std::optional<std::size_t> modular_rank(const std::vector<OracleMonomial>& cols,
                                        const std::vector<std::vector<Rational>>& vals, long from, std::uint32_t p)
{
    std::size_t nrows = vals.empty() ? 0 : vals[0].size();
    std::size_t nseq = vals.size();
    std::vector<std::uint32_t> mat(nrows * cols.size());
    std::vector<std::uint32_t> x(nseq);
    for (std::size_t r = 0; r < nrows; ++r) {
        for (std::size_t i = 0; i < nseq; ++i)
            if (!residue(vals[i][r], p, x[i]))
                return std::nullopt;
        std::uint64_t n = static_cast<std::uint64_t>(from + static_cast<long>(r)) % p;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            std::uint64_t v = 1;
            for (int j = 0; j < cols[c].n_power; ++j)
                v = v * n % p;
            for (std::size_t i = 0; i < nseq; ++i)
                for (int e = 0; e < cols[c].x[i]; ++e)
                    v = v * x[i] % p;
            mat[r * cols.size() + c] = static_cast<std::uint32_t>(v);
        }
    }
    return kernels::rank_mod(std::move(mat), nrows, cols.size(), p);
}

OracleRelation normalized(const std::vector<OracleMonomial>& cols, const std::vector<Rational>& v,
                          const std::optional<Rational>& param)
{
    Integer l = 1;
    for (const Rational& c : v)
        if (c != 0)
            l = lcm(l, Integer(c.get_den()));
    Integer g = 0;
    for (const Rational& c : v)
        if (c != 0)
            g = gcd(g, Integer(c.get_num() * (l / c.get_den())));
    OracleRelation rel;
    rel.param_value = param;
    int sign = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0)
            continue;
        if (sign == 0)
            sign = v[i] > 0 ? 1 : -1;
        Rational c(Integer(v[i].get_num() * (l / v[i].get_den()) / g) * sign);
        rel.monomials.push_back(cols[i]);
        rel.coeffs.push_back(c);
    }
    return rel;
}

std::vector<OracleRelation> exact_nullspace(const std::vector<OracleMonomial>& cols,
                                            const std::vector<std::vector<Rational>>& vals, long from,
                                            const std::optional<Rational>& param)
{
    std::size_t nrows = vals.empty() ? 0 : vals[0].size();
    Matrix<Rational> m(nrows, cols.size());
    std::vector<Rational> x(vals.size());
    for (std::size_t r = 0; r < nrows; ++r) {
        for (std::size_t i = 0; i < vals.size(); ++i)
            x[i] = vals[i][r];
        for (std::size_t c = 0; c < cols.size(); ++c)
            m(r, c) = monomial_value(cols[c], from + static_cast<long>(r), x);
    }
    std::vector<OracleRelation> out;
    for (const auto& v : nullspace(std::move(m)))
        out.push_back(normalized(cols, v, param));
    return out;
}

std::string power_text(const std::string& base, int e)
{
    return e == 1 ? base : base + "^" + std::to_string(e);
}

}  // namespace

std::vector<OracleMonomial> oracle_columns(std::size_t nseq, int degree, int coeff_degree)
{
    std::vector<std::vector<int>> xs;
    for (int d = 0; d <= degree; ++d) {
        if (nseq == 0) {
            if (d == 0)
                xs.emplace_back();
            continue;
        }
        std::vector<int> cur(nseq, 0);
        compositions(nseq, d, cur, 0, xs);
    }
    std::vector<OracleMonomial> cols;
    for (int j = 0; j <= coeff_degree; ++j)
        for (const auto& e : xs)
            cols.push_back(OracleMonomial{j, e});
    return cols;
}

std::vector<Rational> default_param_values(const Tower& t)
{
    if (!t.has_param())
        return {};
    if (t.base() == BaseKind::QPower)
        return {Rational(2), Rational(3), Rational(5)};
    return {make_rational(7, 3), make_rational(11, 5), make_rational(13, 7)};
}

std::vector<OracleRelation> sample_nullspace(const OracleQuery& q, const std::optional<Rational>& param)
{
    auto cols = oracle_columns(q.sequences.size(), q.degree, q.coeff_degree);
    auto vals = sample_values(q.tower, q.sequences, param, q.from, q.to);
    return exact_nullspace(cols, vals, q.from, param_of(q.tower, param));
}

std::vector<OracleRelation> oracle_search(const OracleQuery& q)
{
    if (q.degree < 0 || q.coeff_degree < 0 || q.to < q.from)
        throw InsufficientSamples("empty sample range or negative degree bound");
    auto cols = oracle_columns(q.sequences.size(), q.degree, q.coeff_degree);
    long rows = q.to - q.from + 1;
    long need = static_cast<long>(cols.size()) + q.margin;
    if (rows < need)
        throw InsufficientSamples(std::to_string(cols.size()) + " monomials need at least " + std::to_string(need) +
                                  " samples, range has " + std::to_string(rows));

    std::vector<std::optional<Rational>> params;
    if (q.tower.has_param()) {
        auto vs = q.param_values.empty() ? default_param_values(q.tower) : q.param_values;
        for (const auto& v : vs)
            params.emplace_back(v);
    } else {
        params.emplace_back(std::nullopt);
    }

    std::vector<OracleRelation> found;
    for (std::size_t pi = 0; pi < params.size(); ++pi) {
        auto vals = sample_values(q.tower, q.sequences, params[pi], q.from, q.to);
        // Full column rank modulo a prime proves the exact nullspace trivial.
        bool full = false;
        for (std::uint32_t p : kernels::oracle_primes()) {
            auto r = modular_rank(cols, vals, q.from, p);
            if (r && *r == cols.size()) {
                full = true;
                break;
            }
            if (r)
                break;
        }
        if (full)
            return {};
        std::vector<OracleRelation> here;
        for (auto& rel : exact_nullspace(cols, vals, q.from, params[pi])) {
            if (check_candidate(rel, q.tower, q.sequences, q.to + 1, q.to + q.extra).pass)
                here.push_back(std::move(rel));
        }
        // A relation over K(m)(n) survives every generic specialization.
        if (here.empty())
            return {};
        if (pi == 0)
            found = std::move(here);
    }
    return found;
}

CheckResult check_candidate(const OracleRelation& rel, const Tower& t, const std::vector<SeqSpec>& seqs, long from,
                            long to)
{
    CheckResult res;
    if (to < from)
        return res;
    auto vals = sample_values(t, seqs, rel.param_value, from, to);
    std::vector<Rational> x(seqs.size());
    for (long n = from; n <= to; ++n) {
        std::size_t r = static_cast<std::size_t>(n - from);
        for (std::size_t i = 0; i < seqs.size(); ++i)
            x[i] = vals[i][r];
        Rational s = 0;
        for (std::size_t c = 0; c < rel.monomials.size(); ++c)
            s += rel.coeffs[c] * monomial_value(rel.monomials[c], n, x);
        ++res.checked;
        if (s != 0) {
            res.pass = false;
            res.first_failure = n;
            return res;
        }
    }
    return res;
}

std::string format_monomial(const OracleMonomial& m, const std::vector<std::string>& names)
{
    std::vector<std::string> parts;
    if (m.n_power > 0)
        parts.push_back(power_text("n", m.n_power));
    for (std::size_t i = 0; i < m.x.size(); ++i)
        if (m.x[i] > 0)
            parts.push_back(power_text(i < names.size() ? names[i] : "x" + std::to_string(i + 1), m.x[i]));
    if (parts.empty())
        return "1";
    std::string s = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i)
        s += "*" + parts[i];
    return s;
}

std::string format_relation(const OracleRelation& rel, const std::vector<std::string>& names)
{
    std::string s;
    for (std::size_t i = 0; i < rel.monomials.size(); ++i) {
        Rational c = rel.coeffs[i];
        std::string mono = format_monomial(rel.monomials[i], names);
        bool neg = c < 0;
        if (neg)
            c = -c;
        std::string body = mono == "1" ? c.get_str() : (c == 1 ? mono : c.get_str() + "*" + mono);
        if (s.empty())
            s = neg ? "-" + body : body;
        else
            s += (neg ? " - " : " + ") + body;
    }
    return s.empty() ? "0" : s;
}

}  // namespace telecert
