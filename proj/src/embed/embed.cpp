#include "telecert/embed/embed.hpp"

#include "telecert/algebra/shift.hpp"
#include "telecert/errors.hpp"

#include <algorithm>

namespace telecert {

namespace {

// 1 + the largest n >= 0 with p(n) = 0 (rational base) or p(q^n) = 0 (q-base).
long poly_z(const Tower& t, const BasePoly& p)
{
    if (p.is_zero())
        throw ZeroPolynomial("z-function of the zero polynomial");
    if (p.degree() == 0)
        return 0;
    if (t.base() == BaseKind::Rational) {
        auto roots = nonneg_integer_roots(p);
        return roots.empty() ? 0 : roots.back() + 1;
    }
    // Beyond the coefficient degree spread the top term dominates in q-degree.
    Poly<Rational> den(Rational(1));
    for (const auto& c : p.coeffs())
        den = lcm(den, c.den());
    long spread = 0;
    for (const auto& c : p.coeffs())
        spread = std::max<long>(spread, (c * Constant(den)).num().degree());
    long z = 0;
    Constant q = Constant::variable();
    for (long n = 0; n <= spread + 1; ++n) {
        Constant x = pow(q, n);
        Constant acc;
        for (int i = p.degree(); i >= 0; --i)
            acc = acc * x + p[static_cast<std::size_t>(i)];
        if (acc.is_zero())
            z = n + 1;
    }
    return z;
}

long base_l(const Tower& t, const BaseFun& f) { return f.is_polynomial() ? 0 : poly_z(t, f.den()); }

long base_z(const Tower& t, const BaseFun& f)
{
    if (f.is_zero())
        throw ZeroPolynomial("z-function of zero");
    return std::max(poly_z(t, f.num()), poly_z(t, f.den()));
}

// Cauchy-type bound: every real root of p has absolute value below the result.
Integer real_root_bound(const Poly<Rational>& p)
{
    Rational m = 0;
    for (int i = 0; i < p.degree(); ++i) {
        Rational r = abs(p[static_cast<std::size_t>(i)] / p.lc());
        if (r > m)
            m = r;
    }
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), m.get_num_mpz_t(), m.get_den_mpz_t());
    return c + 1;
}

bool parameter_free(const BaseFun& f)
{
    for (const auto& c : f.num().coeffs())
        if (!c.is_constant())
            return false;
    for (const auto& c : f.den().coeffs())
        if (!c.is_constant())
            return false;
    return true;
}

Poly<Rational> to_q(const BasePoly& p)
{
    std::vector<Rational> v;
    for (const auto& c : p.coeffs())
        v.push_back(c.constant_value());
    return Poly<Rational>(std::move(v));
}

// Smallest N with f(n) > 0 for all integers n >= N (f over Q, rational base).
std::optional<long> base_positive_from(const BaseFun& f)
{
    if (f.is_zero() || !parameter_free(f))
        return std::nullopt;
    Poly<Rational> num = to_q(f.num());
    Poly<Rational> den = to_q(f.den());
    if (sgn(num.lc()) * sgn(den.lc()) <= 0)
        return std::nullopt;
    Integer b = std::max(num.degree() > 0 ? real_root_bound(num) : Integer(0),
                         den.degree() > 0 ? real_root_bound(den) : Integer(0));
    if (!b.fits_slong_p())
        return std::nullopt;
    long n = std::max(0L, b.get_si());
    while (n > 0) {
        Rational x(n - 1);
        Rational d = den(x);
        if (sgn(d) == 0 || sgn(num(x)) * sgn(d) <= 0)
            break;
        --n;
    }
    return n;
}

std::optional<long> gen_positive_from(const Tower& t, std::size_t i);

std::optional<long> positive_from_impl(const Tower& t, const TowerElem& f)
{
    if (f.is_zero() || t.base() != BaseKind::Rational)
        return std::nullopt;
    long n = 0;
    for (const auto& [m, c] : f.terms()) {
        auto pc = base_positive_from(c);
        if (!pc)
            return std::nullopt;
        n = std::max(n, *pc);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0)
                continue;
            auto pg = gen_positive_from(t, i);
            if (!pg)
                return std::nullopt;
            n = std::max(n, *pg);
            if (m[i] < 0)
                n = std::max(n, t.generator(i).seed.r);
        }
    }
    return n;
}

std::optional<long> gen_positive_from(const Tower& t, std::size_t i)
{
    const Generator& g = t.generator(i);
    const TowerElem& step = g.kind == GenKind::Sigma ? g.beta : g.alpha;
    auto ps = positive_from_impl(t, step);
    if (!ps)
        return std::nullopt;
    // Past n0 the sequence is monotone (sums) or keeps its sign (products).
    long n0 = std::max(g.seed.r, *ps + 1);
    EvContext ctx(t);
    Constant v = ctx.ev_gen(i, n0);
    if (!v.is_constant() || sgn(v.constant_value()) <= 0)
        return std::nullopt;
    if (g.seed.r - 1 >= *ps && g.seed.c.is_constant() && sgn(g.seed.c.constant_value()) > 0)
        return 0;
    return n0;
}

}  // namespace

Rational specialize(const Constant& c, const Rational& v)
{
    Rational d = c.den()(v);
    if (sgn(d) == 0)
        throw SpecializationPole("parameter value " + v.get_str() + " is a pole");
    return c.num()(v) / d;
}

long o_fn(const Tower& t, const TowerElem& f)
{
    long l = 0;
    for (const auto& [m, c] : f.terms()) {
        l = std::max(l, base_l(t, c));
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0)
                l = std::max(l, t.generator(i).seed.r);
    }
    return l;
}

std::optional<long> positive_from(const Tower& t, const TowerElem& f) { return positive_from_impl(t, f); }

long z_fn(const Tower& t, const TowerElem& f)
{
    if (f.is_zero())
        throw ZeroPolynomial("z-function of zero");
    if (f.is_monomial()) {
        const auto& [m, c] = *f.terms().begin();
        long z = base_z(t, c);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0)
                continue;
            const Generator& g = t.generator(i);
            if (g.kind == GenKind::Pi) {
                z = std::max(z, g.seed.r);
                continue;
            }
            auto p = gen_positive_from(t, i);
            if (!p)
                p = positive_from_impl(t, -TowerElem::generator(i));
            if (!p)
                throw ZUndecidable("cannot bound the zeros of Sigma generator " + g.name);
            z = std::max({z, *p, g.seed.r});
        }
        return z;
    }
    if (auto p = positive_from_impl(t, f))
        return std::max(*p, o_fn(t, f));
    if (auto p = positive_from_impl(t, -f))
        return std::max(*p, o_fn(t, f));
    throw ZUndecidable("no sign argument bounds the zeros of " + t.format(f));
}

EvContext::EvContext(Tower t, std::optional<Rational> param_value)
    : t_(std::move(t)), spec_(std::move(param_value)), memo_(t_.size())
{
    if (spec_ && !t_.has_param())
        throw std::invalid_argument("parameter value given for a tower without parameter");
}

Constant EvContext::value(const Constant& c) const { return spec_ ? Constant(specialize(c, *spec_)) : c; }

Constant EvContext::point(long n) const
{
    if (t_.base() == BaseKind::Rational)
        return Constant(Rational(n));
    if (spec_)
        return Constant(pow(*spec_, n));
    return pow(Constant::variable(), n);
}

Constant EvContext::eval_poly(const BasePoly& p, const Constant& x) const
{
    Constant acc;
    for (int i = p.degree(); i >= 0; --i)
        acc = acc * x + value(p[static_cast<std::size_t>(i)]);
    return acc;
}

Constant EvContext::ev_base(const BaseFun& f, long n) const
{
    if (f.is_zero())
        return Constant();
    if (!f.is_polynomial() && n < poly_z(t_, f.den()))
        return Constant();
    Constant x = point(n);
    Constant d = eval_poly(f.den(), x);
    if (d.is_zero())
        throw SpecializationPole("denominator vanishes at n = " + std::to_string(n) + " after specialization");
    return eval_poly(f.num(), x) / d;
}

Constant EvContext::ev_gen(std::size_t i, long n)
{
    const Generator& g = t_.generator(i);
    auto& memo = memo_[i];
    if (g.seed.r < 1)
        throw StartTooSmall("generator " + g.name + " needs a seed start r >= 1");
    while (static_cast<long>(memo.size()) <= n) {
        long j = static_cast<long>(memo.size());
        if (j < g.seed.r)
            memo.push_back(value(g.seed.c));
        else if (g.kind == GenKind::Sigma)
            memo.push_back(memo.back() + ev(g.beta, j - 1));
        else
            memo.push_back(memo.back() * ev(g.alpha, j - 1));
    }
    return memo[static_cast<std::size_t>(n)];
}

const std::vector<long>& EvContext::term_thresholds(const TowerElem& f)
{
    for (const auto& [e, th] : thresholds_)
        if (e == f)
            return th;
    std::vector<long> th;
    for (const auto& [m, c] : f.terms()) {
        long z = base_l(t_, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] < 0)
                z = std::max(z, t_.generator(i).seed.r);
        th.push_back(z);
    }
    if (thresholds_.size() >= 64)
        thresholds_.erase(thresholds_.begin());
    thresholds_.emplace_back(f, std::move(th));
    return thresholds_.back().second;
}

Constant EvContext::ev(const TowerElem& f, long n)
{
    if (n < 0)
        throw std::invalid_argument("ev at a negative index");
    const std::vector<long> th = term_thresholds(f);
    Constant acc;
    std::size_t k = 0;
    Constant x = point(n);
    for (const auto& [m, c] : f.terms()) {
        if (n < th[k++])
            continue;
        Constant d = eval_poly(c.den(), x);
        if (d.is_zero())
            throw SpecializationPole("denominator vanishes at n = " + std::to_string(n) + " after specialization");
        Constant v = eval_poly(c.num(), x) / d;
        for (std::size_t i = 0; i < m.size() && !v.is_zero(); ++i) {
            if (m[i] == 0)
                continue;
            Constant gv = ev_gen(i, n);
            if (m[i] < 0 && gv.is_zero())
                throw SpecializationPole("generator " + t_.generator(i).name + " vanishes at n = " +
                                         std::to_string(n) + " after specialization");
            v *= pow(gv, static_cast<long>(m[i]));
        }
        acc += v;
    }
    return acc;
}

long minimal_start(const Tower& t, const SeqSpec& s)
{
    long r = o_fn(t, s.body);
    if (s.kind == SeqKind::Product)
        r = std::max(r, z_fn(t, s.body));
    return r;
}

std::vector<Constant> materialize(EvContext& ctx, const SeqSpec& s, long n_max)
{
    long need = minimal_start(ctx.tower(), s);
    if (s.start < need)
        throw StartTooSmall("start " + std::to_string(s.start) + " is below the minimal valid start r = " +
                            std::to_string(need));
    std::vector<Constant> out;
    Constant acc(s.kind == SeqKind::Product ? 1 : 0);
    for (long n = s.start; n <= n_max; ++n) {
        Constant v = ctx.ev(s.body, n);
        if (s.kind == SeqKind::Sum)
            acc += v;
        else if (s.kind == SeqKind::Product)
            acc *= v;
        else
            acc = v;
        out.push_back(acc);
    }
    return out;
}

TowerElem specialize(const TowerElem& x, const Rational& v)
{
    return x.map_coeffs([&](const BaseFun& f) {
        auto sp = [&](const Constant& c) { return Constant(specialize(c, v)); };
        BasePoly d = f.den().map<Constant>(sp);
        if (d.is_zero())
            throw SpecializationPole("denominator vanishes after specialization");
        return BaseFun(f.num().map<Constant>(sp), d);
    });
}

Tower specialize_tower(const Tower& t, const Rational& v)
{
    Tower out(t.base(), t.var(), t.param());
    for (const auto& g : t.generators()) {
        Generator s = g;
        s.alpha = specialize(g.alpha, v);
        s.beta = specialize(g.beta, v);
        s.seed.c = Constant(specialize(g.seed.c, v));
        out = out.extended(std::move(s));
    }
    return out;
}

}  // namespace telecert
