#include "telecert/algebra/ratfun.hpp"
#include "telecert/algebra/resultant.hpp"

#include <algorithm>
#include <optional>

namespace telecert {

namespace {

using QPoly = Poly<Rational>;
using Bivariate = Poly<QPoly>;

Bivariate clear_denominators(const BasePoly& p)
{
    QPoly l(Rational(1));
    for (const Constant& c : p.coeffs())
        if (c.den().degree() > 0)
            l = lcm(l, c.den());
    std::vector<QPoly> out;
    for (const Constant& c : p.coeffs())
        out.push_back(c.is_zero() ? QPoly() : c.num() * exact_quotient(l, c.den()));
    return Bivariate(std::move(out));
}

QPoly content(const Bivariate& p)
{
    QPoly g;
    for (const QPoly& c : p.coeffs()) {
        if (c.is_zero())
            continue;
        g = g.is_zero() ? c.monic() : gcd(g, c);
        if (g.degree() == 0)
            break;
    }
    return g;
}

// Scale to integer coefficients with gcd 1.
Bivariate integer_normalize(const Bivariate& p)
{
    Integer l = 1, g = 0;
    for (const QPoly& c : p.coeffs())
        for (const Rational& r : c.coeffs())
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.get_den_mpz_t());
    for (const QPoly& c : p.coeffs())
        for (const Rational& r : c.coeffs()) {
            Integer v = r.get_num() * (l / r.get_den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        }
    Rational s(l, g);
    s.canonicalize();
    if (s == 1)
        return p;
    return p.map<QPoly>([&](const QPoly& x) { return x.scaled(s); });
}

Bivariate primitive_part(const Bivariate& p)
{
    if (p.is_zero())
        return p;
    QPoly c = content(p);
    if (c.degree() == 0)
        return integer_normalize(p);
    return integer_normalize(p.map<QPoly>([&](const QPoly& x) { return exact_quotient(x, c); }));
}

int m_degree(const Bivariate& p)
{
    int d = 0;
    for (const QPoly& c : p.coeffs())
        d = std::max(d, c.degree());
    return d;
}

QPoly at(const Bivariate& p, const Rational& v)
{
    return p.map<Rational>([&](const QPoly& c) { return c(v); });
}

bool divides_bivariate(const Bivariate& d, const Bivariate& a) { return pseudo_remainder(a, d).is_zero(); }

// Gcd of primitive x, y by specializing the parameter, taking univariate gcds
// over Q and interpolating the coefficients scaled to gcd(lc x, lc y).
// Returns nothing if the interpolant fails the division check.
std::optional<Bivariate> interpolated_gcd(const Bivariate& x, const Bivariate& y)
{
    QPoly gamma = gcd(x.lc(), y.lc());
    int bound = gamma.degree() + std::min(m_degree(x), m_degree(y));
    std::vector<Rational> pts;
    std::vector<QPoly> vals;
    int dmin = std::min(x.degree(), y.degree()) + 1;
    for (long v = 1; pts.size() < static_cast<std::size_t>(bound + 1); ++v) {
        if (v > 4L * (bound + 1) + 64)
            return std::nullopt;
        Rational rv(v);
        Rational gv = gamma(rv);
        if (sgn(x.lc()(rv)) == 0 || sgn(y.lc()(rv)) == 0)
            continue;
        QPoly g = gcd(at(x, rv), at(y, rv));
        if (g.degree() == 0)
            return Bivariate(QPoly(Rational(1)));
        if (g.degree() > dmin)
            continue;
        if (g.degree() < dmin) {
            dmin = g.degree();
            pts.clear();
            vals.clear();
        }
        pts.push_back(rv);
        vals.push_back(g.scaled(gv));
    }
    // Newton interpolation, coefficient by coefficient.
    std::size_t n = pts.size();
    std::vector<QPoly> coeffs;
    for (int j = 0; j <= dmin; ++j) {
        std::vector<Rational> dd(n);
        for (std::size_t i = 0; i < n; ++i)
            dd[i] = vals[i][static_cast<std::size_t>(j)];
        for (std::size_t l = 1; l < n; ++l)
            for (std::size_t i = n - 1; i >= l; --i)
                dd[i] = (dd[i] - dd[i - 1]) / (pts[i] - pts[i - l]);
        QPoly c(dd[n - 1]);
        for (std::size_t i = n - 1; i-- > 0;)
            c = c * QPoly(std::vector<Rational>{-pts[i], Rational(1)}) + QPoly(dd[i]);
        coeffs.push_back(std::move(c));
    }
    Bivariate g = primitive_part(Bivariate(std::move(coeffs)));
    if (g.degree() != dmin || !divides_bivariate(g, x) || !divides_bivariate(g, y))
        return std::nullopt;
    return g;
}

}  // namespace

BasePoly gcd(const BasePoly& a, const BasePoly& b)
{
    if (a.is_zero())
        return b.monic();
    if (b.is_zero())
        return a.monic();
    if (a.degree() == 0 || b.degree() == 0)
        return BasePoly(Constant(1));
    bool params = false;
    for (const auto* p : {&a, &b})
        for (const Constant& c : p->coeffs())
            if (!c.is_constant())
                params = true;
    if (!params) {
        QPoly qa = a.map<Rational>([](const Constant& c) { return c.constant_value(); });
        QPoly qb = b.map<Rational>([](const Constant& c) { return c.constant_value(); });
        QPoly g = gcd(qa, qb);
        return g.map<Constant>([](const Rational& r) { return Constant(r); });
    }
    Bivariate x = primitive_part(clear_denominators(a));
    Bivariate y = primitive_part(clear_denominators(b));
    if (x.degree() < y.degree())
        std::swap(x, y);
    if (auto g = interpolated_gcd(x, y)) {
        if (g->degree() == 0)
            return BasePoly(Constant(1));
        return g->map<Constant>([](const QPoly& c) { return Constant(c); }).monic();
    }
    while (!y.is_zero() && y.degree() > 0) {
        Bivariate r = pseudo_remainder(x, y);
        x = std::move(y);
        y = primitive_part(r);
    }
    if (!y.is_zero())
        return BasePoly(Constant(1));
    BasePoly g = x.map<Constant>([](const QPoly& c) { return Constant(c); });
    return g.monic();
}

}  // namespace telecert
