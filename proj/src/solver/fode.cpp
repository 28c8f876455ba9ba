#include "telecert/solver/fode.hpp"

#include "telecert/algebra/linalg.hpp"
#include "telecert/algebra/shift.hpp"

#include <algorithm>
#include <optional>

namespace telecert {

namespace {

BasePoly sigma_poly(BaseKind base, const BasePoly& p, long j)
{
    if (j == 0 || p.degree() <= 0)
        return p;
    if (base == BaseKind::Rational)
        return p.shifted(Constant(j));
    return p.scaled_arg(pow(Constant::variable(), j));
}

// s with r = q^s, if r is a pure power of the parameter.
std::optional<long> q_exponent(const Constant& r)
{
    if (r.is_zero())
        return std::nullopt;
    const auto& n = r.num();
    const auto& d = r.den();
    auto monomial_deg = [](const Poly<Rational>& p) -> std::optional<long> {
        if (p.is_zero() || p.lc() != 1)
            return std::nullopt;
        for (int i = 0; i < p.degree(); ++i)
            if (p[static_cast<std::size_t>(i)] != 0)
                return std::nullopt;
        return p.degree();
    };
    auto dn = monomial_deg(n);
    auto dd = monomial_deg(d);
    if (!dn || !dd)
        return std::nullopt;
    return *dn - *dd;
}

// Nonnegative integer value of a constant, if it is one.
std::optional<long> nonneg_integer_value(const Constant& r)
{
    if (!r.is_constant())
        return std::nullopt;
    const Rational& v = r.constant_value();
    if (!is_integer(v) || sgn(v) < 0 || !v.get_num().fits_slong_p())
        return std::nullopt;
    return v.get_num().get_si();
}

BasePoly x_power(int s) { return BasePoly::monomial(Constant(1), static_cast<std::size_t>(s)); }

// Degree bound for polynomial solutions of p1*sigma(p) + p0*p = q (q of degree dq, -1 if zero).
long degree_bound(BaseKind base, const BasePoly& p1, const BasePoly& p0, int dq)
{
    long bound = -1;
    if (base == BaseKind::Rational) {
        BasePoly s = p1 + p0;
        int da = p1.degree();
        int db = s.degree();
        if (db >= da) {
            if (dq >= 0)
                bound = dq - db;
        } else if (db < da - 1) {
            if (dq >= 0)
                bound = dq - da + 1;
        } else {
            if (dq >= 0)
                bound = dq - db;
            if (auto n = nonneg_integer_value(-(s.lc() / p1.lc())))
                bound = std::max(bound, *n);
        }
        return bound;
    }
    int d1 = p1.degree();
    int d0 = p0.degree();
    if (d1 != d0) {
        if (dq >= 0)
            bound = dq - std::max(d1, d0);
        return bound;
    }
    if (dq >= 0)
        bound = dq - d1;
    if (auto n = q_exponent(-(p0.lc() / p1.lc())); n && *n >= 0)
        bound = std::max(bound, *n);
    return bound;
}

}  // namespace

BasePoly universal_denominator(BaseKind base, const BasePoly& a, const BasePoly& b)
{
    BasePoly am = sigma_poly(base, a, -1);
    BasePoly bm = b;
    if (base == BaseKind::QPower) {
        am = am.div_x_power(static_cast<std::size_t>(std::max(am.valuation(), 0)));
        bm = bm.div_x_power(static_cast<std::size_t>(std::max(bm.valuation(), 0)));
    }
    BasePoly u(Constant(1));
    if (am.degree() <= 0 || bm.degree() <= 0)
        return u;
    std::vector<long> disp = base == BaseKind::Rational ? dispersion_set(bm, am) : q_dispersion_set(bm, am);
    if (disp.empty())
        return u;
    for (long i = disp.back(); i >= 0; --i) {
        BasePoly g = gcd(am, sigma_poly(base, bm, i));
        if (g.degree() <= 0)
            continue;
        am = exact_quotient(am, g);
        bm = exact_quotient(bm, sigma_poly(base, g, -i));
        for (long j = 0; j <= i; ++j)
            u *= sigma_poly(base, g, -j);
    }
    return u.monic();
}

std::vector<FodeSolution> solve_param_fode(BaseKind base, const BaseFun& a_in, const BaseFun& b_in,
                                           const std::vector<BaseFun>& rhs)
{
    if (a_in.is_zero())
        throw std::invalid_argument("first-order equation with zero leading coefficient");
    BaseFun a = a_in;
    BaseFun b = b_in;
    std::vector<BaseFun> r = rhs;

    // Laurent part for the q-base: v = w / x^S.
    int shift_s = 0;
    if (base == BaseKind::QPower) {
        BasePoly den = lcm(a.den(), b.den());
        for (const auto& f : r)
            den = lcm(den, f.den());
        BasePoly A = (a * BaseFun(den)).num();
        BasePoly B = (b * BaseFun(den)).num();
        int val_r = -1;
        for (const auto& f : r) {
            BasePoly R = (f * BaseFun(den)).num();
            if (!R.is_zero())
                val_r = val_r < 0 ? R.valuation() : std::min(val_r, R.valuation());
        }
        long s = 0;
        if (!B.is_zero()) {
            int va = A.valuation();
            int vb = B.valuation();
            int v0 = std::min(va, vb);
            if (val_r >= 0)
                s = std::max<long>(s, v0 - val_r);
            if (va == vb)
                if (auto e = q_exponent(-(A.tc() / B.tc())); e && *e > 0)
                    s = std::max(s, *e);
        } else if (val_r >= 0) {
            s = std::max<long>(s, A.valuation() - val_r);
        }
        shift_s = static_cast<int>(s);
        if (shift_s > 0) {
            a = a * BaseFun(pow(Constant::variable(), -static_cast<long>(shift_s)));
            for (auto& f : r)
                f = f * BaseFun(x_power(shift_s));
        }
    }

    BasePoly den = lcm(a.den(), b.den());
    for (const auto& f : r)
        den = lcm(den, f.den());
    BasePoly A = (a * BaseFun(den)).num();
    BasePoly B = (b * BaseFun(den)).num();
    std::vector<BasePoly> R;
    for (const auto& f : r)
        R.push_back((f * BaseFun(den)).num());

    BasePoly u = universal_denominator(base, A, B);
    BasePoly us = sigma_poly(base, u, 1);
    BasePoly l = lcm(us, u);
    BasePoly p1 = A * exact_quotient(l, us);
    BasePoly p0 = B * exact_quotient(l, u);
    std::vector<BasePoly> Q;
    for (const auto& f : R)
        Q.push_back(f * l);

    BasePoly g = gcd(p1, p0);
    for (const auto& q : Q)
        if (g.degree() > 0)
            g = gcd(g, q);
    if (g.degree() > 0) {
        p1 = exact_quotient(p1, g);
        p0 = exact_quotient(p0, g);
        for (auto& q : Q)
            q = exact_quotient(q, g);
    }

    int dq = -1;
    for (const auto& q : Q)
        dq = std::max(dq, q.degree());
    long n = degree_bound(base, p1, p0, dq);
    std::size_t np = n >= 0 ? static_cast<std::size_t>(n + 1) : 0;

    std::vector<BasePoly> cols;
    BasePoly xj(Constant(1));
    for (std::size_t j = 0; j < np; ++j) {
        cols.push_back(p1 * sigma_poly(base, xj, 1) + p0 * xj);
        xj = xj * BasePoly::x();
    }
    for (const auto& q : Q)
        cols.push_back(-q);
    int rows = 0;
    for (const auto& c : cols)
        rows = std::max(rows, c.degree() + 1);

    std::vector<FodeSolution> out;
    if (cols.empty())
        return out;
    Matrix<Constant> m(static_cast<std::size_t>(rows), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i <= cols[j].degree(); ++i)
            m(static_cast<std::size_t>(i), j) = cols[j][static_cast<std::size_t>(i)];
    for (auto& vec : nullspace(m)) {
        std::vector<Constant> pc(vec.begin(), vec.begin() + static_cast<long>(np));
        FodeSolution s;
        s.c.assign(vec.begin() + static_cast<long>(np), vec.end());
        BaseFun v(BasePoly(std::move(pc)), u);
        if (shift_s > 0)
            v = v / BaseFun(x_power(shift_s));
        s.v = v;
        out.push_back(std::move(s));
    }
    return out;
}

std::optional<BaseFun> gosper(BaseKind base, const BaseFun& alpha)
{
    for (const auto& s : solve_param_fode(base, alpha, BaseFun(-1), {BaseFun(1)}))
        if (!s.c[0].is_zero())
            return s.v / BaseFun(s.c[0]);
    return std::nullopt;
}

}  // namespace telecert
