#pragma once

#include "telecert/algebra/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace telecert {

// Zero test dispatched by argument-dependent lookup at instantiation.
template <class T>
bool coeff_zero(const T& x)
{
    return is_zero(x);
}

// Dense univariate polynomial, coefficients in ascending degree order.
template <class F>
class Poly {
public:
    using Coeff = F;

    Poly() = default;
    Poly(F c)
    {
        if (!coeff_zero(c))
            c_.push_back(std::move(c));
    }
    explicit Poly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly x() { return Poly(std::vector<F>{F(0), F(1)}); }
    static Poly monomial(const F& c, std::size_t d)
    {
        if (coeff_zero(c))
            return Poly();
        std::vector<F> v(d + 1, F(0));
        v[d] = c;
        return Poly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<F>& coeffs() const { return c_; }

    const F& operator[](std::size_t i) const { return i < c_.size() ? c_[i] : zero(); }
    const F& lc() const { return c_.empty() ? zero() : c_.back(); }
    // Lowest nonzero coefficient.
    const F& tc() const
    {
        for (const F& c : c_)
            if (!coeff_zero(c))
                return c;
        return zero();
    }
    // Order of vanishing at 0.
    int valuation() const
    {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!coeff_zero(c_[i]))
                return static_cast<int>(i);
        return -1;
    }

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(c_ == o.c_); }

    Poly operator-() const
    {
        Poly r = *this;
        for (F& c : r.c_)
            c = -c;
        return r;
    }

    Poly& operator+=(const Poly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size(), F(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size(), F(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o)
    {
        *this = *this * o;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.c_.empty() || b.c_.empty())
            return Poly();
        std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (coeff_zero(a.c_[i]))
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }

    Poly scaled(const F& s) const
    {
        if (coeff_zero(s))
            return Poly();
        Poly r = *this;
        for (F& c : r.c_)
            c *= s;
        r.trim();
        return r;
    }

    Poly mul_x_power(std::size_t d) const
    {
        if (c_.empty() || d == 0)
            return *this;
        std::vector<F> v(d, F(0));
        v.insert(v.end(), c_.begin(), c_.end());
        return Poly(std::move(v));
    }
    // Divide by x^d, dropping the low coefficients.
    Poly div_x_power(std::size_t d) const
    {
        if (d >= c_.size())
            return Poly();
        return Poly(std::vector<F>(c_.begin() + d, c_.end()));
    }

    template <class V>
    V eval(const V& x) const
    {
        V r(0);
        for (std::size_t i = c_.size(); i-- > 0;) {
            r *= x;
            r += V(c_[i]);
        }
        return r;
    }
    F operator()(const F& x) const { return eval<F>(x); }

    // p(x + a)
    Poly shifted(const F& a) const
    {
        if (coeff_zero(a) || c_.size() <= 1)
            return *this;
        std::vector<F> r = c_;
        std::size_t n = r.size();
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = n - 1; j-- > i;)
                r[j] += a * r[j + 1];
        return Poly(std::move(r));
    }

    // p(s * x)
    Poly scaled_arg(const F& s) const
    {
        Poly r = *this;
        F p(1);
        for (F& c : r.c_) {
            c *= p;
            p *= s;
        }
        r.trim();
        return r;
    }

    Poly derivative() const
    {
        if (c_.size() <= 1)
            return Poly();
        std::vector<F> r(c_.size() - 1, F(0));
        for (std::size_t i = 1; i < c_.size(); ++i)
            r[i - 1] = c_[i] * F(static_cast<long>(i));
        return Poly(std::move(r));
    }

    Poly monic() const
    {
        if (c_.empty())
            return *this;
        F inv = F(1) / c_.back();
        return scaled(inv);
    }

    template <class G, class Fn>
    Poly<G> map(Fn&& fn) const
    {
        std::vector<G> v;
        v.reserve(c_.size());
        for (const F& c : c_)
            v.push_back(fn(c));
        return Poly<G>(std::move(v));
    }

private:
    void trim()
    {
        while (!c_.empty() && coeff_zero(c_.back()))
            c_.pop_back();
    }
    static const F& zero()
    {
        static const F z(0);
        return z;
    }

    std::vector<F> c_;
};

template <class F>
bool is_zero(const Poly<F>& p) { return p.is_zero(); }

template <class F>
Poly<F> pow(const Poly<F>& p, unsigned e)
{
    Poly<F> r(F(1));
    Poly<F> b = p;
    while (e) {
        if (e & 1u)
            r *= b;
        e >>= 1u;
        if (e)
            b = b * b;
    }
    return r;
}

// Euclidean division over a field.
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b)
{
    if (b.is_zero())
        throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree())
        return {Poly<F>(), a};
    std::vector<F> r = a.coeffs();
    int db = b.degree();
    std::vector<F> q(static_cast<std::size_t>(a.degree() - db + 1), F(0));
    F inv = F(1) / b.lc();
    bool unit = (b.lc() == F(1));
    for (int i = a.degree(); i >= db; --i) {
        const F& top = r[static_cast<std::size_t>(i)];
        if (coeff_zero(top))
            continue;
        F f = unit ? top : F(top * inv);
        for (int j = 0; j <= db; ++j)
            r[static_cast<std::size_t>(i - db + j)] -= f * b[static_cast<std::size_t>(j)];
        q[static_cast<std::size_t>(i - db)] = std::move(f);
    }
    r.resize(static_cast<std::size_t>(db));
    return {Poly<F>(std::move(q)), Poly<F>(std::move(r))};
}

template <class F>
Poly<F> operator%(const Poly<F>& a, const Poly<F>& b) { return divmod(a, b).second; }

// Quotient that must be exact; throws otherwise.
template <class F>
Poly<F> exact_quotient(const Poly<F>& a, const Poly<F>& b)
{
    auto [q, r] = divmod(a, b);
    if (!r.is_zero())
        throw std::logic_error("inexact polynomial division");
    return q;
}

template <class F>
bool divides(const Poly<F>& d, const Poly<F>& a)
{
    if (a.is_zero())
        return true;
    if (d.is_zero())
        return false;
    return divmod(a, d).second.is_zero();
}

// Monic gcd; gcd(0, 0) = 0.
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b)
{
    if (a.is_zero())
        return b.monic();
    if (b.is_zero())
        return a.monic();
    if (a.degree() == 0 || b.degree() == 0)
        return Poly<F>(F(1));
    if (a.degree() < b.degree())
        std::swap(a, b);
    while (!b.is_zero()) {
        Poly<F> r = divmod(a, b).second;
        a = std::move(b);
        b = r.monic();
        if (b.degree() == 0)
            return Poly<F>(F(1));
    }
    return a.monic();
}

template <class F>
Poly<F> lcm(const Poly<F>& a, const Poly<F>& b)
{
    if (a.is_zero() || b.is_zero())
        return Poly<F>();
    return exact_quotient(a * b, gcd(a, b)).monic();
}

template <class F>
Poly<F> squarefree_part(const Poly<F>& p)
{
    if (p.degree() <= 0)
        return p.is_zero() ? p : Poly<F>(F(1));
    return exact_quotient(p, gcd(p, p.derivative())).monic();
}

// Squarefree factorization (Yun): returns monic a_1, a_2, ... with p = lc * prod a_i^i.
template <class F>
std::vector<Poly<F>> squarefree_factors(const Poly<F>& p)
{
    std::vector<Poly<F>> out;
    if (p.degree() <= 0)
        return out;
    Poly<F> f = p.monic();
    Poly<F> d = f.derivative();
    Poly<F> a = gcd(f, d);
    Poly<F> b = exact_quotient(f, a);
    Poly<F> c = exact_quotient(d, a);
    Poly<F> e = c - b.derivative();
    while (b.degree() > 0) {
        Poly<F> g = gcd(b, e);
        out.push_back(g);
        b = exact_quotient(b, g);
        c = exact_quotient(e, g);
        e = c - b.derivative();
    }
    while (!out.empty() && out.back().degree() == 0)
        out.pop_back();
    return out;
}

}  // namespace telecert
