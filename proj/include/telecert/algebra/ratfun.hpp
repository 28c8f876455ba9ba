#pragma once

#include "telecert/algebra/poly.hpp"

namespace telecert {

// Reduced quotient num/den with monic denominator.
template <class F>
class RatFun {
public:
    using Coeff = F;
    using P = Poly<F>;

    RatFun() : den_(F(1)) {}
    RatFun(int n) : num_(F(n)), den_(F(1)) {}
    RatFun(long n) : num_(F(n)), den_(F(1)) {}
    RatFun(F c) : num_(std::move(c)), den_(F(1)) {}
    RatFun(P p) : num_(std::move(p)), den_(F(1)) {}
    RatFun(P n, P d) : num_(std::move(n)), den_(std::move(d))
    {
        if (den_.is_zero())
            throw std::domain_error("rational function with zero denominator");
        normalize();
    }

    static RatFun variable() { return RatFun(P::x()); }

    const P& num() const { return num_; }
    const P& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return den_.degree() == 0 && num_.degree() <= 0; }
    // Leading constant when is_constant().
    const F& constant_value() const { return num_[0]; }

    bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFun& o) const { return !(*this == o); }

    RatFun operator-() const
    {
        RatFun r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFun operator+(const RatFun& a, const RatFun& b)
    {
        if (a.is_zero())
            return b;
        if (b.is_zero())
            return a;
        if (a.den_ == b.den_) {
            if (a.den_.degree() == 0)
                return RatFun::raw(a.num_ + b.num_, a.den_);
            return RatFun(a.num_ + b.num_, a.den_);
        }
        if (a.den_.degree() == 0)
            return RatFun::raw(a.num_ * b.den_ + b.num_, b.den_);
        if (b.den_.degree() == 0)
            return RatFun::raw(a.num_ + b.num_ * a.den_, a.den_);
        P g = gcd(a.den_, b.den_);
        if (g.degree() == 0)
            return RatFun::raw(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
        P ad = exact_quotient(a.den_, g);
        P bd = exact_quotient(b.den_, g);
        P n = a.num_ * bd + b.num_ * ad;
        return RatFun(std::move(n), ad * b.den_);
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
    friend RatFun operator*(const RatFun& a, const RatFun& b)
    {
        if (a.is_zero() || b.is_zero())
            return RatFun();
        if (a.den_.degree() == 0 && b.den_.degree() == 0)
            return RatFun::raw(a.num_ * b.num_, P(F(1)));
        P g1 = gcd(a.num_, b.den_);
        P g2 = gcd(b.num_, a.den_);
        P n1 = g1.degree() > 0 ? exact_quotient(a.num_, g1) : a.num_;
        P d2 = g1.degree() > 0 ? exact_quotient(b.den_, g1) : b.den_;
        P n2 = g2.degree() > 0 ? exact_quotient(b.num_, g2) : b.num_;
        P d1 = g2.degree() > 0 ? exact_quotient(a.den_, g2) : a.den_;
        return RatFun::raw(n1 * n2, d1 * d2);
    }
    friend RatFun operator/(const RatFun& a, const RatFun& b)
    {
        if (b.is_zero())
            throw std::domain_error("rational function division by zero");
        return a * b.inverse();
    }

    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
    RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

    RatFun inverse() const
    {
        if (is_zero())
            throw std::domain_error("inverse of zero rational function");
        return RatFun::raw(den_, num_);
    }

    RatFun scaled(const F& s) const
    {
        if (coeff_zero(s))
            return RatFun();
        return RatFun::raw(num_.scaled(s), den_);
    }

    // Substitution x -> x + a.
    RatFun shifted(const F& a) const { return RatFun::raw(num_.shifted(a), den_.shifted(a)); }
    // Substitution x -> s x.
    RatFun scaled_arg(const F& s) const { return RatFun::raw(num_.scaled_arg(s), den_.scaled_arg(s)); }

    F eval(const F& x) const
    {
        F d = den_(x);
        if (coeff_zero(d))
            throw std::domain_error("rational function evaluated at a pole");
        return num_(x) / d;
    }

    // Build from already coprime parts; only rescales to a monic denominator.
    static RatFun raw(P n, P d)
    {
        RatFun r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        r.make_monic();
        return r;
    }

private:
    void make_monic()
    {
        if (num_.is_zero()) {
            den_ = P(F(1));
            return;
        }
        const F& l = den_.lc();
        if (!(l == F(1))) {
            F inv = F(1) / l;
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }
    void normalize()
    {
        if (num_.is_zero()) {
            den_ = P(F(1));
            return;
        }
        if (den_.degree() > 0 && num_.degree() > 0) {
            P g = gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = exact_quotient(num_, g);
                den_ = exact_quotient(den_, g);
            }
        }
        make_monic();
    }

    P num_;
    P den_;
};

template <class F>
bool is_zero(const RatFun<F>& f) { return f.is_zero(); }

template <class F>
RatFun<F> pow(const RatFun<F>& f, long e)
{
    if (e < 0)
        return pow(f.inverse(), -e);
    return RatFun<F>::raw(pow(f.num(), static_cast<unsigned>(e)), pow(f.den(), static_cast<unsigned>(e)));
}

// Constant field: Q or Q(p) for a single parameter symbol p.
using Constant = RatFun<Rational>;
// Base field element: rational function in the base variable over Constant.
using BasePoly = Poly<Constant>;
using BaseFun = RatFun<Constant>;

// Gcd over Q(p) via a primitive remainder sequence in Q[p][x]; avoids the
// coefficient swell of plain Euclid over the fraction field.
BasePoly gcd(const BasePoly& a, const BasePoly& b);

}  // namespace telecert
