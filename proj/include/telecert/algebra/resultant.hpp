#pragma once

#include "telecert/algebra/ratfun.hpp"

namespace telecert {

template <class F>
F exact_div(const F& a, const F& b)
{
    return a / b;
}

template <class F>
Poly<F> exact_div(const Poly<F>& a, const Poly<F>& b)
{
    return exact_quotient(a, b);
}

template <class R>
R ring_pow(const R& x, int e)
{
    R r(1);
    for (int i = 0; i < e; ++i)
        r = r * x;
    return r;
}

// lc(B)^(deg A - deg B + 1) * A mod B, computed without division.
template <class R>
Poly<R> pseudo_remainder(const Poly<R>& A, const Poly<R>& B)
{
    int db = B.degree();
    int e = A.degree() - db + 1;
    if (e <= 0)
        return A;
    Poly<R> r = A;
    const R& lb = B.lc();
    while (!r.is_zero() && r.degree() >= db) {
        Poly<R> t = Poly<R>::monomial(r.lc(), static_cast<std::size_t>(r.degree() - db));
        r = r.scaled(lb) - t * B;
        --e;
    }
    if (e > 0)
        r = r.scaled(ring_pow(lb, e));
    return r;
}

// Resultant by the subresultant PRS; coefficients in an integral domain R
// that supports exact division.
template <class R>
R resultant(Poly<R> A, Poly<R> B)
{
    if (A.is_zero() || B.is_zero())
        return R(0);
    int s = 1;
    if (A.degree() < B.degree()) {
        if ((A.degree() % 2) && (B.degree() % 2))
            s = -1;
        std::swap(A, B);
    }
    if (B.degree() == 0) {
        R r = ring_pow(B.lc(), A.degree());
        return s < 0 ? R(-r) : r;
    }
    R g(1), h(1);
    while (true) {
        int delta = A.degree() - B.degree();
        if ((A.degree() % 2) && (B.degree() % 2))
            s = -s;
        Poly<R> rem = pseudo_remainder(A, B);
        A = B;
        if (rem.is_zero())
            return R(0);
        R divisor = g * ring_pow(h, delta);
        B = rem.template map<R>([&](const R& c) { return exact_div(c, divisor); });
        g = A.lc();
        if (delta == 0) {
            // h unchanged
        } else {
            h = exact_div(ring_pow(g, delta), ring_pow(h, delta - 1));
        }
        if (B.degree() == 0)
            break;
    }
    int da = A.degree();
    R res = exact_div(ring_pow(B.lc(), da), ring_pow(h, da - 1));
    return s < 0 ? R(-res) : res;
}

}  // namespace telecert
