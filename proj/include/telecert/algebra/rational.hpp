#pragma once

#include <gmpxx.h>

#include <string>

namespace telecert {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

inline Rational make_rational(long n, long d = 1)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& n, const Integer& d)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& x) { return x.get_str(); }

Rational pow(const Rational& base, long e);

}  // namespace telecert
