#pragma once

#include "telecert/algebra/ratfun.hpp"

#include <random>

namespace testutil {

using namespace telecert;

inline Rational rand_rational(std::mt19937& rng, int range = 5, bool allow_zero = true)
{
    std::uniform_int_distribution<int> d(-range, range);
    std::uniform_int_distribution<int> q(1, 3);
    while (true) {
        Rational r(d(rng), q(rng));
        r.canonicalize();
        if (allow_zero || r != 0)
            return r;
    }
}

inline Poly<Rational> rand_qpoly(std::mt19937& rng, int deg)
{
    std::vector<Rational> c;
    for (int i = 0; i <= deg; ++i)
        c.push_back(rand_rational(rng));
    if (c.back() == 0)
        c.back() = 1;
    return Poly<Rational>(c);
}

// Constant in Q or Q(m) (degree <= pdeg in the parameter).
inline Constant rand_constant(std::mt19937& rng, int pdeg)
{
    if (pdeg <= 0)
        return Constant(rand_rational(rng));
    return Constant(rand_qpoly(rng, std::uniform_int_distribution<int>(0, pdeg)(rng)));
}

inline BasePoly rand_basepoly(std::mt19937& rng, int deg, int pdeg)
{
    std::vector<Constant> c;
    for (int i = 0; i <= deg; ++i)
        c.push_back(rand_constant(rng, pdeg));
    if (c.back().is_zero())
        c.back() = Constant(1);
    return BasePoly(c);
}

inline BaseFun rand_basefun(std::mt19937& rng, int deg, int pdeg)
{
    BasePoly d = rand_basepoly(rng, std::uniform_int_distribution<int>(0, deg)(rng), pdeg);
    return BaseFun(rand_basepoly(rng, deg, pdeg), d);
}

inline BasePoly kpoly(std::initializer_list<long> coeffs)
{
    std::vector<Constant> c;
    for (long v : coeffs)
        c.push_back(Constant(v));
    return BasePoly(c);
}

inline Constant mvar() { return Constant::variable(); }
inline BasePoly kvar() { return BasePoly::x(); }

}  // namespace testutil
