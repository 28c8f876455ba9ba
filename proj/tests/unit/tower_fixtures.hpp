#pragma once

#include "helpers.hpp"

#include "telecert/tower/admission.hpp"

#include <random>

namespace testutil {

inline BaseFun kfun() { return BaseFun(kvar()); }
inline BaseFun mfun() { return BaseFun(mvar()); }

// Q(k)(t)(h): t = k!, h = harmonic numbers.
inline Tower factorial_harmonic_tower()
{
    Tower t;
    t = admitted(admit_pi(t, "t", TowerElem(kfun() + BaseFun(1))));
    return admitted(admit_sigma(t, "h", TowerElem(BaseFun(1) / (kfun() + BaseFun(1)))));
}

// Q(m)(k)(b)(h): b = binom(m,k), h = harmonic numbers.
inline Tower binomial_harmonic_tower()
{
    Tower t(BaseKind::Rational, "k", "m");
    t = admitted(admit_pi(t, "b", TowerElem((mfun() - kfun()) / (kfun() + BaseFun(1)))));
    return admitted(admit_sigma(t, "h", TowerElem(BaseFun(1) / (kfun() + BaseFun(1)))));
}

// Q(q)(x)(s): x = q^k, s = q-harmonic numbers sum 1/(1 - q^i).
inline Tower q_harmonic_tower()
{
    Tower t(BaseKind::QPower, "k", "q");
    BaseFun x = kfun();
    BaseFun beta = BaseFun(1) / (BaseFun(1) - x.scaled_arg(mvar()));
    return admitted(admit_sigma(t, "s", TowerElem(beta)));
}

inline BaseFun small_basefun(std::mt19937& rng, int pdeg)
{
    std::uniform_int_distribution<int> coin(0, 2);
    BasePoly num = rand_basepoly(rng, std::uniform_int_distribution<int>(0, 2)(rng), pdeg);
    if (coin(rng) == 0)
        return BaseFun(num);
    BasePoly den = rand_basepoly(rng, 1, pdeg);
    return BaseFun(num, den);
}

// Random element: Pi exponents in [-1, 2], Sigma exponents in [0, 2], at most three terms.
inline TowerElem random_elem(std::mt19937& rng, const Tower& t, int pdeg)
{
    std::uniform_int_distribution<int> nterms(1, 3);
    std::uniform_int_distribution<int> pe(-1, 2);
    std::uniform_int_distribution<int> se(0, 2);
    TowerElem x;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Monomial m(t.size(), 0);
        for (std::size_t j = 0; j < t.size(); ++j)
            m[j] = t.is_pi(j) ? pe(rng) : se(rng);
        x += TowerElem::term(m, small_basefun(rng, pdeg));
    }
    if (x.is_zero())
        x = TowerElem(1);
    return x;
}

}  // namespace testutil
