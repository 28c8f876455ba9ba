#pragma once

#include "telecert/algebra/ratfun.hpp"

#include <optional>
#include <vector>

namespace telecert {

// All integer roots (any sign) of a nonzero polynomial over Q.
std::vector<long> integer_roots(const Poly<Rational>& p);

// Exactly the n >= 0 with p(n) = 0. Throws ZeroPolynomial.
std::vector<long> nonneg_integer_roots(const Poly<Rational>& p);

// Over Q(param): integer roots valid for a generic parameter value.
std::vector<long> integer_roots(const BasePoly& p);
std::vector<long> nonneg_integer_roots(const BasePoly& p);

// Polynomial over Q whose roots are the parameter-independent roots of p.
Poly<Rational> parameter_free_part(const BasePoly& p);

// p(k + j) as a polynomial in k with coefficients in Q(param)[j].
Poly<BasePoly> shift_by_symbol(const BasePoly& p);

// Res_k(q1(k + j), q2(k)) as a polynomial in j.
BasePoly shift_resultant(const BasePoly& q1, const BasePoly& q2);

// All j >= 0 with gcd(q1(k + j), q2(k)) nontrivial.
std::vector<long> dispersion_set(const BasePoly& q1, const BasePoly& q2);

// q-analogue: all j >= 0 with gcd(q1(q^j x), q2(x)) nontrivial, q = the
// parameter of the constant field. Factors x are ignored.
std::vector<long> q_dispersion_set(const BasePoly& q1, const BasePoly& q2);

// Integer j with a(k + j) = b(k), if any.
std::optional<long> shift_distance(const BasePoly& a, const BasePoly& b);

struct OrbitPart {
    long offset = 0;
    long exponent = 0;
};

struct Orbit {
    BasePoly rep;
    std::vector<OrbitPart> parts;

    long exponent_sum() const
    {
        long s = 0;
        for (const auto& p : parts)
            s += p.exponent;
        return s;
    }
};

struct ShiftlessDecomp {
    Constant content;
    std::vector<Orbit> orbits;
};

ShiftlessDecomp shiftless_decompose(const BaseFun& f);
BaseFun reconstruct(const ShiftlessDecomp& d);

// Joint decomposition: one orbit list shared by all inputs; exponents[i][o]
// holds the parts of input i in orbit o.
struct JointShiftless {
    std::vector<Constant> contents;
    std::vector<BasePoly> reps;
    std::vector<std::vector<std::vector<OrbitPart>>> parts;
};

JointShiftless joint_shiftless_decompose(const std::vector<BaseFun>& fs);

// g with g(k+1)/g(k) = f, or nothing.
std::optional<BaseFun> is_shift_quotient(const BaseFun& f);

// Witness for content 1 and zero orbit sums.
BaseFun shift_quotient_witness(const std::vector<Orbit>& orbits);

}  // namespace telecert
