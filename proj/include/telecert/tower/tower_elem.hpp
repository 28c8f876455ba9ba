#pragma once

#include "telecert/algebra/ratfun.hpp"

#include <map>
#include <vector>

namespace telecert {

// Exponent vector over the tower generators, trailing zeros trimmed.
using Monomial = std::vector<int>;

Monomial trim_monomial(Monomial m);
Monomial monomial_product(const Monomial& a, const Monomial& b);
int monomial_exponent(const Monomial& m, std::size_t i);

// Element of K(k)[t_1, ..., t_e] with Pi generators allowed negative
// exponents: a finite sum of base-field coefficients times monomials.
class TowerElem {
public:
    using Terms = std::map<Monomial, BaseFun>;

    TowerElem() = default;
    TowerElem(int c) : TowerElem(BaseFun(c)) {}
    TowerElem(const Constant& c) : TowerElem(BaseFun(c)) {}
    TowerElem(const BaseFun& f)
    {
        if (!f.is_zero())
            terms_.emplace(Monomial{}, f);
    }

    static TowerElem generator(std::size_t i, int exponent = 1);
    static TowerElem term(const Monomial& m, const BaseFun& c);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // Lies in the base field K(k).
    bool is_base() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
    BaseFun base_value() const;
    // All exponents nonnegative.
    bool is_polynomial() const;
    bool is_constant() const { return is_base() && base_value().is_constant(); }
    // Highest index of a generator occurring, or -1.
    int top_generator() const;
    // Largest exponent of generator i.
    int degree_in(std::size_t i) const;
    int min_degree_in(std::size_t i) const;
    // Coefficient of t_i^j, as an element free of t_i.
    TowerElem coefficient_in(std::size_t i, int j) const;
    // Single term view.
    bool is_monomial() const { return terms_.size() == 1; }

    bool operator==(const TowerElem& o) const { return terms_ == o.terms_; }
    bool operator!=(const TowerElem& o) const { return !(*this == o); }

    TowerElem operator-() const;
    TowerElem& operator+=(const TowerElem& o);
    TowerElem& operator-=(const TowerElem& o);
    friend TowerElem operator+(TowerElem a, const TowerElem& b) { return a += b; }
    friend TowerElem operator-(TowerElem a, const TowerElem& b) { return a -= b; }
    friend TowerElem operator*(const TowerElem& a, const TowerElem& b);
    TowerElem& operator*=(const TowerElem& o) { return *this = *this * o; }

    TowerElem scaled(const BaseFun& c) const;
    // Multiply by a monomial (exponents may be negative for Pi generators).
    TowerElem times_monomial(const Monomial& m) const;
    // Apply fn to every base coefficient.
    template <class Fn>
    TowerElem map_coeffs(Fn&& fn) const
    {
        TowerElem r;
        for (const auto& [m, c] : terms_) {
            BaseFun v = fn(c);
            if (!v.is_zero())
                r.terms_.emplace(m, std::move(v));
        }
        return r;
    }

private:
    void add_term(const Monomial& m, const BaseFun& c);
    Terms terms_;
};

TowerElem pow(const TowerElem& x, unsigned e);

}  // namespace telecert
