#include "telecert/algebra/format.hpp"

namespace telecert {

namespace {

std::string power_text(const std::string& var, std::size_t i)
{
    if (i == 0)
        return "";
    if (i == 1)
        return var;
    return var + "^" + std::to_string(i);
}

bool is_atom_text(const std::string& s)
{
    for (char ch : s)
        if (ch == '*' || ch == '/' || ch == ' ' || ch == '(')
            return false;
    return true;
}

template <class F, class CoeffTerms>
std::vector<SignedTerm> poly_terms(const Poly<F>& p, const std::string& var, CoeffTerms&& coeff_terms)
{
    std::vector<SignedTerm> out;
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        if (is_zero(p[i]))
            continue;
        auto t = attach(coeff_terms(p[i]), power_text(var, i));
        out.insert(out.end(), t.begin(), t.end());
    }
    return out;
}

template <class F, class CoeffTerms>
std::vector<SignedTerm> ratfun_terms(const RatFun<F>& f, const std::string& var, CoeffTerms&& coeff_terms)
{
    auto num = poly_terms(f.num(), var, coeff_terms);
    if (f.den().degree() <= 0)
        return num;
    auto den = poly_terms(f.den(), var, coeff_terms);
    std::string den_text = join_terms(den);
    if (den.size() != 1 || den[0].negative || !is_atom_text(den[0].body))
        den_text = "(" + den_text + ")";
    SignedTerm t;
    if (num.size() == 1) {
        t.negative = num[0].negative;
        t.body = num[0].body + "/" + den_text;
    } else {
        t.body = "(" + join_terms(num) + ")/" + den_text;
    }
    return {t};
}

}  // namespace

std::string join_terms(const std::vector<SignedTerm>& terms)
{
    if (terms.empty())
        return "0";
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i == 0)
            s += terms[i].negative ? "-" : "";
        else
            s += terms[i].negative ? " - " : " + ";
        s += terms[i].body;
    }
    return s;
}

std::vector<SignedTerm> attach(const std::vector<SignedTerm>& coeff, const std::string& factor)
{
    if (factor.empty() || coeff.empty())
        return coeff;
    if (coeff.size() == 1) {
        SignedTerm t = coeff[0];
        t.body = (t.body == "1") ? factor : t.body + "*" + factor;
        return {t};
    }
    return {SignedTerm{false, "(" + join_terms(coeff) + ")*" + factor}};
}

std::vector<SignedTerm> signed_terms(const Rational& c)
{
    if (is_zero(c))
        return {};
    Rational a = abs(c);
    return {SignedTerm{sgn(c) < 0, a.get_str()}};
}

std::vector<SignedTerm> signed_terms(const Constant& c, const std::string& param)
{
    return ratfun_terms(c, param, [](const Rational& r) { return signed_terms(r); });
}

std::vector<SignedTerm> signed_terms(const BaseFun& f, const std::string& var, const std::string& param)
{
    return ratfun_terms(f, var, [&](const Constant& c) { return signed_terms(c, param); });
}

std::string format(const Rational& c) { return c.get_str(); }

std::string format(const Poly<Rational>& p, const std::string& var)
{
    return join_terms(poly_terms(p, var, [](const Rational& r) { return signed_terms(r); }));
}

std::string format(const Constant& c, const std::string& param) { return join_terms(signed_terms(c, param)); }

std::string format(const BasePoly& p, const std::string& var, const std::string& param)
{
    return join_terms(poly_terms(p, var, [&](const Constant& c) { return signed_terms(c, param); }));
}

std::string format(const BaseFun& f, const std::string& var, const std::string& param)
{
    return join_terms(signed_terms(f, var, param));
}

Rational pow(const Rational& base, long e)
{
    if (e < 0) {
        if (is_zero(base))
            throw std::domain_error("zero to a negative power");
        return pow(Rational(1) / base, -e);
    }
    Rational r(1);
    Rational b = base;
    while (e) {
        if (e & 1)
            r *= b;
        e >>= 1;
        if (e)
            b *= b;
    }
    return r;
}

}  // namespace telecert
