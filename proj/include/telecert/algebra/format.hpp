#pragma once

#include "telecert/algebra/ratfun.hpp"

#include <string>
#include <vector>

namespace telecert {

// A printed summand: sign plus unsigned body text.
struct SignedTerm {
    bool negative = false;
    std::string body;
};

std::string join_terms(const std::vector<SignedTerm>& terms);

std::vector<SignedTerm> signed_terms(const Rational& c);
std::vector<SignedTerm> signed_terms(const Constant& c, const std::string& param);
std::vector<SignedTerm> signed_terms(const BaseFun& f, const std::string& var, const std::string& param);

std::string format(const Rational& c);
std::string format(const Poly<Rational>& p, const std::string& var);
std::string format(const Constant& c, const std::string& param);
std::string format(const BasePoly& p, const std::string& var, const std::string& param);
std::string format(const BaseFun& f, const std::string& var, const std::string& param);

// Attach a factor string ("k^2", "b*h") to a coefficient, yielding terms.
std::vector<SignedTerm> attach(const std::vector<SignedTerm>& coeff, const std::string& factor);

}  // namespace telecert
