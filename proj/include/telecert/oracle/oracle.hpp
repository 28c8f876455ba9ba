#pragma once

// Brute-force relation finder: exact nullspace of sampled monomial values.

#include "telecert/embed/embed.hpp"

#include <optional>
#include <string>
#include <vector>

namespace telecert {

struct OracleQuery {
    Tower tower;
    std::vector<SeqSpec> sequences;
    int degree = 2;        // total degree D in x1..xd
    int coeff_degree = 0;  // degree Dn of the coefficients in n
    long from = 1;         // sample range [from, to]
    long to = 100;
    long margin = 10;      // required samples beyond the column count
    long extra = 50;       // indices after `to` used to re-check candidates
    // Parameter values; empty means the defaults for a parameterized tower.
    std::vector<Rational> param_values;
};

// Column n^j * x^e.
struct OracleMonomial {
    int n_power = 0;
    std::vector<int> x;

    bool operator==(const OracleMonomial&) const = default;
};

struct OracleRelation {
    std::vector<OracleMonomial> monomials;
    std::vector<Rational> coeffs;  // primitive integer vector, first entry positive
    std::optional<Rational> param_value;
};

struct CheckResult {
    bool pass = true;
    long first_failure = -1;
    long checked = 0;
};

// Columns in the order used by the sample matrix.
std::vector<OracleMonomial> oracle_columns(std::size_t nseq, int degree, int coeff_degree);

// Three parameter values avoiding special integers (the first ones that do not hit poles).
std::vector<Rational> default_param_values(const Tower& t);

// Relations found at every parameter specialization that survive the re-check on
// [to+1, to+extra]. Empty when no relation exists within the bounds.
// Throws InsufficientSamples, StartTooSmall.
std::vector<OracleRelation> oracle_search(const OracleQuery& q);

// Exact nullspace basis of the sample matrix for one specialization, without the
// sample-count rule, modular screen or re-check.
std::vector<OracleRelation> sample_nullspace(const OracleQuery& q, const std::optional<Rational>& param);

// Exact evaluation of the relation at every n in [from, to].
CheckResult check_candidate(const OracleRelation& rel, const Tower& t, const std::vector<SeqSpec>& seqs, long from,
                            long to);

// "x2 - x1^2", "n*x1 - 2*x2 + 1", with names x1..xd unless given.
std::string format_relation(const OracleRelation& rel, const std::vector<std::string>& names = {});
std::string format_monomial(const OracleMonomial& m, const std::vector<std::string>& names = {});

}  // namespace telecert
