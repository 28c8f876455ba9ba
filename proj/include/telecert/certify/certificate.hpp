#pragma once

// Verdict records: an explicit verified relation or an independence
// certificate paired with a relation-oracle scan.

#include "telecert/embed/embed.hpp"
#include "telecert/solver/telescope.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace telecert {

enum class Verdict { Independent, Relation };

struct ScanOptions {
    bool enabled = true;
    int degree = 2;
    int coeff_degree = 2;
    long from = -1;  // default: the latest sequence start
    long to = -1;    // default: smallest range meeting the sample rule
    std::vector<Rational> param_values;
};

struct CertifyOptions {
    ScanOptions scan;
    long verify_to = -1;  // default max(200, r + 100)
};

struct OracleScanRecord {
    int degree = 0;
    int coeff_degree = 0;
    long from = 0;
    long to = 0;
    long relations_found = 0;
    std::vector<std::string> sequences;
    std::vector<Rational> param_values;
};

// Recurrence checked against direct evaluation of the summand at one parameter value.
struct NumericCheck {
    Rational param;
    long n_max = 0;
};

struct Certificate {
    Verdict verdict = Verdict::Independent;
    std::string kind;           // sums | products | zeilberger
    std::string problem_class;  // R, H, D, HxD, multi, Pi
    Tower tower;
    std::vector<TowerElem> f;   // summands, or product factors for kind "products"
    long start = 0;             // sums/products run over k = start..n

    // Relation: sigma(g) - g = sum c_i f_i (sums), or sigma(g)/g = prod f_i^c_i (products).
    std::vector<Constant> c;
    TowerElem g;
    std::optional<std::pair<long, long>> verified_range;
    std::vector<Rational> verified_params;
    std::vector<NumericCheck> numeric_checks;
    long order = -1;            // zeilberger recurrence order
    long max_order = -1;

    // Independent.
    std::string statement;
    std::string completeness;
    std::string scan_limitation;
    std::optional<OracleScanRecord> scan;
};

struct ZeilbergerCertificate {
    Certificate recurrence;                  // Relation at the minimal order, or Independent
    std::optional<Certificate> independence; // the failed lower orders
};

struct VerifyReport {
    bool pass = true;
    long first_failure = -1;
    long from = 0;
    long to = 0;
    std::vector<Rational> params;
};

// Parameter values for numeric verification of a tower over Q(m) or Q(q).
std::vector<Rational> verification_params(const Tower& t);

// Throws UnsupportedShape, StartTooSmall, VerificationFailed.
Certificate certify_sums(const Tower& t, const std::vector<TowerElem>& f, const CertifyOptions& opts = {});

Certificate certify_products(const std::vector<BaseFun>& f, const CertifyOptions& opts = {});

// alpha_k = f(m,k+1)/f(m,k), alpha_m = f(m+1,k)/f(m,k). `diagonal` requests the
// definite sum at n = m, which is refused with DiagonalSpecialization.
ZeilbergerCertificate certify_zeilberger(const BaseFun& alpha_k, const BaseFun& alpha_m, long max_order,
                                         const CertifyOptions& opts = {}, bool diagonal = false);

// Exact check of the relation for n in [start, N]; parameterized towers are
// checked at verification_params(). N < 0 selects max(200, start + 100).
VerifyReport check_relation(const Certificate& cert, long N = -1);
// As check_relation, throwing VerificationFailed naming the first failing n.
VerifyReport verify_relation(const Certificate& cert, long N = -1);

// Compares the recurrence of a zeilberger certificate with direct values
// term(m, k) of the summand: sum_i c_i(m0) sum_{k=start}^{n} term(m0+i, k)
// against the certificate g, for n = start..n_max at each m0.
// Throws VerificationFailed.
void verify_recurrence_direct(Certificate& rec, const std::function<Rational(const Rational&, long)>& term,
                              const std::vector<Rational>& params, long n_max);

// The oracle scan for an independence certificate; fills cert.scan.
void run_scan(Certificate& cert, const std::vector<SeqSpec>& seqs, const std::vector<std::string>& names,
              const ScanOptions& opts);

std::string verdict_name(Verdict v);

}  // namespace telecert
