#include "doctest.h"
#include "tower_fixtures.hpp"

#include "telecert/errors.hpp"
#include "telecert/oracle/oracle.hpp"

using namespace telecert;
using namespace testutil;

namespace {

Tower harmonic2_tower()
{
    Tower t;
    BaseFun k1 = kfun() + BaseFun(1);
    t = admitted(admit_sigma(t, "h", TowerElem(BaseFun(1) / k1)));
    return admitted(admit_sigma(t, "h2", TowerElem(BaseFun(1) / (k1 * k1))));
}

SeqSpec term(const TowerElem& f, long start) { return SeqSpec{SeqKind::Term, f, start}; }

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("columns")
{
    auto c = oracle_columns(2, 2, 1);
    CHECK(c.size() == 12);
    CHECK(c[0] == OracleMonomial{0, {0, 0}});
    CHECK(c[1] == OracleMonomial{0, {1, 0}});
    CHECK(c[3] == OracleMonomial{0, {2, 0}});
    CHECK(c[6] == OracleMonomial{1, {0, 0}});
    CHECK(format_monomial(OracleMonomial{2, {1, 3}}) == "n^2*x1*x2^3");
}

TEST_CASE("n and n squared")
{
    OracleQuery q;
    TowerElem k = q.tower.base_var();
    q.sequences = {term(k, 0), term(k * k, 0)};
    q.degree = 2;
    q.from = 1;
    q.to = 30;
    auto rels = oracle_search(q);
    REQUIRE(rels.size() == 1);
    CHECK(format_relation(rels[0]) == "x2 - x1^2");
    CHECK(check_candidate(rels[0], q.tower, q.sequences, 200, 250).pass);
}

TEST_CASE("harmonic numbers of order 1 and 2 are unrelated")
{
    OracleQuery q;
    q.tower = harmonic2_tower();
    q.sequences = {term(q.tower.gen(0), 1), term(q.tower.gen(1), 1)};
    q.degree = 3;
    q.coeff_degree = 3;
    q.from = 1;
    q.to = 150;
    CHECK(oracle_search(q).empty());
}

TEST_CASE("powers of 2, 3 and 6")
{
    OracleQuery q;
    for (long b : {2L, 3L, 6L})
        q.sequences.push_back(SeqSpec{SeqKind::Product, TowerElem(b), 1});
    q.degree = 2;
    q.from = 1;
    q.to = 30;
    auto rels = oracle_search(q);
    REQUIRE(rels.size() == 1);
    CHECK(format_relation(rels[0]) == "x3 - x1*x2");
}

TEST_CASE("undersampled nullspace vectors fail on extension")
{
    OracleQuery q;
    q.tower = harmonic2_tower();
    q.sequences = {term(q.tower.gen(0), 1), term(q.tower.gen(1), 1)};
    q.degree = 3;
    q.coeff_degree = 3;
    q.from = 1;
    q.to = 20;
    CHECK_THROWS_AS(oracle_search(q), InsufficientSamples);
    auto spurious = sample_nullspace(q, std::nullopt);
    REQUIRE(spurious.size() >= 20);
    for (const auto& rel : spurious) {
        CHECK(check_candidate(rel, q.tower, q.sequences, 1, 20).pass);
        CheckResult r = check_candidate(rel, q.tower, q.sequences, 21, 70);
        CHECK_FALSE(r.pass);
        CHECK(r.first_failure >= 21);
    }
}

TEST_CASE("sum of harmonic numbers")
{
    Tower t = admitted(admit_sigma(Tower(), "h", TowerElem(BaseFun(1) / (kfun() + BaseFun(1)))));
    std::vector<SeqSpec> seqs{term(t.gen(0), 1), SeqSpec{SeqKind::Sum, t.gen(0), 1}};
    // x2 - ((n+1) x1 - n)
    OracleRelation rel;
    rel.monomials = {OracleMonomial{0, {1, 0}}, OracleMonomial{0, {0, 1}}, OracleMonomial{1, {0, 0}},
                     OracleMonomial{1, {1, 0}}};
    rel.coeffs = {Rational(-1), Rational(1), Rational(1), Rational(-1)};
    CHECK(check_candidate(rel, t, seqs, 1, 200).pass);
    rel.coeffs[2] = 2;
    CheckResult bad = check_candidate(rel, t, seqs, 1, 200);
    CHECK_FALSE(bad.pass);
    CHECK(bad.first_failure == 1);

    OracleQuery q;
    q.tower = t;
    q.sequences = seqs;
    q.degree = 1;
    q.coeff_degree = 1;
    q.from = 1;
    q.to = 40;
    auto rels = oracle_search(q);
    REQUIRE(rels.size() == 1);
    CHECK(format_relation(rels[0], {"H", "S"}) == "H - S - n + n*H");
}

TEST_CASE("parameterized sequences use several specializations")
{
    Tower t = binomial_harmonic_tower();
    OracleQuery q;
    q.tower = t;
    TowerElem b = t.gen(0);
    q.sequences = {term(b, 1), term(b * b, 1)};
    q.degree = 2;
    q.from = 1;
    q.to = 40;
    auto rels = oracle_search(q);
    REQUIRE(rels.size() == 1);
    REQUIRE(rels[0].param_value.has_value());
    CHECK(*rels[0].param_value == make_rational(7, 3));
    CHECK(format_relation(rels[0]) == "x2 - x1^2");
    // binom(m, n) and the harmonic numbers: nothing at degree 2.
    q.sequences = {term(b, 1), term(t.gen(1), 1)};
    CHECK(oracle_search(q).empty());
}

}  // TEST_SUITE
