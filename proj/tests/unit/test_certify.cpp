#include "doctest.h"
#include "tower_fixtures.hpp"

#include "telecert/certify/json_io.hpp"
#include "telecert/errors.hpp"

using namespace telecert;
using namespace testutil;

namespace {

BaseFun one() { return BaseFun(1); }

Rational binomial(const Rational& m, long k)
{
    Rational r = 1;
    for (long i = 0; i < k; ++i)
        r = r * (m - i) / (i + 1);
    return r;
}

}  // namespace

TEST_SUITE("certify") {

TEST_CASE("generalized harmonic numbers are independent")
{
    BaseFun k = kfun();
    Certificate c = certify_sums(Tower(), {TowerElem(pow(k, -1)), TowerElem(pow(k, -2)), TowerElem(pow(k, -3))});
    CHECK(c.verdict == Verdict::Independent);
    CHECK(c.problem_class == "R");
    CHECK(c.start == 1);
    REQUIRE(c.scan.has_value());
    CHECK(c.scan->relations_found == 0);
    CHECK(c.scan->sequences == std::vector<std::string>{"S1", "S2", "S3"});
    CHECK_THROWS_AS(check_relation(c), std::invalid_argument);
}

TEST_CASE("telescoping positive control")
{
    BaseFun k = kfun();
    Certificate c = certify_sums(Tower(), {TowerElem(one() / (k * (k + one())))});
    REQUIRE(c.verdict == Verdict::Relation);
    CHECK(c.c == std::vector<Constant>{Constant(1)});
    CHECK(c.g == TowerElem(-one() / k));
    REQUIRE(c.verified_range.has_value());
    CHECK(c.verified_range->first == 1);
    CHECK(c.verified_range->second == 200);
    // sum_{k=1}^n 1/(k(k+1)) = g(n+1) - g(1) = 1 - 1/(n+1)
    EvContext ctx(c.tower);
    for (long n = 1; n <= 50; ++n)
        CHECK(ctx.ev(c.g, n + 1) - ctx.ev(c.g, 1) == Constant(1 - make_rational(1, n + 1)));
}

TEST_CASE("corrupted coefficients fail at the start index")
{
    BaseFun k = kfun();
    Certificate c = certify_sums(Tower(), {TowerElem(one() / (k * (k + one())))});
    c.c[0] = Constant(2);
    VerifyReport r = check_relation(c);
    CHECK_FALSE(r.pass);
    CHECK(r.first_failure == c.start);
    CHECK_THROWS_WITH_AS(verify_relation(c), doctest::Contains("n = 1"), VerificationFailed);
}

TEST_CASE("k times k factorial")
{
    Tower t = admitted(admit_pi(Tower(), "t", TowerElem(kfun() + one())));
    Certificate c = certify_sums(t, {t.gen(0).scaled(kfun())});
    REQUIRE(c.verdict == Verdict::Relation);
    CHECK(verify_relation(c, 30).pass);
    // sum_{k=1}^n k k! = (n+1)! - 1 with t(n) = n!
    REQUIRE(c.start == 1);
    EvContext ctx(t);
    Rational fact = 1;
    for (long n = 1; n <= 30; ++n) {
        fact *= n + 1;
        CHECK(ctx.ev(c.g, n + 1) - ctx.ev(c.g, 1) == Constant(fact - 1));
    }
}

TEST_CASE("q-harmonic numbers are independent")
{
    Tower t(BaseKind::QPower, "k", "q");
    BaseFun x = kfun();
    Certificate c = certify_sums(t, {TowerElem(one() / (one() - x))});
    CHECK(c.verdict == Verdict::Independent);
    REQUIRE(c.scan.has_value());
    CHECK(c.scan->param_values.size() == 3);
}

TEST_CASE("products over primes")
{
    Certificate ind = certify_products({BaseFun(2), BaseFun(3), BaseFun(5), BaseFun(7)});
    CHECK(ind.verdict == Verdict::Independent);
    REQUIRE(ind.scan.has_value());
    CHECK(ind.scan->relations_found == 0);

    Certificate rel = certify_products({BaseFun(2), BaseFun(3), BaseFun(6)});
    REQUIRE(rel.verdict == Verdict::Relation);
    CHECK(rel.c == std::vector<Constant>{Constant(1), Constant(1), Constant(-1)});
    CHECK(rel.verified_range.has_value());

    BaseFun k = kfun();
    Certificate w = certify_products({(k + one()) / k});
    REQUIRE(w.verdict == Verdict::Relation);
    CHECK(w.g == TowerElem(k));
    // Distinct shift orbits: k+1 and 2k+1 never align.
    Certificate d = certify_products({k + one(), BaseFun(2) * k + one()});
    CHECK(d.verdict == Verdict::Independent);
}

TEST_CASE("zeilberger certificates for binom(m,k)")
{
    BaseFun k = kfun();
    BaseFun m = mfun();
    BaseFun ak = (m - k) / (k + one());
    BaseFun am = (m + one()) / (m + one() - k);
    ZeilbergerCertificate z = certify_zeilberger(ak, am, 3);
    REQUIRE(z.recurrence.verdict == Verdict::Relation);
    CHECK(z.recurrence.order == 1);
    CHECK(z.recurrence.verified_params.size() == 3);
    REQUIRE(z.independence.has_value());
    CHECK(z.independence->verdict == Verdict::Independent);
    CHECK(z.independence->scan->sequences == std::vector<std::string>{"f(m,n)", "S(m,n)"});

    auto binom = [](const Rational& mv, long kv) { return binomial(mv, kv); };
    verify_recurrence_direct(z.recurrence, binom, {Rational(7), Rational(11), Rational(13)}, 40);
    CHECK(z.recurrence.numeric_checks.size() == 3);
    Certificate bad = z.recurrence;
    bad.c[1] = bad.c[1] + Constant(1);
    CHECK_THROWS_AS(verify_recurrence_direct(bad, binom, {Rational(7)}, 40), VerificationFailed);

    // Order 1 found, so order 0 alone yields an independence certificate.
    ZeilbergerCertificate lower = certify_zeilberger(ak, am, 0);
    CHECK(lower.recurrence.verdict == Verdict::Independent);
    CHECK_FALSE(lower.independence.has_value());

    CHECK_THROWS_AS(certify_zeilberger(ak, am, 3, {}, true), DiagonalSpecialization);
}

TEST_CASE("certificate JSON")
{
    BaseFun k = kfun();
    auto make = [&] { return certificate_to_json(certify_sums(Tower(), {TowerElem(one() / (k * (k + one())))})); };
    Json j = make();
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it)
        keys.push_back(it.key());
    REQUIRE(keys.size() >= 7);
    CHECK(std::vector<std::string>(keys.begin(), keys.begin() + 7) ==
          std::vector<std::string>{"verdict", "class", "c", "g", "tower", "verified_range", "oracle_scan"});
    CHECK(j["verdict"] == "Relation");
    CHECK(j["g"] == "-1/k");
    CHECK(j["c"] == Json::array({"1"}));
    CHECK(j["verified_range"] == Json::array({1, 200}));
    CHECK(j["oracle_scan"].is_null());
    CHECK(make().dump() == j.dump());

    Json ind = certificate_to_json(certify_products({BaseFun(2), BaseFun(3)}));
    CHECK(ind["verdict"] == "Independent");
    CHECK(ind["oracle_scan"]["relations_found"] == 0);
    CHECK(ind["g"].is_null());

    Json tw = tower_to_json(binomial_harmonic_tower());
    CHECK(tw["params"] == Json::array({"m"}));
    CHECK(tw["generators"][0]["kind"] == "pi");
    CHECK(tw["generators"][0]["alpha"] == "(-k + m)/(k + 1)");
    CHECK(tw["generators"][1]["beta"] == "1/(k + 1)");
    CHECK(tw["generators"][1]["seed"]["r"] == 1);
}

}  // TEST_SUITE
