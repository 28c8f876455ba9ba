#include "doctest.h"
#include "tower_fixtures.hpp"

#include "telecert/errors.hpp"

using namespace telecert;
using namespace testutil;

TEST_SUITE("tower") {

TEST_CASE("shift examples")
{
    Tower t = binomial_harmonic_tower();
    TowerElem k = t.base_var();
    CHECK(t.shift(k, 1) == k + TowerElem(1));
    TowerElem h = t.gen(1);
    CHECK(t.shift(h, 1) == h + TowerElem(BaseFun(1) / (kfun() + BaseFun(1))));
    TowerElem b = t.gen(0);
    CHECK(t.shift(b, 1) == b.scaled((mfun() - kfun()) / (kfun() + BaseFun(1))));
    CHECK(t.shift(b, -1) == b.scaled(kfun() / (mfun() - kfun() + BaseFun(1))));
}

TEST_CASE("shift is an automorphism")
{
    std::mt19937 rng(11);
    for (const Tower& t : {factorial_harmonic_tower(), binomial_harmonic_tower(), q_harmonic_tower()}) {
        int pdeg = t.has_param() && t.base() == BaseKind::Rational ? 1 : 0;
        for (int i = 0; i < 15; ++i) {
            TowerElem x = random_elem(rng, t, pdeg);
            TowerElem y = random_elem(rng, t, pdeg);
            CHECK(t.shift(t.shift(x, 3), -3) == x);
            CHECK(t.shift(x * y, 1) == t.shift(x, 1) * t.shift(y, 1));
            CHECK(t.shift(x + y, 1) == t.shift(x, 1) + t.shift(y, 1));
            if (x.is_polynomial())
                CHECK(t.shift(x, 1).is_polynomial());
        }
    }
}

TEST_CASE("structural validation")
{
    Tower t;
    CHECK_THROWS_AS(Tower(BaseKind::QPower, "k", ""), TowerInvalid);
    Generator bad{"s", GenKind::Sigma, TowerElem(2), TowerElem(1), Seed{1, Constant(0)}};
    CHECK_THROWS_AS(t.extended(bad), TowerInvalid);
    Generator zero_seed{"p", GenKind::Pi, TowerElem(2), TowerElem(), Seed{1, Constant(0)}};
    CHECK_THROWS_AS(t.extended(zero_seed), TowerInvalid);
    Generator self{"p", GenKind::Pi, TowerElem::generator(0), TowerElem(), Seed{1, Constant(1)}};
    CHECK_THROWS_AS(t.extended(self), TowerInvalid);
    Tower h = factorial_harmonic_tower();
    Generator dup{"h", GenKind::Pi, TowerElem(2), TowerElem(), Seed{1, Constant(1)}};
    CHECK_THROWS_AS(h.extended(dup), TowerInvalid);
}

TEST_CASE("normalize order examples")
{
    Tower bh = binomial_harmonic_tower();
    std::vector<std::size_t> perm;
    Tower n1 = normalize_order(bh, &perm);
    CHECK(n1.generator(0).name == "b");
    CHECK(n1.generator(1).name == "h");
    CHECK(perm == std::vector<std::size_t>{0, 1});

    Tower hb(BaseKind::Rational, "k", "m");
    hb = admitted(admit_sigma(hb, "h", TowerElem(BaseFun(1) / (kfun() + BaseFun(1)))));
    hb = admitted(admit_pi(hb, "b", TowerElem((mfun() - kfun()) / (kfun() + BaseFun(1)))));
    CHECK_FALSE(hb.is_normalized());
    Tower n2 = normalize_order(hb, &perm);
    CHECK(n2.is_normalized());
    CHECK(n2.generator(0).name == "b");
    CHECK(n2.generator(1).name == "h");
    CHECK(perm == std::vector<std::size_t>{1, 0});
    std::mt19937 rng(5);
    for (int i = 0; i < 10; ++i) {
        TowerElem x = random_elem(rng, hb, 1);
        CHECK(remap(hb.shift(x, 1), perm) == n2.shift(remap(x, perm), 1));
    }

    Tower ps;
    ps = admitted(admit_pi(ps, "p", TowerElem(2)));
    ps = ps.extended(Generator{"s", GenKind::Sigma, TowerElem(1), ps.gen(0), Seed{1, Constant(0)}});
    Tower n3 = normalize_order(ps);
    CHECK(n3.generator(0).name == "p");
    CHECK(n3.generator(1).name == "s");

    Tower bad;
    bad = admitted(admit_sigma(bad, "h", TowerElem(BaseFun(1) / (kfun() + BaseFun(1)))));
    bad = bad.extended(Generator{"p", GenKind::Pi, bad.gen(0), TowerElem(), Seed{1, Constant(1)}});
    CHECK_THROWS_AS(normalize_order(bad), OrderingImpossible);
}

TEST_CASE("formatting of tower elements")
{
    Tower t = binomial_harmonic_tower();
    TowerElem b = t.gen(0);
    TowerElem h = t.gen(1);
    CHECK(t.format(pow(b, 5)) == "b^5");
    CHECK(t.format(b * h) == "b*h");
    CHECK(t.format(b.times_monomial(Monomial{-2})) == "b^(-1)");
}

TEST_CASE("sigma admission with Pi increment")
{
    // s = sum 2^i: beta = p is Pi-dependent, and telescopes as p.
    Tower t;
    t = admitted(admit_pi(t, "p", TowerElem(2)));
    auto r = admit_sigma(t, "s", t.gen(0));
    REQUIRE(std::holds_alternative<Rejection>(r));
    CHECK(std::get<Rejection>(r).g == t.gen(0));
    // sum k! is a genuine extension.
    Tower f = admitted(admit_pi(Tower(), "t", TowerElem(kfun() + BaseFun(1))));
    CHECK(std::holds_alternative<Tower>(admit_sigma(f, "s", f.gen(0))));
}

}  // TEST_SUITE
