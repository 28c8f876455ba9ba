#include "doctest.h"
#include "helpers.hpp"

#include "telecert/errors.hpp"
#include "telecert/solver/telescope.hpp"
#include "telecert/tower/admission.hpp"

using namespace telecert;
using namespace testutil;

namespace {

BaseFun kf() { return BaseFun(kvar()); }
BaseFun mf() { return BaseFun(mvar()); }
BaseFun one() { return BaseFun(1); }

Tower harmonic_tower()
{
    Tower t;
    return admitted(admit_sigma(t, "h", TowerElem(one() / (kf() + one()))));
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("class R: generalized harmonic summands admit no relation")
{
    Tower t;
    BaseFun k = kf();
    std::vector<TowerElem> f;
    for (long e = 1; e <= 4; ++e)
        f.push_back(TowerElem(pow(k, -e)));
    CHECK(classify_problem(t, f) == "R");
    CHECK_FALSE(param_telescope(t, f).has_value());
}

TEST_CASE("class R: telescoping positive control")
{
    Tower t;
    BaseFun k = kf();
    auto s = param_telescope(t, {TowerElem(one() / (k * (k + one())))});
    REQUIRE(s.has_value());
    CHECK(s->c[0] == Constant(1));
    CHECK(s->g == TowerElem(-one() / k));
}

TEST_CASE("class R: parameterized basis over Q(m)")
{
    Tower t(BaseKind::Rational, "k", "m");
    BaseFun k = kf();
    // 1/(k+m) - 1/(k+m+1) telescopes; 1/(k+m) alone does not.
    BaseFun a = one() / (k + mf());
    BaseFun b = one() / (k + mf() + one());
    auto basis = param_telescope_basis(t, {TowerElem(a), TowerElem(b)});
    REQUIRE(basis.size() == 1);
    CHECK(basis[0].c[0] == Constant(1));
    CHECK(basis[0].c[1] == Constant(-1));
    CHECK(check_telescoping(t, {TowerElem(a), TowerElem(b)}, basis[0]));
}

TEST_CASE("class D: sum of harmonic numbers")
{
    Tower t = harmonic_tower();
    TowerElem h = t.gen(0);
    CHECK(classify_problem(t, {h}) == "D");
    auto s = param_telescope(t, {h});
    REQUIRE(s.has_value());
    TowerElem k = t.base_var();
    CHECK(s->g == k * h - k);
}

TEST_CASE("class D: sums of harmonic squares telescope, h/(k+1) does not")
{
    Tower t = harmonic_tower();
    TowerElem h = t.gen(0);
    auto s = param_telescope(t, {h * h});
    REQUIRE(s.has_value());
    CHECK(s->g.degree_in(0) == 2);
    // The sum of h/(k+1) needs the second-order harmonic sum.
    CHECK_FALSE(param_telescope(t, {h.scaled(one() / (kf() + one()))}).has_value());
}

TEST_CASE("class H: k times k factorial")
{
    Tower t = admitted(admit_pi(Tower(), "t", TowerElem(kf() + one())));
    TowerElem f = t.gen(0).scaled(kf());
    CHECK(classify_problem(t, {f}) == "H");
    auto s = param_telescope(t, {f});
    REQUIRE(s.has_value());
    CHECK(s->g == t.gen(0));
    CHECK_FALSE(param_telescope(t, {t.gen(0)}).has_value());
}

TEST_CASE("admission examples")
{
    Tower t;
    BaseFun k = kf();
    auto r1 = admit_sigma(t, "s", TowerElem(1));
    REQUIRE(std::holds_alternative<Rejection>(r1));
    CHECK(std::get<Rejection>(r1).g == TowerElem(k));

    auto r2 = admit_sigma(t, "s", TowerElem(one() / (k * (k + one()))));
    REQUIRE(std::holds_alternative<Rejection>(r2));
    CHECK(std::get<Rejection>(r2).g == TowerElem(-one() / k));

    auto h = admit_sigma(t, "h", TowerElem(one() / (k + one())));
    REQUIRE(std::holds_alternative<Tower>(h));
    CHECK(std::get<Tower>(h).generator(0).seed.r == 1);

    Tower tm(BaseKind::Rational, "k", "m");
    auto b = admit_pi(tm, "b", TowerElem((mf() - k) / (k + one())));
    REQUIRE(std::holds_alternative<Tower>(b));
    CHECK(std::get<Tower>(b).generator(0).seed.r == 1);

    auto r3 = admit_pi(t, "p", TowerElem((k + one()) / k));
    REQUIRE(std::holds_alternative<Rejection>(r3));
    CHECK(std::get<Rejection>(r3).n == 1);
    CHECK(std::get<Rejection>(r3).g == TowerElem(k));

    CHECK(std::holds_alternative<Tower>(admit_pi(t, "p", TowerElem(2))));

    auto r4 = admit_pi(t, "p", TowerElem(-1));
    REQUIRE(std::holds_alternative<Rejection>(r4));
    CHECK(std::get<Rejection>(r4).n == 2);

    // 6^k over a tower holding 2^k and 3^k.
    Tower t23 = admitted(admit_pi(admitted(admit_pi(t, "a", TowerElem(2))), "b", TowerElem(3)));
    auto r5 = admit_pi(t23, "c", TowerElem(6));
    REQUIRE(std::holds_alternative<Rejection>(r5));
    CHECK(std::get<Rejection>(r5).n == 1);
    CHECK(std::get<Rejection>(r5).g == t23.gen(0) * t23.gen(1));

    CHECK_THROWS_AS(admit_pi(std::get<Tower>(h), "p", std::get<Tower>(h).gen(0)), UnsupportedShape);
    CHECK_THROWS_AS(admitted(r1), TowerInvalid);
}

TEST_CASE("admission is idempotent for admitted Sigma generators")
{
    Tower t = harmonic_tower();
    auto again = admit_sigma(Tower(), "h2", t.generator(0).beta);
    CHECK(std::holds_alternative<Tower>(again));
    // A second harmonic-type sum over the first one.
    TowerElem h = t.gen(0);
    auto hh = admit_sigma(t, "g", h.scaled(one() / (kf() + one())));
    CHECK(std::holds_alternative<Tower>(hh));
    auto rej = admit_sigma(t, "g", h);
    CHECK(std::holds_alternative<Rejection>(rej));
}

TEST_CASE("multiplicative examples")
{
    CHECK_FALSE(solve_multiplicative({BaseFun(2), BaseFun(3), BaseFun(5)}).has_value());
    CHECK_FALSE(solve_multiplicative({BaseFun(2), BaseFun(3), BaseFun(5), BaseFun(7)}).has_value());
    auto s = solve_multiplicative({BaseFun(2), BaseFun(3), BaseFun(6)});
    REQUIRE(s.has_value());
    CHECK(s->c == std::vector<long>{1, 1, -1});
    CHECK(s->g == one());
    BaseFun k = kf();
    auto w = solve_multiplicative({(k + one()) / k});
    REQUIRE(w.has_value());
    CHECK(w->c == std::vector<long>{1});
    CHECK(w->g == k);
    auto p = solve_multiplicative({BaseFun(4), BaseFun(Constant(make_rational(1, 8)))});
    REQUIRE(p.has_value());
    CHECK(p->c == std::vector<long>{3, 2});
    auto q = solve_multiplicative({(k + BaseFun(3)) / (k + one()), k + BaseFun(2), k});
    REQUIRE(q.has_value());
    CHECK(q->c == std::vector<long>{1, 0, 0});
}

TEST_CASE("differences of hypergeometric terms")
{
    BaseFun k = kf();
    auto r = diffhyp_telescope({k + one()});
    CHECK_FALSE(r.solution.has_value());
    CHECK(r.gosper_summable == std::vector<bool>{false});

    auto g = diffhyp_telescope({BaseFun(2)});
    REQUIRE(g.solution.has_value());
    CHECK(g.solution->g == g.tower.gen(0));
}

TEST_CASE("zeilberger on binom(m,k)")
{
    BaseFun k = kf();
    BaseFun m = mf();
    auto z = zeilberger((m - k) / (k + one()), (m + one()) / (m + one() - k), 3);
    REQUIRE(z.found);
    CHECK(z.order == 1);
    // 2 binom(m,k) - binom(m+1,k) telescopes.
    CHECK(z.c[0] == Constant(1));
    CHECK(z.c[1] == Constant(make_rational(-1, 2)));
}

TEST_CASE("parameter shift")
{
    BaseFun k = kf();
    BaseFun m = mf();
    CHECK(shift_param((m - k) / (k + one()), 2) == (m + BaseFun(2) - k) / (k + one()));
}

}  // TEST_SUITE
