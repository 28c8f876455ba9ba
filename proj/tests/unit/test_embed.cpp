#include "doctest.h"
#include "tower_fixtures.hpp"

#include "telecert/embed/embed.hpp"
#include "telecert/errors.hpp"

using namespace telecert;
using namespace testutil;

namespace {

Constant binom_m(long j)
{
    // binom(m, j) as an element of Q(m).
    Constant r(1);
    for (long i = 1; i <= j; ++i)
        r = r * (mvar() - Constant(i - 1)) / Constant(i);
    return r;
}

Rational harmonic(long n)
{
    Rational s = 0;
    for (long i = 1; i <= n; ++i)
        s += Rational(1, i);
    s.canonicalize();
    return s;
}

}  // namespace

TEST_SUITE("embed") {

TEST_CASE("ev on the binomial-harmonic tower")
{
    EvContext ctx(binomial_harmonic_tower());
    for (long j = 0; j <= 8; ++j) {
        CHECK(ctx.ev(ctx.tower().gen(0), j) == binom_m(j));
        CHECK(ctx.ev(ctx.tower().gen(1), j) == Constant(harmonic(j)));
    }
    CHECK(ctx.ev(ctx.tower().base_var(), 7) == Constant(7));
}

TEST_CASE("ev of a rational function below its threshold")
{
    Tower t;
    EvContext ctx(t);
    TowerElem f(BaseFun(1) / (kfun() - BaseFun(3)));
    for (long n = 0; n <= 3; ++n)
        CHECK(ctx.ev(f, n).is_zero());
    CHECK(ctx.ev(f, 4) == Constant(1));
    CHECK(ctx.ev(f, 7) == Constant(make_rational(1, 4)));
}

TEST_CASE("o- and z-functions")
{
    Tower t;
    CHECK(o_fn(t, TowerElem(kfun() * kfun() + BaseFun(3))) == 0);
    CHECK(o_fn(t, TowerElem(BaseFun(1) / (kfun() - BaseFun(3)))) == 4);
    CHECK(z_fn(t, TowerElem(kfun() - BaseFun(3))) == 4);
    CHECK(z_fn(t, TowerElem(Constant(make_rational(-2, 3)))) == 0);
    Tower bh = binomial_harmonic_tower();
    CHECK(o_fn(bh, bh.gen(1)) == 1);
    CHECK(z_fn(bh, bh.gen(0)) == bh.generator(0).seed.r);
    // Harmonic numbers are positive from n = 1 on.
    Tower fh = factorial_harmonic_tower();
    CHECK(z_fn(fh, fh.gen(1)) == 1);
    CHECK(z_fn(fh, fh.gen(1) + TowerElem(2)) >= 1);
    // Over Q(m) no sign argument is available for h - m.
    CHECK_THROWS_AS(z_fn(bh, bh.gen(1) - TowerElem(mvar())), ZUndecidable);
}

TEST_CASE("materialize sums and products")
{
    Tower t;
    EvContext ctx(t);
    SeqSpec s{SeqKind::Sum, TowerElem(BaseFun(1) / kfun()), 1};
    auto v = materialize(ctx, s, 5);
    std::vector<Constant> want{Constant(1), Constant(make_rational(3, 2)), Constant(make_rational(11, 6)),
                               Constant(make_rational(25, 12)), Constant(make_rational(137, 60))};
    CHECK(v == want);
    s.start = 0;
    CHECK_THROWS_AS(materialize(ctx, s, 5), StartTooSmall);

    Tower tm(BaseKind::Rational, "k", "m");
    EvContext cm(tm);
    // prod_{k=1}^{n} (m - k + 1)/k = binom(m, n).
    SeqSpec p{SeqKind::Product, TowerElem((mfun() - kfun() + BaseFun(1)) / kfun()), 1};
    auto b = materialize(cm, p, 5);
    for (long j = 1; j <= 5; ++j)
        CHECK(b[static_cast<std::size_t>(j - 1)] == binom_m(j));
}

TEST_CASE("specialized evaluation")
{
    Tower q = q_harmonic_tower();
    for (long qv : {2L, 3L}) {
        EvContext ctx(q, Rational(qv));
        Rational s = 0;
        for (long n = 1; n <= 10; ++n) {
            Rational qn = pow(Rational(qv), n);
            s += Rational(1) / (Rational(1) - qn);
            CHECK(ctx.ev(q.gen(0), n) == Constant(s));
        }
    }
    EvContext gen(q);
    EvContext two(q, Rational(2));
    for (long n = 0; n <= 6; ++n)
        CHECK(Constant(specialize(gen.ev(q.gen(0), n), Rational(2))) == two.ev(q.gen(0), n));

    Tower bh = binomial_harmonic_tower();
    EvContext seven(bh, Rational(7));
    CHECK(seven.ev(bh.gen(0), 3) == Constant(35));
    CHECK(seven.ev(bh.gen(0), 9) == Constant(0));
    CHECK_THROWS_AS(seven.ev(bh.gen(0).times_monomial(Monomial{-2}), 9), SpecializationPole);
}

TEST_CASE("re-seeding a Sigma generator shifts its sequence by a constant")
{
    Tower t;
    TowerElem beta(BaseFun(1) / (kfun() + BaseFun(1)));
    Tower a = admitted(admit_sigma(t, "h", beta));
    Tower b = admitted(admit_sigma(t, "h", beta, Seed{1, Constant(5)}));
    EvContext ca(a);
    EvContext cb(b);
    for (long n = 1; n <= 20; ++n)
        CHECK(cb.ev(b.gen(0), n) - ca.ev(a.gen(0), n) == Constant(5));
    CHECK_THROWS_AS(admit_sigma(t, "h", TowerElem(BaseFun(1) / kfun()), Seed{1, Constant(0)}), StartTooSmall);
}

TEST_CASE("embedding laws on random elements")
{
    std::mt19937 rng(2024);
    int checked_z = 0;
    for (const Tower& t : {factorial_harmonic_tower(), binomial_harmonic_tower(), q_harmonic_tower()}) {
        int pdeg = t.has_param() && t.base() == BaseKind::Rational ? 1 : 0;
        EvContext ctx(t);
        for (int i = 0; i < 12; ++i) {
            TowerElem f = random_elem(rng, t, pdeg);
            TowerElem g = random_elem(rng, t, pdeg);
            long l = std::max(o_fn(t, f), o_fn(t, g));
            for (long n = l; n < l + 4; ++n) {
                CHECK(ctx.ev(f + g, n) == ctx.ev(f, n) + ctx.ev(g, n));
                CHECK(ctx.ev(f * g, n) == ctx.ev(f, n) * ctx.ev(g, n));
            }
            for (long j = -2; j <= 2; ++j) {
                long n0 = o_fn(t, f) + std::max(0L, -j);
                for (long n = n0; n < n0 + 3; ++n)
                    CHECK(ctx.ev(t.shift(f, j), n) == ctx.ev(f, n + j));
            }
            try {
                long z = z_fn(t, f);
                ++checked_z;
                for (long n = z; n < z + 5; ++n)
                    CHECK_FALSE(ctx.ev(f, n).is_zero());
            } catch (const ZUndecidable&) {
            }
            bool nonzero = false;
            for (long n = o_fn(t, f); n <= o_fn(t, f) + 50 && !nonzero; ++n)
                nonzero = !ctx.ev(f, n).is_zero();
            CHECK(nonzero);
        }
    }
    CHECK(checked_z > 0);
}

}  // TEST_SUITE
