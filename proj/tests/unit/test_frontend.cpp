#include "doctest.h"
#include "tower_fixtures.hpp"

#include "telecert/embed/embed.hpp"
#include "telecert/errors.hpp"
#include "telecert/frontend/compile.hpp"
#include "telecert/frontend/expr.hpp"

#include <cstdio>
#include <sys/wait.h>

using namespace telecert;
using namespace testutil;

namespace {

Constant rat(long a, long b = 1) { return Constant(make_rational(a, b)); }

// compile + ev agrees with direct evaluation on [r, r + 50] for every term.
void check_against_direct(const std::string& text, const std::optional<Rational>& pv = std::nullopt)
{
    auto exprs = parse_expr_list(text);
    Compiled c = compile_to_tower(exprs);
    CompileOptions o;
    o.param = detect_param(exprs, o);
    EvContext ctx(c.tower, pv);
    for (std::size_t i = 0; i < exprs.size(); ++i) {
        long r = o_fn(c.tower, c.f[i]);
        for (std::size_t g = 0; g < c.tower.size(); ++g)
            r = std::max(r, c.tower.generator(g).seed.r);
        for (long n = r; n <= r + 50; ++n)
            CHECK_MESSAGE(ctx.ev(c.f[i], n) == eval_direct(exprs[i], n, o, pv), text << " at " << n);
    }
}

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args)
{
    std::string cmd = std::string(TELECERT_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        r.out.append(buf, n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

}  // namespace

TEST_SUITE("frontend") {

TEST_CASE("parse and print")
{
    Expr a = parse_expr("binom(m,k)^2*binom(m+k,k)^2");
    CHECK(print_expr(a) == "binom(m,k)^2*binom(m + k,k)^2");
    Expr b = parse_expr("1/(m*k+1)*(-1)^k*binom(m+1,k)*binom(2*m-2*k-1,m-1)");
    CHECK(print_expr(parse_expr(print_expr(b))) == print_expr(b));
    CHECK(mentions(b, "m"));
    CHECK(parse_expr_list("1/k, 1/k^2, H(k,1)").size() == 3);
    CHECK(print_expr(parse_expr("a-(b-c)")) == "a - (b - c)");
    CHECK(print_expr(parse_expr("(a-b)-c")) == "a - b - c");
    CHECK(print_expr(parse_expr("k^(-2)")) == "k^(-2)");
    CHECK(print_expr(parse_expr("-(k+1)")) == "-(k + 1)");
}

TEST_CASE("syntax errors carry a position")
{
    try {
        parse_expr("binom(m,,");
        FAIL("no error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 1);
        CHECK(e.col() == 9);
        CHECK(e.expected() == "expression");
    }
    CHECK_THROWS_AS(parse_expr("k+"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("binom(k)"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("k)"), SyntaxError);
}

TEST_CASE("harmonic numbers compile to a Sigma generator")
{
    Compiled c = compile_to_tower(parse_expr_list("H(k,1)"));
    REQUIRE(c.tower.size() == 1);
    CHECK_FALSE(c.tower.is_pi(0));
    CHECK(c.tower.generator(0).name == "h");
    CHECK(c.tower.generator(0).beta == TowerElem(BaseFun(1) / (kfun() + BaseFun(1))));
    CHECK(c.f[0] == c.tower.gen(0));
    check_against_direct("H(k,1), H(k+2,2)-1/k, H(k-1,1)");
}

TEST_CASE("binomial times harmonic")
{
    Compiled c = compile_to_tower(parse_expr_list("binom(m,k)^5*(1+5*H(k,1)*(m-2*k))"));
    REQUIRE(c.tower.size() == 2);
    CHECK(c.tower.generator(0).name == "b");
    CHECK(c.tower.generator(1).name == "h");
    CHECK(c.tower.pi_alpha(0) == (mfun() - kfun()) / (kfun() + BaseFun(1)));
    TowerElem b = c.tower.gen(0);
    TowerElem h = c.tower.gen(1);
    CHECK(c.f[0] == pow(b, 5) * (TowerElem(1) + TowerElem(BaseFun(5) * (mfun() - BaseFun(2) * kfun())) * h));
    check_against_direct("binom(m,k)^5*(1+5*H(k,1)*(m-2*k))");
}

TEST_CASE("Apery summand is one kernel")
{
    Compiled c = compile_to_tower(parse_expr_list("binom(m,k)^2*binom(m+k,k)^2"));
    REQUIRE(c.tower.size() == 1);
    BaseFun k = kfun();
    BaseFun m = mfun();
    BaseFun one(1);
    CHECK(c.tower.pi_alpha(0) == (m - k) * (m + k + one) / ((k + one) * (k + one)));
    CHECK(c.f[0] == pow(c.tower.gen(0), 2));
    HyperRatios r = hypergeometric_ratios(parse_expr("binom(m,k)^2*binom(m+k,k)^2"));
    CHECK(r.alpha_k == pow((m - k) * (m + k + one), 2) / pow(k + one, 4));
    CHECK(r.alpha_m == pow((m + one) * (m + k + one), 2) / pow(m - k + one, 2) / pow(m + one, 2));
    check_against_direct("binom(m,k)^2*binom(m+k,k)^2");

    Compiled a = compile_to_tower(parse_expr_list("binom(m,k)^2*binom(m+k,k)"));
    REQUIRE(a.tower.size() == 1);
    BaseFun q = (m - k) / (k + one);
    CHECK(a.tower.pi_alpha(0) == q * q * (m + k + one) / (k + one));
    CHECK(a.f[0] == a.tower.gen(0));
    check_against_direct("binom(m,k)^2*binom(m+k,k)");
}

TEST_CASE("rejected kernels and sums are replaced")
{
    // k! and (k+1)! share a kernel up to a rational factor.
    Compiled c = compile_to_tower(parse_expr_list("factorial(k), factorial(k+1)"));
    CHECK(c.tower.size() == 1);
    check_against_direct("factorial(k), factorial(k+1), k*factorial(k)");
    // sum of 1/(i(i+1)) telescopes.
    Compiled s = compile_to_tower(parse_expr_list("sum(1/(k*(k+1)),1)"));
    CHECK(s.tower.size() == 0);
    check_against_direct("sum(1/(k*(k+1)),1), sum(H(k,1),1)");
    // 4^k against 2^k: 4^k = (2^k)^2 needs no new generator beyond the first.
    check_against_direct("2^k, 3^k, 6^k");
}

TEST_CASE("other atoms agree with direct values")
{
    check_against_direct("pochhammer(1/2,k)/factorial(k), binom(2*k,k)/4^k");
    // Not in Q(m) termwise; only the shift quotients are rational.
    auto abramov = parse_expr("1/(m*k+1)*(-1)^k*binom(m+1,k)*binom(2*m-2*k-1,m-1)");
    Compiled c = compile_to_tower({abramov});
    CHECK(c.tower.size() == 1);
    CHECK(c.notes.size() == 1);
    HyperRatios r = hypergeometric_ratios(abramov);
    BaseFun k = kfun();
    BaseFun m = mfun();
    BaseFun one(1);
    BaseFun two(2);
    CHECK(r.alpha_k == -(m * k + one) / (m * k + m + one) * (m + one - k) / (k + one) *
                           (m - two * k) * (m - two * k - one) /
                           ((two * m - two * k - one) * (two * m - two * k - two)));
    check_against_direct("product((k+1)/k,1), geometric(2/3)");
}

TEST_CASE("q-base lowering")
{
    auto exprs = parse_expr_list("1/(1-qpow(k)), 1/(1-q^k)^2");
    Compiled c = compile_to_tower(exprs);
    CHECK(c.tower.base() == BaseKind::QPower);
    CHECK(c.tower.size() == 0);
    CompileOptions o;
    o.param = "q";
    EvContext ctx(c.tower, Rational(2));
    for (long n = 1; n <= 10; ++n)
        CHECK(ctx.ev(c.f[0], n) == eval_direct(exprs[0], n, o, Rational(2)));
    CHECK(compile_to_tower(parse_expr_list("qpow(k)*k")).tower.base() == BaseKind::Rational);
    CHECK_THROWS_AS(compile_to_tower(parse_expr_list("qpow(k/2)")), NotCompilable);
}

TEST_CASE("direct evaluation")
{
    CompileOptions o;
    CHECK(eval_direct(parse_expr("H(k,1)"), 5) == rat(137, 60));
    CHECK(eval_direct(parse_expr("binom(k,3)"), 2) == rat(0));
    CHECK(eval_direct(parse_expr("binom(-1,k)"), 3) == rat(-1));
    CHECK(eval_direct(parse_expr("factorial(k)"), 6) == rat(720));
    CHECK(eval_direct(parse_expr("pochhammer(k,-2)"), 5) == rat(1, 12));
    o.param = "m";
    CHECK(eval_direct(parse_expr("binom(m,k)"), 2, o) == mvar() * (mvar() - Constant(1)) / Constant(2));
    CHECK(eval_direct(parse_expr("binom(m,k)"), 2, o, Rational(5)) == rat(10));
    CHECK_THROWS_AS(eval_direct(parse_expr("factorial(m)"), 2, o), NotCompilable);
    CHECK_THROWS_AS(eval_direct(parse_expr("1/(k-2)"), 2), NotCompilable);
}

TEST_CASE("errors from compilation")
{
    CHECK_THROWS_AS(compile_to_tower(parse_expr_list("1/(1+H(k,1))")), NotCompilable);
    CHECK_THROWS_AS(compile_to_tower(parse_expr_list("m*n*k")), NotCompilable);
    CHECK_THROWS_AS(compile_to_tower(parse_expr_list("sum(1/k,0)")), StartTooSmall);
    CHECK_THROWS_AS(hypergeometric_ratios(parse_expr("binom(m,k)+factorial(k)")), NotHypergeometric);
    CHECK_THROWS_AS(hypergeometric_ratios(parse_expr("H(k,1)")), NotHypergeometric);
}

TEST_CASE("tower spec documents")
{
    std::string doc = R"J({
        "base": "rational", "var": "k", "params": ["m"],
        "generators": [
            {"name": "b", "kind": "pi", "alpha": "(m-k)/(k+1)", "seed": {"r": 1, "c": "1"}},
            {"name": "h", "kind": "sigma", "beta": "1/(k+1)"}
        ],
        "summands": ["b^5*(1+5*h*(m-2*k))"]
    })J";
    TowerSpecDoc d = load_tower_spec(doc);
    REQUIRE(d.tower.size() == 2);
    CHECK(d.tower.generator(0).seed.c == Constant(1));
    CHECK(d.summands.size() == 1);
    EvContext ctx(d.tower);
    CHECK(ctx.ev(d.tower.gen(0), 2) == mvar() * (mvar() - Constant(1)) / Constant(2));
    std::string bad = R"J({"generators": [{"name": "p", "kind": "pi", "alpha": "(k+2)/(k+1)"}]})J";
    CHECK_THROWS_AS(load_tower_spec(bad), TowerInvalid);
    CHECK_THROWS_AS(load_tower_spec("{\"generators\": [{\"kind\": \"pi\"}]}"), std::invalid_argument);
    CHECK_THROWS_AS(load_tower_spec("not json"), std::invalid_argument);
}

TEST_CASE("command line")
{
    RunResult ind = run_cli("independent --terms \"1/k,1/k^2,1/k^3\"");
    CHECK(ind.code == 0);
    CHECK(ind.out.find("\"verdict\": \"Independent\"") != std::string::npos);
    CHECK(ind.out.find("\"relations_found\": 0") != std::string::npos);
    CHECK(run_cli("independent --terms \"1/k,1/k^2,1/k^3\"").out == ind.out);

    RunResult z = run_cli("zeilberger --summand \"binom(m,k)^2*binom(m+k,k)\" --max-order 4");
    CHECK(z.code == 0);
    CHECK(z.out.find("\"order\": 2") != std::string::npos);
    CHECK(z.out.find("\"numeric_checks\"") != std::string::npos);

    RunResult e = run_cli("eval --expr \"H(k,1)\" --to 5 --format text");
    CHECK(e.code == 0);
    CHECK(e.out == "1, 3/2, 11/6, 25/12, 137/60\n");

    RunResult p = run_cli("products --terms \"2,3,6\" --format text");
    CHECK(p.code == 0);
    CHECK(p.out.find("c3 = -1") != std::string::npos);

    RunResult o = run_cli("oracle --terms \"2^k,3^k,6^k\" --degree 2 --coeff-degree 0");
    CHECK(o.code == 0);
    CHECK(o.out.find("\"x1*x2\": \"-1\"") != std::string::npos);

    RunResult t = run_cli("tower-check --terms \"binom(m,k)^5*(1+5*H(k,1)*(m-2*k))\"");
    CHECK(t.code == 0);
    CHECK(t.out.find("\"beta\": \"1/(k + 1)\"") != std::string::npos);

    CHECK(run_cli("eval --expr \"binom(m,,\"").code == 1);
    CHECK(run_cli("telescope --terms \"sum(1/k,0)\"").code == 1);
    CHECK(run_cli("independent").code == 1);
    CHECK(run_cli("zeilberger --summand \"binom(m,k)\" --diagonal").code == 2);
    CHECK(run_cli("zeilberger --summand \"H(k,1)*binom(m,k)\"").code == 2);
    CHECK(run_cli("telescope --terms \"1/(1+H(k,1))\"").code == 2);
}

}  // TEST_SUITE
