#include "telecert/frontend/compile.hpp"

#include "telecert/algebra/shift.hpp"
#include "telecert/embed/embed.hpp"
#include "telecert/errors.hpp"
#include "telecert/solver/telescope.hpp"
#include "telecert/tower/admission.hpp"

#include "json.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace telecert {

namespace {

bool integer_constant(const Constant& c, Integer& out)
{
    if (!c.is_constant())
        return false;
    Rational v = c.is_zero() ? Rational(0) : c.constant_value();
    if (v.get_den() != 1)
        return false;
    out = v.get_num();
    return true;
}

long to_long(const Integer& z, const std::string& what)
{
    if (!z.fits_slong_p())
        throw NotCompilable(what + " is too large");
    return z.get_si();
}

// Gamma(a + d + 1) / Gamma(a + 1).
BaseFun gamma_quotient(const BaseFun& a, long d)
{
    BaseFun r(1);
    if (d > 0)
        for (long j = 1; j <= d; ++j)
            r *= a + BaseFun(j);
    else
        for (long j = 0; j < -d; ++j)
            r /= a - BaseFun(j);
    return r;
}

// a = p*var + s with integer p and s free of var.
struct Linear {
    long p = 0;
    Constant s;
};

std::optional<Linear> linear_form(const BaseFun& a)
{
    if (!a.is_polynomial() || a.num().degree() > 1)
        return std::nullopt;
    Linear l;
    l.s = a.num().degree() >= 0 ? a.num()[0] : Constant(0);
    if (a.num().degree() == 1) {
        Integer p;
        if (!integer_constant(a.num()[1], p))
            return std::nullopt;
        l.p = to_long(p, "coefficient");
    }
    return l;
}

// Shift of a var-free constant under param -> param + 1: integer difference or nothing.
std::optional<long> param_step(const Constant& s)
{
    Constant d = s.shifted(Rational(1)) - s;
    Integer u;
    if (!integer_constant(d, u))
        return std::nullopt;
    return to_long(u, "parameter coefficient");
}

TowerElem invert(const TowerElem& x, const std::function<bool(std::size_t)>& is_sigma)
{
    if (x.is_zero())
        throw NotCompilable("division by zero");
    if (x.is_base())
        return TowerElem(BaseFun(1) / x.base_value());
    if (!x.is_monomial())
        throw NotCompilable("division by a sum of several terms that involve generators");
    const auto& [m, c] = *x.terms().begin();
    Monomial inv(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] != 0 && is_sigma(i))
            throw NotCompilable("division by a harmonic-type sum");
        inv[i] = -m[i];
    }
    return TowerElem::term(trim_monomial(inv), BaseFun(1) / c);
}

TowerElem power(const TowerElem& x, long e, const std::function<bool(std::size_t)>& is_sigma)
{
    if (e >= 0)
        return pow(x, static_cast<unsigned>(e));
    return pow(invert(x, is_sigma), static_cast<unsigned>(-e));
}

// Arithmetic over var and the parameter only (arguments of atoms).
BaseFun rational_of(const Expr& e, const std::string& var, const std::string& param)
{
    switch (e.kind) {
    case ExprKind::Integer:
        return BaseFun(Constant(Rational(e.value)));
    case ExprKind::Symbol:
        if (e.name == var)
            return BaseFun::variable();
        if (!param.empty() && e.name == param)
            return BaseFun(Constant::variable());
        throw NotCompilable("unknown symbol '" + e.name + "' in an argument");
    case ExprKind::Neg:
        return -rational_of(e.args[0], var, param);
    case ExprKind::Add:
        return rational_of(e.args[0], var, param) + rational_of(e.args[1], var, param);
    case ExprKind::Sub:
        return rational_of(e.args[0], var, param) - rational_of(e.args[1], var, param);
    case ExprKind::Mul:
        return rational_of(e.args[0], var, param) * rational_of(e.args[1], var, param);
    case ExprKind::Div: {
        BaseFun d = rational_of(e.args[1], var, param);
        if (d.is_zero())
            throw NotCompilable("division by zero");
        return rational_of(e.args[0], var, param) / d;
    }
    case ExprKind::Pow: {
        const Expr& x = e.args[1];
        if (x.kind == ExprKind::Symbol)
            throw NotCompilable("symbolic exponent inside an argument");
        long n = x.kind == ExprKind::Neg ? -to_long(x.args[0].value, "exponent") : to_long(x.value, "exponent");
        BaseFun b = rational_of(e.args[0], var, param);
        if (n < 0 && b.is_zero())
            throw NotCompilable("division by zero");
        return pow(b, n);
    }
    case ExprKind::Call:
        break;
    }
    throw NotCompilable("function call " + e.name + " inside an argument");
}

long integer_argument(const Expr& e, const std::string& var, const std::string& param, const std::string& what)
{
    BaseFun v = rational_of(e, var, param);
    Integer z;
    if (!v.is_constant() || !integer_constant(v.is_zero() ? Constant(0) : v.constant_value(), z))
        throw NotCompilable(what + " must be an integer");
    return to_long(z, what);
}

struct HyperAtom {
    std::string key;
    Expr expr;  // direct evaluation
    std::string hint;
    std::vector<std::pair<BaseFun, int>> facs;  // Gamma(a + 1)^e
    Constant geo = Constant(1);
    std::optional<BaseFun> product_body;
    long min_r = 0;

    BaseFun alpha_k() const
    {
        BaseFun r(geo);
        for (const auto& [a, e] : facs) {
            auto l = linear_form(a);
            r *= pow(gamma_quotient(a, l->p), e);
        }
        if (product_body)
            r *= product_body->shifted(Constant(1));
        return r;
    }

    BaseFun alpha_m() const
    {
        if (product_body)
            throw NotHypergeometric("product(" + print_expr(expr.args[0]) + ", ...) has no rational parameter shift");
        if (!geo.is_constant())
            throw NotHypergeometric("geometric base depends on the parameter");
        BaseFun r(1);
        for (const auto& [a, e] : facs) {
            auto u = param_step(linear_form(a)->s);
            if (!u)
                throw NotHypergeometric("argument " + print_expr(expr) + " moves by a non-integer under the parameter shift");
            r *= pow(gamma_quotient(a, *u), e);
        }
        return r;
    }
};

struct SumAtom {
    std::string key;
    std::string hint;
    TowerElem body;
    long lo = 1;
};

struct Slot {
    bool sigma = false;
    std::size_t index = 0;
};

// Lowering into a provisional ring with one index per atom.
class Provisional {
public:
    Provisional(BaseKind base, std::string var, std::string param)
        : base_(base), var_(std::move(var)), param_(std::move(param))
    {
    }

    std::vector<HyperAtom> hyper;
    std::vector<SumAtom> sums;
    std::vector<Slot> slots;

    bool is_sigma(std::size_t i) const { return i < slots.size() && slots[i].sigma; }

    TowerElem lower(const Expr& e)
    {
        auto sig = [this](std::size_t i) { return is_sigma(i); };
        switch (e.kind) {
        case ExprKind::Integer:
            return TowerElem(Constant(Rational(e.value)));
        case ExprKind::Symbol:
            if (e.name == var_) {
                if (base_ == BaseKind::QPower)
                    throw NotCompilable("on the q-base the variable " + var_ + " may only appear as qpow(" + var_ + ")");
                return TowerElem(BaseFun::variable());
            }
            if (!param_.empty() && e.name == param_)
                return TowerElem(Constant::variable());
            throw NotCompilable("unknown symbol '" + e.name + "'");
        case ExprKind::Neg:
            return -lower(e.args[0]);
        case ExprKind::Add:
            return lower(e.args[0]) + lower(e.args[1]);
        case ExprKind::Sub:
            return lower(e.args[0]) - lower(e.args[1]);
        case ExprKind::Mul:
            return lower(e.args[0]) * lower(e.args[1]);
        case ExprKind::Div:
            return lower(e.args[0]) * invert(lower(e.args[1]), sig);
        case ExprKind::Pow:
            return lower_pow(e);
        case ExprKind::Call:
            return lower_call(e);
        }
        return TowerElem();
    }

private:
    TowerElem lower_pow(const Expr& e)
    {
        const Expr& x = e.args[1];
        if (x.kind == ExprKind::Symbol) {
            if (x.name != var_)
                throw NotCompilable("exponent must be an integer or " + var_);
            BaseFun b = rational_of(e.args[0], var_, param_);
            if (!b.is_constant())
                throw NotCompilable("base of a power with exponent " + var_ + " must be constant");
            Constant c = b.is_zero() ? Constant(0) : b.constant_value();
            if (base_ == BaseKind::QPower) {
                if (c == Constant::variable())
                    return TowerElem(BaseFun::variable());
                throw NotCompilable("on the q-base only q^" + var_ + " is supported");
            }
            return geometric(c, e.args[0]);
        }
        long n = x.kind == ExprKind::Neg ? -to_long(x.args[0].value, "exponent") : to_long(x.value, "exponent");
        return power(lower(e.args[0]), n, [this](std::size_t i) { return is_sigma(i); });
    }

    TowerElem geometric(const Constant& c, const Expr& base_expr)
    {
        if (c.is_zero())
            throw NotCompilable("geometric term with base 0");
        if (c == Constant(1))
            return TowerElem(1);
        HyperAtom a;
        a.expr = Expr::call("geometric", {base_expr});
        a.key = print_expr(a.expr);
        a.hint = "g";
        a.geo = c;
        return atom(std::move(a));
    }

    TowerElem atom(HyperAtom a)
    {
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (!slots[i].sigma && hyper[slots[i].index].key == a.key)
                return TowerElem::generator(i);
        if (base_ == BaseKind::QPower)
            throw NotCompilable("hypergeometric atom " + a.key + " is not available on the q-base");
        slots.push_back(Slot{false, hyper.size()});
        hyper.push_back(std::move(a));
        return TowerElem::generator(slots.size() - 1);
    }

    TowerElem sum_atom(SumAtom s)
    {
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (slots[i].sigma && sums[slots[i].index].key == s.key)
                return TowerElem::generator(i);
        slots.push_back(Slot{true, sums.size()});
        sums.push_back(std::move(s));
        return TowerElem::generator(slots.size() - 1);
    }

    Linear linear_arg(const Expr& a)
    {
        auto l = linear_form(rational_of(a, var_, param_));
        if (!l)
            throw NotCompilable("argument " + print_expr(a) + " must be linear in " + var_ + " with integer coefficient");
        return *l;
    }

    TowerElem constant_call(const Expr& e)
    {
        CompileOptions o{var_, param_};
        return TowerElem(eval_direct(e, 0, o));
    }

    TowerElem lower_call(const Expr& e)
    {
        const std::string& f = e.name;
        const auto& a = e.args;
        if (f == "qpow") {
            Linear l = linear_arg(a[0]);
            Integer s;
            if (!integer_constant(l.s, s))
                throw NotCompilable("qpow argument must be " + var_ + " plus an integer");
            if (param_.empty())
                throw NotCompilable("qpow needs the parameter q");
            TowerElem shift(pow(Constant::variable(), to_long(s, "qpow shift")));
            if (l.p == 0)
                return shift;
            if (base_ == BaseKind::QPower)
                return shift * TowerElem(pow(BaseFun::variable(), l.p));
            Expr q = Expr::symbol(param_);
            Expr qp = l.p == 1 ? q : Expr::binary(ExprKind::Pow, q, Expr::integer(Integer(l.p)));
            return shift * geometric(pow(Constant::variable(), l.p), qp);
        }
        if (f == "geometric") {
            BaseFun c = rational_of(a[0], var_, param_);
            if (!c.is_constant())
                throw NotCompilable("geometric base must not depend on " + var_);
            if (base_ == BaseKind::QPower)
                throw NotCompilable("geometric terms are not available on the q-base");
            return geometric(c.is_zero() ? Constant(0) : c.constant_value(), a[0]);
        }
        if (f == "factorial") {
            Linear l = linear_arg(a[0]);
            if (l.p == 0)
                return constant_call(e);
            HyperAtom h;
            h.expr = e;
            h.key = print_expr(e);
            h.hint = "t";
            h.facs = {{rational_of(a[0], var_, param_), 1}};
            return atom(std::move(h));
        }
        if (f == "binom") {
            BaseFun top = rational_of(a[0], var_, param_);
            BaseFun bot = rational_of(a[1], var_, param_);
            Linear lb = linear_arg(a[1]);
            Linear lt = linear_arg(a[0]);
            Integer j;
            // Fixed integer lower index or complement: a polynomial.
            for (int pass = 0; pass < 2; ++pass) {
                BaseFun low = pass == 0 ? bot : top - bot;
                auto l = linear_form(low);
                if (l && l->p == 0 && integer_constant(l->s, j)) {
                    long n = to_long(j, "binomial index");
                    if (n < 0)
                        return TowerElem();
                    BaseFun r(1);
                    for (long i = 0; i < n; ++i)
                        r = r * (top - BaseFun(i)) / BaseFun(i + 1);
                    return TowerElem(r);
                }
            }
            if (lt.p == 0 && lb.p == 0)
                return constant_call(e);
            HyperAtom h;
            h.expr = e;
            h.key = print_expr(e);
            h.hint = "b";
            h.facs = {{top, 1}, {bot, -1}, {top - bot, -1}};
            return atom(std::move(h));
        }
        if (f == "pochhammer") {
            BaseFun x = rational_of(a[0], var_, param_);
            BaseFun n = rational_of(a[1], var_, param_);
            Integer j;
            if (n.is_constant() && integer_constant(n.is_zero() ? Constant(0) : n.constant_value(), j)) {
                long c = to_long(j, "pochhammer length");
                BaseFun r(1);
                if (c >= 0)
                    for (long i = 0; i < c; ++i)
                        r *= x + BaseFun(i);
                else
                    for (long i = 1; i <= -c; ++i)
                        r /= x - BaseFun(i);
                return TowerElem(r);
            }
            Linear lx = linear_arg(a[0]);
            Linear ln = linear_arg(a[1]);
            if (lx.p + ln.p == 0 && lx.p == 0)
                return constant_call(e);
            HyperAtom h;
            h.expr = e;
            h.key = print_expr(e);
            h.hint = "p";
            h.facs = {{x + n - BaseFun(1), 1}, {x - BaseFun(1), -1}};
            return atom(std::move(h));
        }
        if (f == "H") {
            if (base_ == BaseKind::QPower)
                throw NotCompilable("H is not available on the q-base");
            Linear l = linear_arg(a[0]);
            Integer s;
            if (l.p != 1 || !integer_constant(l.s, s))
                throw NotCompilable("H needs " + var_ + " plus an integer as first argument");
            long order = integer_argument(a[1], var_, param_, "harmonic order");
            if (order < 1)
                throw NotCompilable("harmonic order must be at least 1");
            SumAtom sa;
            sa.key = "H(" + var_ + "," + std::to_string(order) + ")";
            sa.hint = order == 1 ? "h" : "h" + std::to_string(order);
            BaseFun k = BaseFun::variable();
            sa.body = TowerElem(pow(k, -order));
            sa.lo = 1;
            TowerElem h = sum_atom(std::move(sa));
            // H(k + s) = H(k) plus or minus the boundary terms.
            long sh = to_long(s, "shift");
            for (long j = 1; j <= sh; ++j)
                h += TowerElem(pow(k + BaseFun(j), -order));
            for (long j = 0; j < -sh; ++j)
                h -= TowerElem(pow(k - BaseFun(j), -order));
            return h;
        }
        if (f == "sum" || f == "product") {
            long lo = integer_argument(a[1], var_, param_, "lower bound");
            TowerElem body = lower(a[0]);
            if (f == "sum") {
                SumAtom sa;
                sa.key = print_expr(e);
                sa.hint = "s";
                sa.body = body;
                sa.lo = lo;
                return sum_atom(std::move(sa));
            }
            if (!body.is_base())
                throw NotCompilable("product bodies must be rational in " + var_);
            HyperAtom h;
            h.expr = e;
            h.key = print_expr(e);
            h.hint = "p";
            h.product_body = body.base_value();
            h.min_r = lo;
            return atom(std::move(h));
        }
        throw NotCompilable("unsupported function " + f);
    }

    BaseKind base_;
    std::string var_;
    std::string param_;
};

void collect_symbols(const Expr& e, std::set<std::string>& out, bool& uses_qpow)
{
    if (e.kind == ExprKind::Symbol)
        out.insert(e.name);
    if (e.kind == ExprKind::Call && e.name == "qpow")
        uses_qpow = true;
    for (const auto& a : e.args)
        collect_symbols(a, out, uses_qpow);
}

// Whether any atom other than qpow / q^var needs the rational base.
bool needs_rational_base(const Expr& e, const std::string& var, const std::string& param)
{
    if (e.kind == ExprKind::Call && e.name != "qpow" && e.name != "sum")
        return true;
    if (e.kind == ExprKind::Symbol && e.name == var)
        return true;
    if (e.kind == ExprKind::Pow && e.args[1].kind == ExprKind::Symbol) {
        const Expr& b = e.args[0];
        if (!(b.kind == ExprKind::Symbol && b.name == param))
            return true;
        return false;
    }
    if (e.kind == ExprKind::Call && e.name == "qpow")
        return false;
    for (const auto& a : e.args)
        if (needs_rational_base(a, var, param))
            return true;
    return false;
}

bool uses_q(const std::vector<Expr>& exprs, const std::string& var, const std::string& param)
{
    if (param.empty())
        return false;
    std::function<bool(const Expr&)> walk = [&](const Expr& e) {
        if (e.kind == ExprKind::Call && e.name == "qpow")
            return true;
        if (e.kind == ExprKind::Pow && e.args[1].kind == ExprKind::Symbol && e.args[1].name == var &&
            e.args[0].kind == ExprKind::Symbol && e.args[0].name == param)
            return true;
        for (const auto& a : e.args)
            if (walk(a))
                return true;
        return false;
    };
    return std::any_of(exprs.begin(), exprs.end(), walk);
}

std::string unique_name(const std::string& hint, std::set<std::string>& used)
{
    std::string n = hint;
    for (int i = 2; used.count(n) || function_arity(n) >= 0; ++i)
        n = hint + "_" + std::to_string(i);
    used.insert(n);
    return n;
}

std::vector<int> primitive_direction(const std::vector<int>& e, int& scale)
{
    int g = 0;
    for (int x : e)
        g = std::gcd(g, std::abs(x));
    int sign = 1;
    for (int x : e)
        if (x != 0) {
            sign = x > 0 ? 1 : -1;
            break;
        }
    scale = g * sign;
    std::vector<int> d(e.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        d[i] = e[i] / scale;
    return d;
}

}  // namespace

std::string detect_param(const std::vector<Expr>& exprs, const CompileOptions& opts,
                         const std::vector<std::string>& reserved)
{
    if (!opts.param.empty())
        return opts.param;
    std::set<std::string> syms;
    bool qp = false;
    for (const auto& e : exprs)
        collect_symbols(e, syms, qp);
    syms.erase(opts.var);
    for (const auto& r : reserved)
        syms.erase(r);
    if (syms.size() > 1)
        throw NotCompilable("at most one parameter is supported, found " + std::to_string(syms.size()));
    if (syms.empty())
        return qp ? "q" : "";
    return *syms.begin();
}

Compiled compile_to_tower(const std::vector<Expr>& exprs, const CompileOptions& opts)
{
    std::string param = detect_param(exprs, opts);
    bool qbase = uses_q(exprs, opts.var, param) &&
                 std::none_of(exprs.begin(), exprs.end(),
                              [&](const Expr& e) { return needs_rational_base(e, opts.var, param); });
    BaseKind base = qbase ? BaseKind::QPower : BaseKind::Rational;
    Provisional pv(base, opts.var, param);
    std::vector<TowerElem> prov;
    for (const auto& e : exprs)
        prov.push_back(pv.lower(e));

    Compiled out;
    Tower t(base, opts.var, param);
    std::set<std::string> used{opts.var};
    if (!param.empty())
        used.insert(param);

    // Hypergeometric exponent vectors, in order of appearance.
    std::size_t nh = pv.hyper.size();
    auto hyper_part = [&](const Monomial& m) {
        std::vector<int> e(nh, 0);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0 && !pv.slots[i].sigma)
                e[pv.slots[i].index] = m[i];
        return e;
    };
    std::vector<std::vector<int>> dirs;
    auto scan = [&](const TowerElem& x) {
        for (const auto& [m, c] : x.terms()) {
            auto e = hyper_part(m);
            if (std::all_of(e.begin(), e.end(), [](int v) { return v == 0; }))
                continue;
            int s = 0;
            auto d = primitive_direction(e, s);
            if (std::find(dirs.begin(), dirs.end(), d) == dirs.end())
                dirs.push_back(d);
        }
    };
    for (const auto& sa : pv.sums)
        scan(sa.body);
    for (const auto& x : prov)
        scan(x);

    CompileOptions copts{opts.var, param};
    auto kernel_value = [&](const std::vector<int>& d, long k0) -> std::optional<Constant> {
        Constant v(1);
        try {
            for (std::size_t i = 0; i < nh; ++i) {
                if (d[i] == 0)
                    continue;
                Constant a = eval_direct(pv.hyper[i].expr, k0, copts);
                if (a.is_zero() && d[i] < 0)
                    return std::nullopt;
                v *= pow(a, static_cast<long>(d[i]));
            }
        } catch (const NotCompilable&) {
            return std::nullopt;
        }
        return v;
    };

    std::map<std::vector<int>, TowerElem> kernels;
    for (const auto& d : dirs) {
        BaseFun alpha(1);
        long min_r = 0;
        std::string hint = "t";
        int nonzero = 0;
        for (std::size_t i = 0; i < nh; ++i) {
            if (d[i] == 0)
                continue;
            ++nonzero;
            alpha *= pow(pv.hyper[i].alpha_k(), static_cast<long>(d[i]));
            min_r = std::max(min_r, pv.hyper[i].min_r);
            if (d[i] == 1)
                hint = pv.hyper[i].hint;
        }
        if (nonzero > 1)
            hint = "t";
        std::string name = unique_name(hint, used);
        Seed seed = default_pi_seed(t, alpha);
        seed.r = std::max(seed.r, min_r);
        auto c = kernel_value(d, seed.r - 1);
        if (c && !c->is_zero()) {
            seed.c = *c;
        } else {
            seed.c = Constant(1);
            out.notes.push_back(name + " is normalized to 1 at " + opts.var + " = " + std::to_string(seed.r - 1));
        }
        auto adm = admit_pi(t, name, TowerElem(alpha), seed);
        if (auto* tw = std::get_if<Tower>(&adm)) {
            t = *tw;
            kernels[d] = t.gen(t.size() - 1);
            continue;
        }
        const Rejection& rej = std::get<Rejection>(adm);
        if (rej.n != 1)
            throw NotCompilable("a kernel is a root of unity power times a rational function (" + rej.reason +
                                "); this case is excluded from the hypergeometric theorems");
        // The kernel is C * g with g over earlier generators.
        EvContext ctx(t);
        std::optional<Constant> scale;
        long k0 = std::max(o_fn(t, rej.g), seed.r);
        for (long k = k0; k < k0 + 20 && !scale; ++k) {
            auto v = kernel_value(d, k);
            Constant gv = ctx.ev(rej.g, k);
            if (v && !gv.is_zero())
                scale = *v / gv;
        }
        if (!scale)
            throw NotCompilable("kernel " + name + " is a multiple of earlier kernels by a factor outside the constant field");
        kernels[d] = rej.g.scaled(BaseFun(*scale));
    }

    std::vector<TowerElem> sum_repl(pv.sums.size());
    auto translate = [&](const TowerElem& x) {
        TowerElem r;
        for (const auto& [m, c] : x.terms()) {
            TowerElem term(c);
            auto e = hyper_part(m);
            if (std::any_of(e.begin(), e.end(), [](int v) { return v != 0; })) {
                int s = 0;
                auto d = primitive_direction(e, s);
                term *= power(kernels.at(d), s, [&](std::size_t i) { return !t.is_pi(i); });
            }
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] != 0 && pv.slots[i].sigma)
                    term *= pow(sum_repl[pv.slots[i].index], static_cast<unsigned>(m[i]));
            r += term;
        }
        return r;
    };

    for (std::size_t j = 0; j < pv.sums.size(); ++j) {
        const SumAtom& sa = pv.sums[j];
        TowerElem body = translate(sa.body);
        TowerElem beta = t.shift(body, 1);
        long lbody = o_fn(t, body);
        if (sa.lo < lbody)
            throw StartTooSmall("sum " + sa.key + " starts at " + std::to_string(sa.lo) +
                                " but its summand is defined from " + std::to_string(lbody));
        Seed seed = default_sigma_seed(t, beta);
        seed.r = std::max(seed.r, sa.lo);
        {
            EvContext ctx(t);
            Constant c(0);
            for (long i = sa.lo; i < seed.r; ++i)
                c += ctx.ev(body, i);
            seed.c = c;
        }
        std::string name = unique_name(sa.hint, used);
        auto adm = admit_sigma(t, name, beta, seed);
        if (auto* tw = std::get_if<Tower>(&adm)) {
            t = *tw;
            sum_repl[j] = t.gen(t.size() - 1);
            continue;
        }
        // The sum telescopes: sum_{i=lo}^{k} body(i) = g(k) + body(lo) - g(lo).
        const Rejection& rej = std::get<Rejection>(adm);
        EvContext ctx(t);
        long at = std::max(sa.lo, o_fn(t, rej.g));
        Constant c(0);
        for (long i = sa.lo; i <= at; ++i)
            c += ctx.ev(body, i);
        sum_repl[j] = rej.g + TowerElem(c - ctx.ev(rej.g, at));
    }

    out.tower = t;
    for (const auto& x : prov)
        out.f.push_back(translate(x));
    return out;
}

HyperRatios hypergeometric_ratios(const Expr& summand, const CompileOptions& opts)
{
    HyperRatios r;
    r.param = detect_param({summand}, opts);
    Provisional pv(BaseKind::Rational, opts.var, r.param);
    TowerElem x = pv.lower(summand);
    if (!pv.sums.empty())
        throw NotHypergeometric("the summand involves sums");
    if (x.is_zero())
        throw NotHypergeometric("the summand is zero");
    std::optional<Monomial> mono;
    BaseFun coeff;
    for (const auto& [m, c] : x.terms()) {
        if (mono && *mono != m)
            throw NotHypergeometric("the summand is a sum of several hypergeometric kernels");
        mono = m;
        coeff += c;
    }
    r.alpha_k = coeff.shifted(Constant(1)) / coeff;
    r.alpha_m = shift_param(coeff, 1) / coeff;
    for (std::size_t i = 0; i < mono->size(); ++i) {
        int e = (*mono)[i];
        if (e == 0)
            continue;
        const HyperAtom& a = pv.hyper[pv.slots[i].index];
        r.alpha_k *= pow(a.alpha_k(), static_cast<long>(e));
        r.alpha_m *= pow(a.alpha_m(), static_cast<long>(e));
    }
    return r;
}

TowerElem lower_in_tower(const Expr& e, const Tower& t)
{
    auto sig = [&t](std::size_t i) { return !t.is_pi(i); };
    const std::string& var = t.var();
    switch (e.kind) {
    case ExprKind::Integer:
        return TowerElem(Constant(Rational(e.value)));
    case ExprKind::Symbol: {
        if (e.name == var) {
            if (t.base() == BaseKind::QPower)
                throw NotCompilable("on the q-base the variable may only appear as qpow(" + var + ")");
            return t.base_var();
        }
        if (t.has_param() && e.name == t.param())
            return TowerElem(Constant::variable());
        int g = t.find(e.name);
        if (g < 0)
            throw NotCompilable("unknown symbol '" + e.name + "'");
        return t.gen(static_cast<std::size_t>(g));
    }
    case ExprKind::Neg:
        return -lower_in_tower(e.args[0], t);
    case ExprKind::Add:
        return lower_in_tower(e.args[0], t) + lower_in_tower(e.args[1], t);
    case ExprKind::Sub:
        return lower_in_tower(e.args[0], t) - lower_in_tower(e.args[1], t);
    case ExprKind::Mul:
        return lower_in_tower(e.args[0], t) * lower_in_tower(e.args[1], t);
    case ExprKind::Div:
        return lower_in_tower(e.args[0], t) * invert(lower_in_tower(e.args[1], t), sig);
    case ExprKind::Pow: {
        const Expr& x = e.args[1];
        if (x.kind == ExprKind::Symbol) {
            const Expr& b = e.args[0];
            if (t.base() == BaseKind::QPower && x.name == var && b.kind == ExprKind::Symbol && b.name == t.param())
                return t.base_var();
            throw NotCompilable("symbolic exponents are not allowed in tower expressions");
        }
        long n = x.kind == ExprKind::Neg ? -to_long(x.args[0].value, "exponent") : to_long(x.value, "exponent");
        return power(lower_in_tower(e.args[0], t), n, sig);
    }
    case ExprKind::Call: {
        if (e.name == "qpow" && t.base() == BaseKind::QPower) {
            auto l = linear_form(rational_of(e.args[0], var, t.param()));
            Integer s;
            if (!l || l->p < 0 || !integer_constant(l->s, s))
                throw NotCompilable("qpow argument must be " + var + " plus an integer");
            return TowerElem(pow(Constant::variable(), to_long(s, "qpow shift"))) *
                   TowerElem(pow(BaseFun::variable(), l->p));
        }
        throw NotCompilable("function " + e.name + " is not allowed in tower expressions; use generators");
    }
    }
    return TowerElem();
}

namespace {

struct Direct {
    const CompileOptions& opts;
    const std::optional<Rational>& pv;

    bool integer(const Constant& c, Integer& out) const { return integer_constant(c, out); }

    Constant need_int(const Constant& c, const std::string& what, Integer& out) const
    {
        if (!integer(c, out))
            throw NotCompilable(what + " is not an integer");
        return c;
    }

    Constant falling(const Constant& a, long n) const
    {
        Constant r(1);
        for (long i = 0; i < n; ++i)
            r = r * (a - Constant(i)) / Constant(i + 1);
        return r;
    }

    Constant eval(const Expr& e, long k0) const
    {
        switch (e.kind) {
        case ExprKind::Integer:
            return Constant(Rational(e.value));
        case ExprKind::Symbol:
            if (e.name == opts.var)
                return Constant(k0);
            if (!opts.param.empty() && e.name == opts.param)
                return pv ? Constant(*pv) : Constant::variable();
            throw NotCompilable("unknown symbol '" + e.name + "'");
        case ExprKind::Neg:
            return -eval(e.args[0], k0);
        case ExprKind::Add:
            return eval(e.args[0], k0) + eval(e.args[1], k0);
        case ExprKind::Sub:
            return eval(e.args[0], k0) - eval(e.args[1], k0);
        case ExprKind::Mul:
            return eval(e.args[0], k0) * eval(e.args[1], k0);
        case ExprKind::Div: {
            Constant d = eval(e.args[1], k0);
            if (d.is_zero())
                throw NotCompilable("division by zero at " + opts.var + " = " + std::to_string(k0));
            return eval(e.args[0], k0) / d;
        }
        case ExprKind::Pow: {
            const Expr& x = e.args[1];
            Constant b = eval(e.args[0], k0);
            long n;
            if (x.kind == ExprKind::Symbol) {
                if (x.name != opts.var)
                    throw NotCompilable("exponent must be an integer or " + opts.var);
                n = k0;
            } else {
                n = x.kind == ExprKind::Neg ? -to_long(x.args[0].value, "exponent") : to_long(x.value, "exponent");
            }
            if (n < 0 && b.is_zero())
                throw NotCompilable("division by zero at " + opts.var + " = " + std::to_string(k0));
            return pow(b, n);
        }
        case ExprKind::Call:
            return call(e, k0);
        }
        return Constant(0);
    }

    Constant call(const Expr& e, long k0) const
    {
        const std::string& f = e.name;
        Integer z;
        if (f == "factorial") {
            need_int(eval(e.args[0], k0), "factorial argument", z);
            if (z < 0)
                throw NotCompilable("factorial of a negative integer");
            Integer r;
            mpz_fac_ui(r.get_mpz_t(), to_long(z, "factorial argument"));
            return Constant(Rational(r));
        }
        if (f == "binom") {
            Constant a = eval(e.args[0], k0);
            Constant b = eval(e.args[1], k0);
            if (integer(b, z))
                return z < 0 ? Constant(0) : falling(a, to_long(z, "binomial index"));
            if (integer(a - b, z))
                return z < 0 ? Constant(0) : falling(a, to_long(z, "binomial index"));
            throw NotCompilable("binom(" + print_expr(e.args[0]) + "," + print_expr(e.args[1]) +
                                ") is not in the constant field");
        }
        if (f == "pochhammer") {
            Constant a = eval(e.args[0], k0);
            need_int(eval(e.args[1], k0), "pochhammer length", z);
            long j = to_long(z, "pochhammer length");
            Constant r(1);
            for (long i = 0; i < j; ++i)
                r *= a + Constant(i);
            for (long i = 1; i <= -j; ++i) {
                if ((a - Constant(i)).is_zero())
                    throw NotCompilable("pochhammer pole");
                r /= a - Constant(i);
            }
            return r;
        }
        if (f == "H") {
            need_int(eval(e.args[0], k0), "H argument", z);
            Integer o;
            need_int(eval(e.args[1], k0), "harmonic order", o);
            if (z < 0)
                throw NotCompilable("H of a negative integer");
            long n = to_long(z, "H argument");
            long ord = to_long(o, "harmonic order");
            Rational s = 0;
            for (long j = 1; j <= n; ++j)
                s += pow(Rational(j), -ord);
            return Constant(s);
        }
        if (f == "qpow") {
            if (opts.param.empty())
                throw NotCompilable("qpow needs the parameter q");
            need_int(eval(e.args[0], k0), "qpow argument", z);
            Constant q = pv ? Constant(*pv) : Constant::variable();
            return pow(q, to_long(z, "qpow argument"));
        }
        if (f == "geometric") {
            Constant c = eval(e.args[0], k0);
            if (k0 < 0 && c.is_zero())
                throw NotCompilable("division by zero");
            return pow(c, k0);
        }
        if (f == "sum" || f == "product") {
            need_int(eval(e.args[1], k0), "lower bound", z);
            long lo = to_long(z, "lower bound");
            Constant r(f == "sum" ? 0 : 1);
            for (long j = lo; j <= k0; ++j) {
                if (f == "sum")
                    r += eval(e.args[0], j);
                else
                    r *= eval(e.args[0], j);
            }
            return r;
        }
        throw NotCompilable("unsupported function " + f);
    }
};

}  // namespace

Constant eval_direct(const Expr& e, long k0, const CompileOptions& opts, const std::optional<Rational>& param_value)
{
    return Direct{opts, param_value}.eval(e, k0);
}

TowerSpecDoc load_tower_spec(const std::string& json_text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("tower spec is not valid JSON: ") + e.what());
    }
    auto field = [&](const nlohmann::json& o, const char* key) -> const nlohmann::json& {
        if (!o.is_object() || !o.contains(key))
            throw std::invalid_argument(std::string("tower spec: missing field '") + key + "'");
        return o.at(key);
    };
    try {
        std::string base = j.value("base", std::string("rational"));
        if (base != "rational" && base != "qpower")
            throw std::invalid_argument("tower spec: base must be \"rational\" or \"qpower\"");
        std::string var = j.value("var", std::string("k"));
        std::vector<std::string> params = j.value("params", std::vector<std::string>{});
        if (params.size() > 1)
            throw std::invalid_argument("tower spec: at most one parameter is supported");
        std::string param = params.empty() ? "" : params[0];
        if (base == "qpower" && param.empty())
            param = "q";
        TowerSpecDoc doc;
        doc.tower = Tower(base == "rational" ? BaseKind::Rational : BaseKind::QPower, var, param);
        for (const auto& g : j.value("generators", nlohmann::json::array())) {
            std::string name = field(g, "name").get<std::string>();
            std::string kind = field(g, "kind").get<std::string>();
            if (kind != "pi" && kind != "sigma")
                throw std::invalid_argument("tower spec: generator kind must be \"pi\" or \"sigma\"");
            const Tower& t = doc.tower;
            TowerElem rhs = lower_in_tower(parse_expr(field(g, kind == "pi" ? "alpha" : "beta").get<std::string>()), t);
            std::optional<Seed> seed;
            if (g.contains("seed")) {
                const auto& s = g.at("seed");
                Seed sd;
                sd.r = field(s, "r").get<long>();
                std::string c = s.contains("c") ? s.at("c").get<std::string>() : (kind == "pi" ? "1" : "0");
                TowerElem cv = lower_in_tower(parse_expr(c), Tower(t.base(), t.var(), t.param()));
                if (!cv.is_constant())
                    throw std::invalid_argument("tower spec: seed c of " + name + " must be a constant");
                sd.c = cv.is_zero() ? Constant(0) : cv.base_value().constant_value();
                seed = sd;
            }
            Admission a = kind == "pi" ? admit_pi(t, name, rhs, seed) : admit_sigma(t, name, rhs, seed);
            if (auto* r = std::get_if<Rejection>(&a))
                throw TowerInvalid("generator " + name + " is not admissible: " + r->reason);
            doc.tower = std::get<Tower>(a);
        }
        for (const auto& s : j.value("summands", std::vector<std::string>{})) {
            doc.summands.push_back(lower_in_tower(parse_expr(s), doc.tower));
            doc.summand_text.push_back(s);
        }
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("tower spec: ") + e.what());
    }
}

}  // namespace telecert
