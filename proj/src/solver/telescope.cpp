#include "telecert/solver/telescope.hpp"

#include "telecert/algebra/linalg.hpp"
#include "telecert/algebra/shift.hpp"
#include "telecert/errors.hpp"
#include "telecert/tower/admission.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace telecert {

namespace {

struct State {
    std::vector<Constant> c;
    TowerElem v;
};

Integer binomial(long n, long k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

bool all_zero(const std::vector<Constant>& c)
{
    return std::all_of(c.begin(), c.end(), [](const Constant& x) { return x.is_zero(); });
}

bool pi_free(const Tower& t, const TowerElem& x)
{
    for (const auto& [m, c] : x.terms())
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0 && t.is_pi(i))
                return false;
    return true;
}

std::set<std::size_t> sigma_support(const Tower& t, const TowerElem& x)
{
    std::set<std::size_t> s;
    for (const auto& [m, c] : x.terms())
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0 && !t.is_pi(i))
                s.insert(i);
    return s;
}

// Sigma generators reachable by the polynomial recursion: beta free of Pi
// generators and built from earlier members only.
std::vector<std::size_t> sigma_chain(const Tower& t)
{
    std::vector<std::size_t> chain;
    std::set<std::size_t> in;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t.is_pi(i))
            continue;
        const TowerElem& beta = t.generator(i).beta;
        if (!pi_free(t, beta))
            continue;
        auto sup = sigma_support(t, beta);
        if (std::all_of(sup.begin(), sup.end(), [&](std::size_t j) { return in.count(j) > 0; })) {
            chain.push_back(i);
            in.insert(i);
        }
    }
    return chain;
}

// Basis of {(c, v) : a*sigma(v) - v = sum c_i rhs_i} with v polynomial in chain[0..L).
std::vector<State> solve_level(const Tower& t, const std::vector<std::size_t>& chain, std::size_t L,
                               const BaseFun& a, const std::vector<TowerElem>& rhs)
{
    std::size_t d = rhs.size();
    if (L == 0) {
        std::vector<BaseFun> r;
        for (const auto& x : rhs)
            r.push_back(x.base_value());
        std::vector<State> out;
        for (auto& s : solve_param_fode(t.base(), a, BaseFun(-1), r))
            out.push_back(State{std::move(s.c), TowerElem(s.v)});
        return out;
    }
    std::size_t s = chain[L - 1];
    const TowerElem& beta = t.generator(s).beta;
    int deg = -1;
    for (const auto& x : rhs)
        deg = std::max(deg, x.degree_in(s));
    int n = deg + 1;

    std::vector<std::vector<TowerElem>> rc(d);
    for (std::size_t i = 0; i < d; ++i)
        for (int j = 0; j <= n; ++j)
            rc[i].push_back(rhs[i].coefficient_in(s, j));
    std::vector<TowerElem> beta_pow{TowerElem(1)};
    for (int p = 1; p <= n; ++p)
        beta_pow.push_back(beta_pow.back() * beta);

    struct Partial {
        std::vector<Constant> c;
        std::vector<TowerElem> coeff;
        std::vector<TowerElem> shifted;
    };
    std::vector<Partial> states;
    for (std::size_t i = 0; i < d; ++i) {
        Partial p;
        p.c.assign(d, Constant(0));
        p.c[i] = Constant(1);
        p.coeff.assign(static_cast<std::size_t>(n + 1), TowerElem());
        p.shifted = p.coeff;
        states.push_back(std::move(p));
    }

    for (int j = n; j >= 0; --j) {
        std::vector<TowerElem> T;
        for (const auto& st : states) {
            TowerElem acc;
            for (std::size_t i = 0; i < d; ++i)
                if (!st.c[i].is_zero())
                    acc += rc[i][static_cast<std::size_t>(j)].scaled(BaseFun(st.c[i]));
            TowerElem carry;
            for (int i = j + 1; i <= n; ++i) {
                const TowerElem& sv = st.shifted[static_cast<std::size_t>(i)];
                if (sv.is_zero())
                    continue;
                carry += (sv * beta_pow[static_cast<std::size_t>(i - j)])
                             .scaled(BaseFun(Constant(Rational(binomial(i, j)))));
            }
            acc -= carry.scaled(a);
            T.push_back(std::move(acc));
        }
        auto sub = solve_level(t, chain, L - 1, a, T);
        std::vector<Partial> next;
        for (auto& [mu, vj] : sub) {
            Partial p;
            p.c.assign(d, Constant(0));
            p.coeff.assign(static_cast<std::size_t>(n + 1), TowerElem());
            p.shifted = p.coeff;
            for (std::size_t l = 0; l < states.size(); ++l) {
                if (mu[l].is_zero())
                    continue;
                BaseFun f(mu[l]);
                for (std::size_t i = 0; i < d; ++i)
                    p.c[i] += mu[l] * states[l].c[i];
                for (int i = j + 1; i <= n; ++i) {
                    auto ui = static_cast<std::size_t>(i);
                    p.coeff[ui] += states[l].coeff[ui].scaled(f);
                    p.shifted[ui] += states[l].shifted[ui].scaled(f);
                }
            }
            auto uj = static_cast<std::size_t>(j);
            p.shifted[uj] = t.shift(vj, 1);
            p.coeff[uj] = std::move(vj);
            next.push_back(std::move(p));
        }
        states = std::move(next);
    }

    std::vector<State> out;
    for (auto& p : states) {
        TowerElem v;
        for (int j = 0; j <= n; ++j)
            v += p.coeff[static_cast<std::size_t>(j)] * pow(TowerElem::generator(s), static_cast<unsigned>(j));
        out.push_back(State{std::move(p.c), std::move(v)});
    }
    return out;
}

// Split x into Pi-monomial blocks: Pi exponent vector -> Pi-free cofactor.
std::map<Monomial, TowerElem> pi_blocks(const Tower& t, const TowerElem& x)
{
    std::map<Monomial, TowerElem> out;
    for (const auto& [m, c] : x.terms()) {
        Monomial w(m.size(), 0);
        Monomial rest(m.size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (t.is_pi(i))
                w[i] = m[i];
            else if (m[i] < 0)
                throw UnsupportedShape("negative power of a Sigma generator");
            else
                rest[i] = m[i];
        }
        out[trim_monomial(w)] += TowerElem::term(rest, c);
    }
    return out;
}

BaseFun twist(const Tower& t, const Monomial& w)
{
    BaseFun a(1);
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] != 0)
            a *= pow(t.pi_alpha(i), static_cast<long>(w[i]));
    return a;
}

// Remove the additive constant from g (solutions are unique up to constants).
TowerElem drop_constant(const TowerElem& g)
{
    auto it = g.terms().find(Monomial{});
    if (it == g.terms().end())
        return g;
    const BaseFun& b = it->second;
    Constant c = divmod(b.num(), b.den()).first[0];
    if (c.is_zero())
        return g;
    return g - TowerElem(c);
}

}  // namespace

std::string classify_problem(const Tower& t, const std::vector<TowerElem>& f)
{
    std::set<Monomial> ws;
    bool sigma = false;
    for (const auto& x : f) {
        for (const auto& [w, rest] : pi_blocks(t, x)) {
            ws.insert(w);
            if (!rest.is_base())
                sigma = true;
        }
    }
    ws.erase(Monomial{});
    bool has_zero_block = false;
    for (const auto& x : f)
        if (pi_blocks(t, x).count(Monomial{}))
            has_zero_block = true;
    if (ws.empty())
        return sigma ? "D" : "R";
    if (ws.size() == 1 && !has_zero_block)
        return sigma ? "HxD" : "H";
    return "multi";
}

std::vector<TelescopeSolution> param_telescope_basis(const Tower& t, const std::vector<TowerElem>& f)
{
    std::size_t d = f.size();
    if (d == 0)
        return {};
    std::vector<std::size_t> chain = sigma_chain(t);
    std::set<std::size_t> in_chain(chain.begin(), chain.end());

    // Sigma generators outside the chain may enter g only linearly (f must not use them).
    std::vector<std::size_t> extras;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (!t.is_pi(i) && !in_chain.count(i))
            extras.push_back(i);
    for (const auto& x : f)
        for (std::size_t s : sigma_support(t, x))
            if (!in_chain.count(s))
                throw UnsupportedShape("summand uses Sigma generator " + t.generator(s).name +
                                       " whose increment involves a Pi generator");

    std::vector<TowerElem> F = f;
    for (std::size_t s : extras)
        F.push_back(-t.generator(s).beta);
    std::size_t np = F.size();

    std::map<Monomial, std::vector<TowerElem>> blocks;
    for (std::size_t i = 0; i < np; ++i)
        for (auto& [w, rest] : pi_blocks(t, F[i])) {
            auto& v = blocks[w];
            v.resize(np);
            v[i] = rest;
        }
    for (const auto& [w, rhs] : blocks)
        for (const auto& x : rhs)
            for (std::size_t s : sigma_support(t, x))
                if (!in_chain.count(s))
                    throw UnsupportedShape("increment of a Sigma generator is outside the supported classes");

    std::vector<Monomial> keys;
    std::vector<std::vector<State>> sols;
    for (auto& [w, rhs] : blocks) {
        keys.push_back(w);
        sols.push_back(solve_level(t, chain, chain.size(), twist(t, w), rhs));
    }

    // Combine blocks: one shared c, block-wise coordinates lambda.
    std::size_t nl = 0;
    for (const auto& s : sols)
        nl += s.size();
    std::vector<std::pair<std::vector<Constant>, TowerElem>> cand;
    if (keys.size() == 1) {
        for (auto& s : sols[0])
            cand.emplace_back(s.c, s.v.times_monomial(keys[0]));
    } else {
        Matrix<Constant> m(np * keys.size(), np + nl);
        std::size_t off = np;
        for (std::size_t b = 0; b < keys.size(); ++b) {
            for (std::size_t i = 0; i < np; ++i) {
                std::size_t row = b * np + i;
                m(row, i) = Constant(1);
                for (std::size_t l = 0; l < sols[b].size(); ++l)
                    m(row, off + l) = -sols[b][l].c[i];
            }
            off += sols[b].size();
        }
        for (auto& vec : nullspace(m)) {
            std::vector<Constant> c(vec.begin(), vec.begin() + static_cast<long>(np));
            TowerElem g;
            std::size_t o = np;
            for (std::size_t b = 0; b < keys.size(); ++b) {
                for (std::size_t l = 0; l < sols[b].size(); ++l)
                    if (!vec[o + l].is_zero())
                        g += sols[b][l].v.times_monomial(keys[b]).scaled(BaseFun(vec[o + l]));
                o += sols[b].size();
            }
            cand.emplace_back(std::move(c), std::move(g));
        }
    }

    // Fold the linear Sigma terms into g and keep the c of the original summands.
    std::vector<std::pair<std::vector<Constant>, TowerElem>> rows;
    for (auto& [c, g] : cand) {
        for (std::size_t e = 0; e < extras.size(); ++e)
            if (!c[d + e].is_zero())
                g += TowerElem::generator(extras[e]).scaled(BaseFun(c[d + e]));
        c.resize(d);
        if (!all_zero(c))
            rows.emplace_back(std::move(c), std::move(g));
    }

    std::size_t r = 0;
    for (std::size_t col = 0; col < d && r < rows.size(); ++col) {
        std::size_t p = r;
        while (p < rows.size() && rows[p].first[col].is_zero())
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[p], rows[r]);
        Constant inv = Constant(1) / rows[r].first[col];
        for (auto& x : rows[r].first)
            x *= inv;
        rows[r].second = rows[r].second.scaled(BaseFun(inv));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i].first[col].is_zero())
                continue;
            Constant fct = rows[i].first[col];
            for (std::size_t j = 0; j < d; ++j)
                rows[i].first[j] -= fct * rows[r].first[j];
            rows[i].second -= rows[r].second.scaled(BaseFun(fct));
        }
        ++r;
    }
    rows.resize(r);

    std::vector<TelescopeSolution> out;
    for (auto& [c, g] : rows) {
        TelescopeSolution s{std::move(c), drop_constant(g)};
        if (!check_telescoping(t, f, s))
            throw VerificationFailed("telescoping solution failed the substitution check");
        out.push_back(std::move(s));
    }
    return out;
}

std::optional<TelescopeSolution> param_telescope(const Tower& t, const std::vector<TowerElem>& f)
{
    auto basis = param_telescope_basis(t, f);
    if (basis.empty())
        return std::nullopt;
    return basis.front();
}

bool check_telescoping(const Tower& t, const std::vector<TowerElem>& f, const TelescopeSolution& s)
{
    TowerElem rhs;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!s.c[i].is_zero())
            rhs += f[i].scaled(BaseFun(s.c[i]));
    return t.shift(s.g, 1) - s.g == rhs;
}

namespace {

// Pairwise coprime refinement of a list of values greater than one.
template <class T, class Gcd, class Div, class Trivial>
std::vector<T> coprime_basis(std::vector<T> xs, Gcd gcd_fn, Div div_fn, Trivial trivial)
{
    std::vector<T> basis;
    for (auto& x : xs) {
        if (trivial(x))
            continue;
        std::vector<T> work{x};
        while (!work.empty()) {
            T y = work.back();
            work.pop_back();
            if (trivial(y))
                continue;
            bool split = false;
            for (std::size_t i = 0; i < basis.size(); ++i) {
                T g = gcd_fn(basis[i], y);
                if (trivial(g))
                    continue;
                T b = basis[i];
                basis.erase(basis.begin() + static_cast<long>(i));
                work.push_back(g);
                work.push_back(div_fn(b, g));
                work.push_back(div_fn(y, g));
                split = true;
                break;
            }
            if (!split)
                basis.push_back(y);
        }
    }
    return basis;
}

template <class T, class Divides, class Div>
long multiplicity(T x, const T& b, Divides divides_fn, Div div_fn)
{
    long e = 0;
    while (divides_fn(b, x)) {
        x = div_fn(x, b);
        ++e;
    }
    return e;
}

}  // namespace

std::optional<MultiplicativeSolution> solve_multiplicative(const std::vector<BaseFun>& f)
{
    std::size_t d = f.size();
    for (const auto& x : f)
        if (x.is_zero())
            throw std::invalid_argument("multiplicative problem with a zero factor");
    JointShiftless js = joint_shiftless_decompose(f);

    std::vector<std::vector<Rational>> rows;
    for (std::size_t o = 0; o < js.reps.size(); ++o) {
        std::vector<Rational> row(d);
        for (std::size_t i = 0; i < d; ++i)
            for (const auto& p : js.parts[i][o])
                row[i] += p.exponent;
        rows.push_back(row);
    }

    // Contents: sign * |N/D| * monic(num)/monic(den) in the parameter.
    std::vector<Integer> ints;
    std::vector<Poly<Rational>> polys;
    std::vector<bool> negative(d);
    std::vector<Rational> lead(d);
    for (std::size_t i = 0; i < d; ++i) {
        const Constant& c = js.contents[i];
        lead[i] = c.num().lc();
        negative[i] = sgn(lead[i]) < 0;
        ints.push_back(abs(lead[i].get_num()));
        ints.push_back(lead[i].get_den());
        polys.push_back(c.num().monic());
        polys.push_back(c.den());
    }
    auto ib = coprime_basis(
        ints, [](const Integer& a, const Integer& b) { return Integer(gcd(a, b)); },
        [](const Integer& a, const Integer& b) { return Integer(a / b); }, [](const Integer& a) { return a <= 1; });
    for (const auto& b : ib) {
        std::vector<Rational> row(d);
        for (std::size_t i = 0; i < d; ++i) {
            auto div = [](const Integer& a, const Integer& b) { return Integer(a / b); };
            auto dvd = [](const Integer& b, const Integer& a) { return a % b == 0; };
            row[i] = multiplicity(Integer(abs(lead[i].get_num())), b, dvd, div) -
                     multiplicity(Integer(lead[i].get_den()), b, dvd, div);
        }
        rows.push_back(row);
    }
    auto pb = coprime_basis(
        polys, [](const Poly<Rational>& a, const Poly<Rational>& b) { return gcd(a, b); },
        [](const Poly<Rational>& a, const Poly<Rational>& b) { return exact_quotient(a, b).monic(); },
        [](const Poly<Rational>& a) { return a.degree() <= 0; });
    for (const auto& b : pb) {
        std::vector<Rational> row(d);
        for (std::size_t i = 0; i < d; ++i) {
            auto div = [](const Poly<Rational>& a, const Poly<Rational>& b) { return exact_quotient(a, b); };
            auto dvd = [](const Poly<Rational>& b, const Poly<Rational>& a) { return divides(b, a); };
            row[i] = multiplicity(js.contents[i].num(), b, dvd, div) - multiplicity(js.contents[i].den(), b, dvd, div);
        }
        rows.push_back(row);
    }

    Matrix<Rational> m(rows.size(), d);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t i = 0; i < d; ++i)
            m(r, i) = rows[r][i];
    auto ns = nullspace(m);
    if (ns.empty())
        return std::nullopt;
    // Echelon form of the solution space; take the row with the earliest pivot.
    Matrix<Rational> sm(ns.size(), d);
    for (std::size_t r = 0; r < ns.size(); ++r)
        for (std::size_t i = 0; i < d; ++i)
            sm(r, i) = ns[r][i];
    rref(sm);
    Integer den = 1;
    for (std::size_t i = 0; i < d; ++i)
        den = lcm(den, sm(0, i).get_den());
    std::vector<Integer> ci(d);
    Integer g = 0;
    for (std::size_t i = 0; i < d; ++i) {
        Rational v = sm(0, i) * den;
        ci[i] = v.get_num();
        g = gcd(g, ci[i]);
    }
    long parity = 0;
    std::vector<long> c(d);
    for (std::size_t i = 0; i < d; ++i) {
        ci[i] /= g;
        c[i] = ci[i].get_si();
        if (negative[i] && (c[i] % 2 != 0))
            ++parity;
    }
    if (parity % 2 != 0)
        for (auto& x : c)
            x *= 2;

    std::vector<Orbit> orbits;
    for (std::size_t o = 0; o < js.reps.size(); ++o) {
        std::map<long, long> by_offset;
        for (std::size_t i = 0; i < d; ++i)
            for (const auto& p : js.parts[i][o])
                by_offset[p.offset] += c[i] * p.exponent;
        Orbit orb{js.reps[o], {}};
        for (auto [off, e] : by_offset)
            if (e != 0)
                orb.parts.push_back(OrbitPart{off, e});
        if (!orb.parts.empty())
            orbits.push_back(std::move(orb));
    }
    BaseFun w = shift_quotient_witness(orbits);
    BaseFun prod(1);
    for (std::size_t i = 0; i < d; ++i)
        prod *= pow(f[i], c[i]);
    if (w.shifted(Constant(1)) / w != prod)
        throw VerificationFailed("multiplicative witness failed the substitution check");
    return MultiplicativeSolution{c, w};
}

DiffHypResult diffhyp_telescope(const std::vector<BaseFun>& alphas)
{
    auto param_free = [](const BaseFun& a) {
        auto free = [](const BasePoly& p) {
            return std::all_of(p.coeffs().begin(), p.coeffs().end(), [](const Constant& c) { return c.is_constant(); });
        };
        return free(a.num()) && free(a.den());
    };
    bool param = !std::all_of(alphas.begin(), alphas.end(), param_free);
    Tower t(BaseKind::Rational, "k", param ? "m" : "");
    std::vector<TowerElem> f;
    DiffHypResult res;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        auto a = admit_pi(t, "t" + std::to_string(i + 1), TowerElem(alphas[i]));
        if (auto* rej = std::get_if<Rejection>(&a))
            throw TowerInvalid("Pi generator t" + std::to_string(i + 1) + " rejected: " + rej->reason);
        t = std::get<Tower>(a);
        f.push_back(t.gen(i));
        res.gosper_summable.push_back(gosper(BaseKind::Rational, alphas[i]).has_value());
    }
    res.solution = param_telescope(t, f);
    res.tower = t;
    return res;
}

BaseFun shift_param(const BaseFun& f, long j)
{
    if (j == 0)
        return f;
    auto sh = [j](const Constant& c) { return c.shifted(Rational(j)); };
    return BaseFun(f.num().map<Constant>(sh), f.den().map<Constant>(sh));
}

ZeilbergerResult zeilberger(const BaseFun& alpha_k, const BaseFun& alpha_m, long max_order)
{
    if (alpha_k.is_zero() || alpha_m.is_zero())
        throw NotHypergeometric("zero shift quotient");
    ZeilbergerResult res;
    res.max_order = max_order;
    Tower t(BaseKind::Rational, "k", "m");
    TowerElem kernel;
    if (auto w = is_shift_quotient(alpha_k)) {
        // f(m, k) is a rational function of k up to a factor free of k.
        res.rational_term = true;
        kernel = TowerElem(*w);
    } else {
        auto a = admit_pi(t, "t", TowerElem(alpha_k));
        if (auto* rej = std::get_if<Rejection>(&a))
            throw UnsupportedShape("summand is a root of unity power times a rational function (" + rej->reason +
                                   "); excluded from the hypergeometric theorems");
        t = std::get<Tower>(a);
        kernel = t.gen(0);
    }
    std::vector<TowerElem> f{kernel};
    BaseFun r(1);
    for (long d = 0; d <= max_order; ++d) {
        if (d > 0) {
            r *= shift_param(alpha_m, d - 1);
            f.push_back(kernel.scaled(r));
        }
        if (auto s = param_telescope(t, f)) {
            res.found = true;
            res.order = d;
            res.c = s->c;
            res.g = s->g;
            break;
        }
    }
    res.tower = t;
    res.f = f;
    return res;
}

}  // namespace telecert
