#include "telecert/algebra/shift.hpp"

#include "telecert/algebra/resultant.hpp"
#include "telecert/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

namespace telecert {

namespace {

constexpr unsigned long kScanLimit = 20000;

std::vector<Integer> primitive_integer_coeffs(const Poly<Rational>& p)
{
    Integer l = 1;
    for (const Rational& c : p.coeffs())
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> out;
    Integer g = 0;
    for (const Rational& c : p.coeffs()) {
        Integer v = c.get_num() * (l / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        out.push_back(v);
    }
    if (g != 0 && g != 1)
        for (Integer& v : out)
            v /= g;
    return out;
}

Integer horner(const std::vector<Integer>& c, std::size_t from, const Integer& x)
{
    Integer r = 0;
    for (std::size_t i = c.size(); i-- > from;)
        r = r * x + c[i];
    return r;
}

Integer mod_eval(const std::vector<Integer>& c, const Integer& x, const Integer& m)
{
    Integer r = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        r = r * x + c[i];
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    }
    return r;
}

std::vector<Integer> mod_poly(const std::vector<Integer>& c, unsigned long p)
{
    std::vector<Integer> out;
    for (const Integer& v : c) {
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
        out.push_back(r);
    }
    while (!out.empty() && out.back() == 0)
        out.pop_back();
    return out;
}

// Degree of gcd(a, b) over F_p.
int mod_gcd_degree(std::vector<Integer> a, std::vector<Integer> b, unsigned long p)
{
    Integer P(p);
    auto trim = [](std::vector<Integer>& v) {
        while (!v.empty() && v.back() == 0)
            v.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        while (a.size() >= b.size() && !a.empty()) {
            Integer inv;
            mpz_invert(inv.get_mpz_t(), b.back().get_mpz_t(), P.get_mpz_t());
            Integer f = a.back() * inv % P;
            std::size_t off = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) {
                a[off + i] -= f * b[i];
                mpz_mod(a[off + i].get_mpz_t(), a[off + i].get_mpz_t(), P.get_mpz_t());
            }
            trim(a);
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

bool small_prime(unsigned long n)
{
    if (n < 2)
        return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

// Integer roots of a squarefree primitive integer polynomial with nonzero
// constant term, by Hensel lifting of the roots modulo a good prime.
std::vector<Integer> lifted_integer_roots(const std::vector<Integer>& c, const Integer& bound)
{
    std::vector<Integer> deriv;
    for (std::size_t i = 1; i < c.size(); ++i)
        deriv.push_back(c[i] * static_cast<unsigned long>(i));
    unsigned long p = 101;
    for (;; ++p) {
        if (!small_prime(p) || mpz_divisible_ui_p(c.back().get_mpz_t(), p))
            continue;
        if (mod_gcd_degree(mod_poly(c, p), mod_poly(deriv, p), p) == 0)
            break;
    }
    Integer P(p);
    std::vector<Integer> out;
    Integer limit = 2 * bound + 1;
    for (unsigned long r0 = 0; r0 < p; ++r0) {
        Integer x(r0);
        if (mod_eval(c, x, P) != 0)
            continue;
        Integer m = P;
        while (m <= limit) {
            Integer m2 = m * m;
            Integer fx = mod_eval(c, x, m2);
            Integer dx = mod_eval(deriv, x, m2);
            Integer inv;
            if (!mpz_invert(inv.get_mpz_t(), dx.get_mpz_t(), m2.get_mpz_t()))
                throw std::logic_error("Hensel lifting hit a singular root");
            x = x - fx * inv;
            mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m2.get_mpz_t());
            m = m2;
        }
        Integer half = m / 2;
        if (x > half)
            x -= m;
        if (abs(x) <= bound && horner(c, 0, x) == 0)
            out.push_back(x);
    }
    return out;
}

}  // namespace

std::vector<long> integer_roots(const Poly<Rational>& p)
{
    if (p.is_zero())
        throw ZeroPolynomial("integer roots of the zero polynomial");
    std::vector<long> roots;
    if (p.degree() == 0)
        return roots;
    Poly<Rational> sq = squarefree_part(p);
    std::size_t v = static_cast<std::size_t>(sq.valuation());
    if (v > 0) {
        roots.push_back(0);
        sq = sq.div_x_power(v);
    }
    if (sq.degree() <= 0)
        return roots;
    std::vector<Integer> c = primitive_integer_coeffs(sq);
    Integer an = abs(c.back());
    Integer bound = 0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        Integer q = abs(c[i]) / an;
        if (q > bound)
            bound = q;
    }
    bound += 1;
    Integer a0 = abs(c[0]);
    if (bound > a0)
        bound = a0;
    if (bound <= kScanLimit) {
        unsigned long b = bound.get_ui();
        for (unsigned long j = 1; j <= b; ++j) {
            if (!mpz_divisible_ui_p(a0.get_mpz_t(), j))
                continue;
            Integer x(j);
            if (horner(c, 0, x) == 0)
                roots.push_back(static_cast<long>(j));
            Integer y = -x;
            if (horner(c, 0, y) == 0)
                roots.push_back(-static_cast<long>(j));
        }
    } else {
        for (const Integer& x : lifted_integer_roots(c, bound)) {
            if (!x.fits_slong_p())
                throw std::overflow_error("integer root outside the machine range");
            roots.push_back(x.get_si());
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::vector<long> nonneg_integer_roots(const Poly<Rational>& p)
{
    std::vector<long> r = integer_roots(p);
    r.erase(std::remove_if(r.begin(), r.end(), [](long x) { return x < 0; }), r.end());
    return r;
}

Poly<Rational> parameter_free_part(const BasePoly& p)
{
    if (p.is_zero())
        throw ZeroPolynomial("integer roots of the zero polynomial");
    Poly<Rational> l(Rational(1));
    for (const Constant& c : p.coeffs())
        if (c.den().degree() > 0)
            l = lcm(l, c.den());
    // slices[d] collects the coefficient of param^d across all powers of k.
    std::vector<std::vector<Rational>> slices;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        const Constant& c = p[i];
        if (c.is_zero())
            continue;
        Poly<Rational> n = c.num() * exact_quotient(l, c.den());
        for (std::size_t d = 0; d < n.coeffs().size(); ++d) {
            if (is_zero(n[d]))
                continue;
            if (slices.size() <= d)
                slices.resize(d + 1);
            auto& s = slices[d];
            if (s.size() <= i)
                s.resize(i + 1, Rational(0));
            s[i] = n[d];
        }
    }
    Poly<Rational> g;
    for (auto& s : slices) {
        Poly<Rational> sp(std::move(s));
        if (sp.is_zero())
            continue;
        g = g.is_zero() ? sp.monic() : gcd(g, sp);
        if (g.degree() == 0)
            break;
    }
    return g;
}

std::vector<long> integer_roots(const BasePoly& p) { return integer_roots(parameter_free_part(p)); }

std::vector<long> nonneg_integer_roots(const BasePoly& p) { return nonneg_integer_roots(parameter_free_part(p)); }

Poly<BasePoly> shift_by_symbol(const BasePoly& p)
{
    Poly<BasePoly> lin(std::vector<BasePoly>{BasePoly::x(), BasePoly(Constant(1))});
    Poly<BasePoly> res;
    for (std::size_t i = p.coeffs().size(); i-- > 0;)
        res = res * lin + Poly<BasePoly>(BasePoly(p[i]));
    return res;
}

BasePoly shift_resultant(const BasePoly& q1, const BasePoly& q2)
{
    Poly<BasePoly> a = shift_by_symbol(q1);
    Poly<BasePoly> b = q2.map<BasePoly>([](const Constant& c) { return BasePoly(c); });
    return resultant(a, b);
}

namespace {

Poly<Rational> rational_shift_resultant(const Poly<Rational>& a, const Poly<Rational>& b)
{
    using QP = Poly<Rational>;
    Poly<QP> lin(std::vector<QP>{QP::x(), QP(Rational(1))});
    Poly<QP> sa;
    for (std::size_t i = a.coeffs().size(); i-- > 0;)
        sa = sa * lin + Poly<QP>(QP(a[i]));
    Poly<QP> sb = b.map<QP>([](const Rational& c) { return QP(c); });
    return resultant(sa, sb);
}

bool has_parameter(const BasePoly& p)
{
    for (const Constant& c : p.coeffs())
        if (!c.is_constant())
            return true;
    return false;
}

// Specialize the parameter at a value keeping degree and avoiding poles.
std::optional<Poly<Rational>> specialize_generic(const BasePoly& p, const Rational& v)
{
    std::vector<Rational> out;
    for (const Constant& c : p.coeffs()) {
        if (c.is_zero()) {
            out.emplace_back(0);
            continue;
        }
        Rational d = c.den()(v);
        if (d == 0)
            return std::nullopt;
        out.push_back(c.num()(v) / d);
    }
    Poly<Rational> r(std::move(out));
    if (r.degree() != p.degree())
        return std::nullopt;
    return r;
}

}  // namespace

namespace {

using ModPoly = std::vector<std::uint64_t>;

constexpr std::uint64_t kModPrimes[] = {2147483647ULL, 2147483629ULL, 2147483587ULL, 2147483579ULL};
constexpr long kWindowLimit = 50000000;

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

std::optional<ModPoly> reduce_mod(const Poly<Rational>& a, std::uint64_t p)
{
    ModPoly out;
    for (const Rational& c : a.coeffs()) {
        if (mpz_divisible_ui_p(c.get_den_mpz_t(), p))
            return std::nullopt;
        std::uint64_t n = mpz_fdiv_ui(c.get_num_mpz_t(), p);
        std::uint64_t d = mpz_fdiv_ui(c.get_den_mpz_t(), p);
        out.push_back(n * mod_pow(d, p - 2, p) % p);
    }
    if (out.empty() || out.back() == 0)
        return std::nullopt;
    return out;
}

void trim_mod(ModPoly& v)
{
    while (!v.empty() && v.back() == 0)
        v.pop_back();
}

int gcd_degree_mod(ModPoly a, ModPoly b, std::uint64_t p)
{
    trim_mod(a);
    trim_mod(b);
    while (!b.empty()) {
        std::uint64_t inv = mod_pow(b.back(), p - 2, p);
        while (a.size() >= b.size() && !a.empty()) {
            std::uint64_t f = a.back() * inv % p;
            std::size_t off = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[off + i] = (a[off + i] + (p - f) * b[i]) % p;
            trim_mod(a);
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

// In-place substitution x -> x + 1.
void shift_one_mod(ModPoly& r, std::uint64_t p)
{
    std::size_t n = r.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;)
            r[j] = (r[j] + r[j + 1]) % p;
}

// Smallest integer R with R^i >= |a_{n-i} / a_n| for all i; 2R bounds every complex root.
Integer root_bound(const Poly<Rational>& a)
{
    int n = a.degree();
    Integer best = 0;
    for (int i = 1; i <= n; ++i) {
        Rational r = abs(a[static_cast<std::size_t>(n - i)] / a.lc());
        if (r == 0)
            continue;
        Integer c = r.get_num() / r.get_den() + 1;
        Integer root;
        mpz_root(root.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(i));
        root += 1;
        if (root > best)
            best = root;
    }
    return 2 * best;
}

// Integer roots in [0, B] of Res_k(a(k + j), b(k)), B a bound on root
// differences. The resultant vanishes at j iff a(k + j) and b share a factor;
// the window is screened modulo a prime and survivors confirmed exactly.
std::vector<long> rational_dispersion(const Poly<Rational>& a, const Poly<Rational>& b)
{
    Integer window = root_bound(a) + root_bound(b);
    if (window > kWindowLimit) {
        Poly<Rational> r = rational_shift_resultant(squarefree_part(a), squarefree_part(b));
        if (r.is_zero())
            throw std::logic_error("dispersion resultant vanished identically");
        return nonneg_integer_roots(r);
    }
    for (std::uint64_t p : kModPrimes) {
        auto am = reduce_mod(a, p);
        auto bm = reduce_mod(b, p);
        if (!am || !bm)
            continue;
        std::vector<long> out;
        long hi = window.get_si();
        ModPoly cur = *am;
        for (long j = 0; j <= hi; ++j) {
            if (gcd_degree_mod(cur, *bm, p) > 0 && gcd(a.shifted(Rational(j)), b).degree() > 0)
                out.push_back(j);
            shift_one_mod(cur, p);
        }
        return out;
    }
    throw std::logic_error("no usable prime for the dispersion screen");
}

// Superset of the dispersion set; inputs need not be squarefree.
std::vector<long> dispersion_candidates(const BasePoly& a, const BasePoly& b)
{
    if (!has_parameter(a) && !has_parameter(b)) {
        auto qa = a.map<Rational>([](const Constant& c) { return c.constant_value(); });
        auto qb = b.map<Rational>([](const Constant& c) { return c.constant_value(); });
        return rational_dispersion(qa, qb);
    }
    // A shift that is common for a generic parameter survives every
    // specialization keeping both degrees, so the specialized set is a superset.
    for (long t = 0;; ++t) {
        Rational v(2 * t + 3, 4 * t + 7);
        v.canonicalize();
        auto sa = specialize_generic(a, v);
        auto sb = specialize_generic(b, v);
        if (!sa || !sb)
            continue;
        return rational_dispersion(*sa, *sb);
    }
}

}  // namespace

std::vector<long> dispersion_set(const BasePoly& q1, const BasePoly& q2)
{
    if (q1.degree() <= 0 || q2.degree() <= 0)
        return {};
    std::vector<long> out;
    for (long j : dispersion_candidates(q1, q2))
        if (gcd(q1.shifted(Constant(j)), q2).degree() > 0)
            out.push_back(j);
    return out;
}

std::vector<long> q_dispersion_set(const BasePoly& q1, const BasePoly& q2)
{
    BasePoly a = squarefree_part(q1.div_x_power(static_cast<std::size_t>(std::max(q1.valuation(), 0))));
    BasePoly b = squarefree_part(q2.div_x_power(static_cast<std::size_t>(std::max(q2.valuation(), 0))));
    if (a.degree() <= 0 || b.degree() <= 0)
        return {};
    std::vector<BasePoly> ac;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        ac.push_back(BasePoly::monomial(a[i], i));
    Poly<BasePoly> A(std::move(ac));
    Poly<BasePoly> B = b.map<BasePoly>([](const Constant& c) { return BasePoly(c); });
    BasePoly r = resultant(A, B);
    if (r.is_zero())
        throw std::logic_error("q-dispersion resultant vanished identically");
    std::vector<std::pair<std::size_t, int>> degs;
    for (std::size_t i = 0; i < r.coeffs().size(); ++i) {
        if (r[i].is_zero())
            continue;
        degs.emplace_back(i, r[i].num().degree() - r[i].den().degree());
    }
    std::set<long> cand;
    for (std::size_t x = 0; x < degs.size(); ++x)
        for (std::size_t y = x + 1; y < degs.size(); ++y) {
            long diff = degs[x].second - degs[y].second;
            long span = static_cast<long>(degs[y].first - degs[x].first);
            if (diff >= 0 && diff % span == 0)
                cand.insert(diff / span);
        }
    std::vector<long> out;
    Constant q = Constant::variable();
    for (long j : cand)
        if (gcd(a.scaled_arg(pow(q, j)), b).degree() > 0)
            out.push_back(j);
    return out;
}

std::optional<long> shift_distance(const BasePoly& a, const BasePoly& b)
{
    if (a.degree() != b.degree() || a.degree() <= 0)
        return std::nullopt;
    BasePoly am = a.monic(), bm = b.monic();
    std::size_t n = static_cast<std::size_t>(a.degree());
    Constant diff = (bm[n - 1] - am[n - 1]) / Constant(static_cast<long>(n));
    if (!diff.is_constant() || !is_integer(diff.constant_value()))
        return std::nullopt;
    if (!diff.constant_value().get_num().fits_slong_p())
        return std::nullopt;
    long j = diff.constant_value().get_num().get_si();
    if (am.shifted(Constant(j)) != bm)
        return std::nullopt;
    return j;
}

namespace {

std::vector<BasePoly> refine_atoms(std::vector<BasePoly> atoms)
{
    if (atoms.empty())
        return atoms;
    BasePoly prod(Constant(1));
    for (const auto& a : atoms)
        prod *= a;
    std::vector<long> js = dispersion_candidates(prod, prod);
    std::vector<long> shifts;
    for (long j : js) {
        shifts.push_back(j);
        if (j != 0)
            shifts.push_back(-j);
    }
    if (std::find(shifts.begin(), shifts.end(), 0L) == shifts.end())
        shifts.push_back(0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < atoms.size() && !changed; ++i) {
            for (std::size_t k = 0; k < atoms.size() && !changed; ++k) {
                for (long s : shifts) {
                    if (i == k && s == 0)
                        continue;
                    BasePoly as = atoms[i].shifted(Constant(s));
                    BasePoly g = gcd(as, atoms[k]);
                    if (g.degree() <= 0)
                        continue;
                    if (g.degree() < atoms[k].degree()) {
                        BasePoly rest = exact_quotient(atoms[k], g).monic();
                        atoms[k] = g;
                        atoms.push_back(rest);
                        changed = true;
                    } else if (g.degree() < atoms[i].degree()) {
                        BasePoly back = g.shifted(Constant(-s)).monic();
                        BasePoly rest = exact_quotient(atoms[i], back).monic();
                        atoms[i] = back;
                        atoms.push_back(rest);
                        changed = true;
                    } else if (s == 0) {
                        atoms.erase(atoms.begin() + static_cast<long>(k));
                        changed = true;
                    }
                    if (changed)
                        break;
                }
            }
        }
    }
    return atoms;
}

void collect_atoms(const BasePoly& p, std::vector<BasePoly>& out)
{
    for (const auto& f : squarefree_factors(p))
        if (f.degree() > 0)
            out.push_back(f.monic());
}

long strip_multiplicity(BasePoly& p, const BasePoly& atom)
{
    long e = 0;
    while (p.degree() >= atom.degree()) {
        auto [q, r] = divmod(p, atom);
        if (!r.is_zero())
            break;
        p = std::move(q);
        ++e;
    }
    return e;
}

}  // namespace

JointShiftless joint_shiftless_decompose(const std::vector<BaseFun>& fs)
{
    std::vector<BasePoly> raw;
    for (const auto& f : fs) {
        if (f.is_zero())
            throw std::domain_error("shiftless decomposition of zero");
        collect_atoms(f.num(), raw);
        collect_atoms(f.den(), raw);
    }
    std::vector<BasePoly> atoms = refine_atoms(std::move(raw));

    // Group atoms into orbits: atom = rep(k + offset).
    std::vector<BasePoly> reps;
    std::vector<std::pair<std::size_t, long>> where(atoms.size());
    for (std::size_t a = 0; a < atoms.size(); ++a) {
        bool placed = false;
        for (std::size_t o = 0; o < reps.size() && !placed; ++o) {
            if (auto s = shift_distance(reps[o], atoms[a])) {
                where[a] = {o, *s};
                placed = true;
            }
        }
        if (!placed) {
            where[a] = {reps.size(), 0};
            reps.push_back(atoms[a]);
        }
    }
    // Rebase so every orbit has minimal offset 0.
    std::vector<long> min_off(reps.size(), 0);
    for (std::size_t a = 0; a < atoms.size(); ++a)
        min_off[where[a].first] = std::min(min_off[where[a].first], where[a].second);
    for (std::size_t o = 0; o < reps.size(); ++o)
        if (min_off[o] != 0)
            reps[o] = reps[o].shifted(Constant(min_off[o]));
    for (auto& w : where)
        w.second -= min_off[w.first];

    JointShiftless out;
    out.reps = reps;
    for (const auto& f : fs) {
        BasePoly num = f.num(), den = f.den();
        std::vector<std::map<long, long>> acc(reps.size());
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            long e = strip_multiplicity(num, atoms[a]) - strip_multiplicity(den, atoms[a]);
            if (e != 0)
                acc[where[a].first][where[a].second] += e;
        }
        if (num.degree() != 0 || den.degree() != 0)
            throw std::logic_error("shiftless decomposition did not exhaust the input");
        out.contents.push_back(num.lc() / den.lc());
        std::vector<std::vector<OrbitPart>> parts(reps.size());
        for (std::size_t o = 0; o < reps.size(); ++o)
            for (const auto& [off, e] : acc[o])
                if (e != 0)
                    parts[o].push_back(OrbitPart{off, e});
        out.parts.push_back(std::move(parts));
    }
    return out;
}

ShiftlessDecomp shiftless_decompose(const BaseFun& f)
{
    JointShiftless j = joint_shiftless_decompose({f});
    ShiftlessDecomp d;
    d.content = j.contents[0];
    for (std::size_t o = 0; o < j.reps.size(); ++o) {
        if (j.parts[0][o].empty())
            continue;
        Orbit orb{j.reps[o], j.parts[0][o]};
        long lo = orb.parts.front().offset;
        if (lo != 0) {
            orb.rep = orb.rep.shifted(Constant(lo));
            for (auto& p : orb.parts)
                p.offset -= lo;
        }
        d.orbits.push_back(std::move(orb));
    }
    return d;
}

BaseFun reconstruct(const ShiftlessDecomp& d)
{
    BaseFun r(d.content);
    for (const auto& o : d.orbits)
        for (const auto& p : o.parts)
            r *= pow(BaseFun(o.rep.shifted(Constant(p.offset))), p.exponent);
    return r;
}

BaseFun shift_quotient_witness(const std::vector<Orbit>& orbits)
{
    BaseFun g(1);
    for (const auto& o : orbits) {
        if (o.parts.empty())
            continue;
        long lo = o.parts.front().offset, hi = o.parts.back().offset;
        std::map<long, long> e;
        for (const auto& p : o.parts)
            e[p.offset] += p.exponent;
        long w = 0;
        for (long i = lo; i < hi; ++i) {
            w -= e[i];
            if (w != 0)
                g *= pow(BaseFun(o.rep.shifted(Constant(i))), w);
        }
    }
    return g;
}

std::optional<BaseFun> is_shift_quotient(const BaseFun& f)
{
    ShiftlessDecomp d = shiftless_decompose(f);
    if (d.content != Constant(1))
        return std::nullopt;
    for (const auto& o : d.orbits)
        if (o.exponent_sum() != 0)
            return std::nullopt;
    return shift_quotient_witness(d.orbits);
}

}  // namespace telecert
