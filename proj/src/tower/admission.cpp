#include "telecert/tower/admission.hpp"

#include "telecert/embed/embed.hpp"
#include "telecert/errors.hpp"
#include "telecert/solver/telescope.hpp"

#include <algorithm>

namespace telecert {

Seed default_sigma_seed(const Tower& t, const TowerElem& beta) { return Seed{o_fn(t, beta) + 1, Constant(0)}; }

Seed default_pi_seed(const Tower& t, const BaseFun& alpha)
{
    TowerElem a(alpha);
    return Seed{std::max(z_fn(t, a), o_fn(t, a)) + 1, Constant(1)};
}

Admission admit_sigma(const Tower& t, const std::string& name, const TowerElem& beta, std::optional<Seed> seed)
{
    if (!beta.is_polynomial())
        throw TowerInvalid("Sigma generator " + name + ": beta must be polynomial in lower generators");
    if (auto s = param_telescope(t, {beta}))
        return Rejection{0, s->g, "sigma(g) - g = " + t.format(beta) + " with g = " + t.format(s->g)};
    Seed d = default_sigma_seed(t, beta);
    if (seed && seed->r < d.r)
        throw StartTooSmall("seed start of " + name + " must be at least " + std::to_string(d.r));
    return t.extended(Generator{name, GenKind::Sigma, TowerElem(1), beta, seed ? *seed : d});
}

Admission admit_pi(const Tower& t, const std::string& name, const TowerElem& alpha, std::optional<Seed> seed)
{
    if (alpha.is_zero())
        throw TowerInvalid("Pi generator " + name + " needs nonzero alpha");
    if (!alpha.is_base())
        throw UnsupportedShape("Pi generator " + name + ": alpha must lie in the base field");
    if (t.base() != BaseKind::Rational)
        throw UnsupportedShape("Pi generators are supported over the rational base only");
    BaseFun a = alpha.base_value();

    std::vector<std::size_t> pis;
    std::vector<BaseFun> fs;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t.is_pi(i)) {
            pis.push_back(i);
            fs.push_back(t.pi_alpha(i));
        }
    }
    fs.push_back(a);
    if (auto rel = solve_multiplicative(fs)) {
        long n = rel->c.back();
        if (n != 0) {
            // sigma(w) / w = prod alpha_j^c_j * alpha^n, so g = w * prod t_j^(-c_j).
            Monomial m(t.size(), 0);
            for (std::size_t j = 0; j < pis.size(); ++j)
                m[pis[j]] = -static_cast<int>(rel->c[j]);
            BaseFun w = rel->g;
            if (n < 0) {
                n = -n;
                w = w.inverse();
                for (int& e : m)
                    e = -e;
            }
            TowerElem g = TowerElem::term(m, w);
            return Rejection{n, g,
                             "sigma(g) = alpha^" + std::to_string(n) + " g with g = " + t.format(g)};
        }
    }
    Seed d = default_pi_seed(t, a);
    if (seed && seed->r < d.r)
        throw StartTooSmall("seed start of " + name + " must be at least " + std::to_string(d.r));
    return t.extended(Generator{name, GenKind::Pi, alpha, TowerElem(), seed ? *seed : d});
}

Tower admitted(const Admission& a)
{
    if (const auto* r = std::get_if<Rejection>(&a))
        throw TowerInvalid("generator rejected: " + r->reason);
    return std::get<Tower>(a);
}

}  // namespace telecert
