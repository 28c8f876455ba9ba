#include "telecert/tower/tower.hpp"

#include "telecert/algebra/format.hpp"
#include "telecert/errors.hpp"

#include <algorithm>

namespace telecert {

Tower::Tower(BaseKind base, std::string var, std::string param)
    : base_(base), var_(std::move(var)), param_(std::move(param))
{
    if (base_ == BaseKind::QPower && param_.empty())
        throw TowerInvalid("q-power base needs the parameter q in the constant field");
}

int Tower::find(const std::string& name) const
{
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name)
            return static_cast<int>(i);
    return -1;
}

Tower Tower::extended(Generator g) const
{
    int level = static_cast<int>(gens_.size());
    if (g.name.empty() || find(g.name) >= 0 || g.name == var_ || g.name == param_)
        throw TowerInvalid("generator name '" + g.name + "' is empty or already used");
    if (g.alpha.top_generator() >= level || g.beta.top_generator() >= level)
        throw TowerInvalid("generator " + g.name + " references itself or a later generator");
    if (g.kind == GenKind::Sigma) {
        if (g.alpha != TowerElem(1))
            throw TowerInvalid("Sigma generator " + g.name + " needs alpha = 1");
        if (!g.beta.is_polynomial())
            throw TowerInvalid("Sigma generator " + g.name + ": beta must be polynomial in lower generators");
    } else {
        if (!g.beta.is_zero())
            throw TowerInvalid("Pi generator " + g.name + " needs beta = 0");
        if (g.alpha.is_zero())
            throw TowerInvalid("Pi generator " + g.name + " needs nonzero alpha");
        if (g.seed.c.is_zero())
            throw TowerInvalid("Pi generator " + g.name + " needs a nonzero seed constant");
    }
    if (g.seed.r < 0)
        throw TowerInvalid("negative seed start for " + g.name);

    Tower t = *this;
    TowerElem self = TowerElem::generator(static_cast<std::size_t>(level));
    if (g.kind == GenKind::Sigma) {
        t.fwd_.push_back(self + g.beta);
        t.bwd_.push_back(self);
        t.bwd_ok_.push_back(true);
        t.gens_.push_back(g);
        // Backward image uses the lower levels only, so it can be computed now.
        t.bwd_.back() = self - t.shift(g.beta, -1);
    } else {
        t.fwd_.push_back(self * g.alpha);
        if (g.alpha.is_base()) {
            BaseFun back = shift_base(g.alpha.base_value(), -1);
            t.bwd_.push_back(self.scaled(back.inverse()));
            t.bwd_ok_.push_back(true);
        } else {
            t.bwd_.push_back(TowerElem());
            t.bwd_ok_.push_back(false);
        }
        t.gens_.push_back(std::move(g));
    }
    return t;
}

BaseFun Tower::shift_base(const BaseFun& f, long j) const
{
    if (j == 0 || f.is_constant())
        return f;
    if (base_ == BaseKind::Rational)
        return f.shifted(Constant(j));
    Constant q = Constant::variable();
    return f.scaled_arg(pow(q, j));
}

TowerElem Tower::step(const TowerElem& x, bool forward) const
{
    TowerElem out;
    for (const auto& [m, c] : x.terms()) {
        TowerElem acc(shift_base(c, forward ? 1 : -1));
        for (std::size_t i = 0; i < m.size(); ++i) {
            int e = m[i];
            if (e == 0)
                continue;
            if (!forward && !bwd_ok_[i])
                throw UnsupportedShape("inverse shift of generator " + gens_[i].name + " with non-base alpha");
            const TowerElem& img = forward ? fwd_[i] : bwd_[i];
            if (img.is_monomial()) {
                const auto& [im, ic] = *img.terms().begin();
                Monomial p = im;
                for (int& v : p)
                    v *= e;
                acc = acc.times_monomial(p).scaled(pow(ic, static_cast<long>(e)));
            } else {
                if (e < 0)
                    throw UnsupportedShape("negative power of Sigma generator " + gens_[i].name);
                acc *= pow(img, static_cast<unsigned>(e));
            }
        }
        out += acc;
    }
    return out;
}

TowerElem Tower::shift(const TowerElem& x, long j) const
{
    TowerElem r = x;
    for (long s = 0; s < std::abs(j); ++s)
        r = step(r, j > 0);
    return r;
}

BaseFun Tower::pi_alpha(std::size_t i) const
{
    const Generator& g = gens_.at(i);
    if (g.kind != GenKind::Pi)
        throw std::logic_error("generator " + g.name + " is not a Pi generator");
    if (!g.alpha.is_base())
        throw UnsupportedShape("Pi generator " + g.name + " has alpha outside the base field");
    return g.alpha.base_value();
}

bool Tower::is_normalized() const
{
    bool seen_sigma = false;
    for (const auto& g : gens_) {
        if (g.kind == GenKind::Sigma)
            seen_sigma = true;
        else if (seen_sigma)
            return false;
    }
    return true;
}

std::string Tower::var_text() const { return base_ == BaseKind::Rational ? var_ : "qpow(" + var_ + ")"; }

std::string Tower::format(const BaseFun& f) const { return telecert::format(f, var_text(), param_); }

std::string Tower::format(const Constant& c) const { return telecert::format(c, param_); }

std::string Tower::format(const TowerElem& x) const
{
    std::vector<SignedTerm> terms;
    for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        std::string factor;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0)
                continue;
            if (!factor.empty())
                factor += "*";
            factor += gens_.at(i).name;
            if (m[i] < 0)
                factor += "^(" + std::to_string(m[i]) + ")";
            else if (m[i] > 1)
                factor += "^" + std::to_string(m[i]);
        }
        auto t = attach(signed_terms(c, var_text(), param_), factor);
        terms.insert(terms.end(), t.begin(), t.end());
    }
    return join_terms(terms);
}

TowerElem remap(const TowerElem& x, const std::vector<std::size_t>& perm)
{
    TowerElem r;
    for (const auto& [m, c] : x.terms()) {
        Monomial mm(perm.size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i)
            mm[perm.at(i)] = m[i];
        r += TowerElem::term(mm, c);
    }
    return r;
}

Tower normalize_order(const Tower& t, std::vector<std::size_t>* perm_out)
{
    std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!t.is_pi(i))
            continue;
        const TowerElem& a = t.generator(i).alpha;
        for (const auto& [m, c] : a.terms())
            for (std::size_t j = 0; j < m.size(); ++j)
                if (m[j] != 0 && !t.is_pi(j))
                    throw OrderingImpossible("Pi generator " + t.generator(i).name + " depends on Sigma generator " +
                                             t.generator(j).name);
    }
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i)
        if (t.is_pi(i))
            order.push_back(i);
    for (std::size_t i = 0; i < n; ++i)
        if (!t.is_pi(i))
            order.push_back(i);
    std::vector<std::size_t> perm(n);
    for (std::size_t j = 0; j < n; ++j)
        perm[order[j]] = j;

    Tower out(t.base(), t.var(), t.param());
    for (std::size_t j = 0; j < n; ++j) {
        Generator g = t.generator(order[j]);
        g.alpha = remap(g.alpha, perm);
        g.beta = remap(g.beta, perm);
        out = out.extended(std::move(g));
    }
    if (perm_out)
        *perm_out = perm;
    return out;
}

}  // namespace telecert
