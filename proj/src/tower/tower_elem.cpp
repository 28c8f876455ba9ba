#include "telecert/tower/tower_elem.hpp"

#include <algorithm>

namespace telecert {

Monomial trim_monomial(Monomial m)
{
    while (!m.empty() && m.back() == 0)
        m.pop_back();
    return m;
}

Monomial monomial_product(const Monomial& a, const Monomial& b)
{
    Monomial r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] += b[i];
    return trim_monomial(std::move(r));
}

int monomial_exponent(const Monomial& m, std::size_t i) { return i < m.size() ? m[i] : 0; }

TowerElem TowerElem::generator(std::size_t i, int exponent)
{
    Monomial m(i + 1, 0);
    m[i] = exponent;
    return term(m, BaseFun(1));
}

TowerElem TowerElem::term(const Monomial& m, const BaseFun& c)
{
    TowerElem r;
    if (!c.is_zero())
        r.terms_.emplace(trim_monomial(m), c);
    return r;
}

BaseFun TowerElem::base_value() const
{
    if (!is_base())
        throw std::logic_error("tower element is not base-level");
    return terms_.empty() ? BaseFun() : terms_.begin()->second;
}

bool TowerElem::is_polynomial() const
{
    for (const auto& [m, c] : terms_)
        for (int e : m)
            if (e < 0)
                return false;
    return true;
}

int TowerElem::top_generator() const
{
    int top = -1;
    for (const auto& [m, c] : terms_)
        top = std::max(top, static_cast<int>(m.size()) - 1);
    return top;
}

int TowerElem::degree_in(std::size_t i) const
{
    if (terms_.empty())
        return -1;
    int d = monomial_exponent(terms_.begin()->first, i);
    for (const auto& [m, c] : terms_)
        d = std::max(d, monomial_exponent(m, i));
    return d;
}

int TowerElem::min_degree_in(std::size_t i) const
{
    if (terms_.empty())
        return 0;
    int d = monomial_exponent(terms_.begin()->first, i);
    for (const auto& [m, c] : terms_)
        d = std::min(d, monomial_exponent(m, i));
    return d;
}

TowerElem TowerElem::coefficient_in(std::size_t i, int j) const
{
    TowerElem r;
    for (const auto& [m, c] : terms_) {
        if (monomial_exponent(m, i) != j)
            continue;
        Monomial mm = m;
        if (i < mm.size())
            mm[i] = 0;
        r.add_term(trim_monomial(std::move(mm)), c);
    }
    return r;
}

void TowerElem::add_term(const Monomial& m, const BaseFun& c)
{
    if (c.is_zero())
        return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        terms_.erase(it);
}

TowerElem TowerElem::operator-() const
{
    TowerElem r = *this;
    for (auto& [m, c] : r.terms_)
        c = -c;
    return r;
}

TowerElem& TowerElem::operator+=(const TowerElem& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

TowerElem& TowerElem::operator-=(const TowerElem& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

TowerElem operator*(const TowerElem& a, const TowerElem& b)
{
    TowerElem r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            r.add_term(monomial_product(ma, mb), ca * cb);
    return r;
}

TowerElem TowerElem::scaled(const BaseFun& c) const
{
    if (c.is_zero())
        return TowerElem();
    TowerElem r;
    for (const auto& [m, v] : terms_)
        r.terms_.emplace(m, v * c);
    return r;
}

TowerElem TowerElem::times_monomial(const Monomial& mono) const
{
    TowerElem r;
    for (const auto& [m, v] : terms_)
        r.terms_.emplace(monomial_product(m, mono), v);
    return r;
}

TowerElem pow(const TowerElem& x, unsigned e)
{
    TowerElem r(1);
    TowerElem b = x;
    while (e) {
        if (e & 1u)
            r *= b;
        e >>= 1u;
        if (e)
            b = b * b;
    }
    return r;
}

}  // namespace telecert
