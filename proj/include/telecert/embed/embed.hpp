#pragma once

#include "telecert/tower/tower.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace telecert {

// Value of a constant at param = v. Throws SpecializationPole.
Rational specialize(const Constant& c, const Rational& v);

// o-function: the homomorphism laws for ev hold at every n >= L(f).
long o_fn(const Tower& t, const TowerElem& f);

// z-function: ev(f, n) != 0 for every n >= Z(f). Throws ZUndecidable outside
// the decidable fragment (base level, monomials, sign-definite sums over Q).
long z_fn(const Tower& t, const TowerElem& f);

// Smallest N with ev(f, n) > 0 for all n >= N, when a sign argument proves it.
std::optional<long> positive_from(const Tower& t, const TowerElem& f);

// Evaluation into sequences over the constant field. Generator values are
// memoized, so a context must stay confined to one thread. With a parameter
// value the constants are specialized while thresholds stay generic.
class EvContext {
public:
    explicit EvContext(Tower t, std::optional<Rational> param_value = std::nullopt);

    const Tower& tower() const { return t_; }
    const std::optional<Rational>& param_value() const { return spec_; }

    Constant ev(const TowerElem& f, long n);
    Constant ev_base(const BaseFun& f, long n) const;
    Constant ev_gen(std::size_t i, long n);

private:
    Constant value(const Constant& c) const;
    Constant point(long n) const;
    Constant eval_poly(const BasePoly& p, const Constant& x) const;
    const std::vector<long>& term_thresholds(const TowerElem& f);

    Tower t_;
    std::optional<Rational> spec_;
    std::vector<std::vector<Constant>> memo_;
    std::vector<std::pair<TowerElem, std::vector<long>>> thresholds_;
};

enum class SeqKind { Sum, Product, Term };

struct SeqSpec {
    SeqKind kind = SeqKind::Term;
    TowerElem body;
    long start = 0;
};

// Smallest start for which the sequence is defined by the embedding.
long minimal_start(const Tower& t, const SeqSpec& s);

// Values for n = s.start..n_max: prefix sums, prefix products or the term itself.
// Throws StartTooSmall naming the minimal valid start.
std::vector<Constant> materialize(EvContext& ctx, const SeqSpec& s, long n_max);

// Tower with the parameter replaced by v everywhere (generic thresholds are lost).
Tower specialize_tower(const Tower& t, const Rational& v);
TowerElem specialize(const TowerElem& x, const Rational& v);

}  // namespace telecert
