#pragma once

#include "telecert/tower/tower_elem.hpp"

#include <string>
#include <vector>

namespace telecert {

// Rational: base K(k) with k -> k + 1. QPower: base K(x) with x -> q x,
// q being the parameter of the constant field; x stands for q^k.
enum class BaseKind { Rational, QPower };

enum class GenKind { Sigma, Pi };

// Evaluation seed: ev(t, n) = c for n < r, then the sum/product recurrence.
struct Seed {
    long r = 0;
    Constant c;
};

struct Generator {
    std::string name;
    GenKind kind = GenKind::Sigma;
    TowerElem alpha;  // Pi: shift quotient; Sigma: 1
    TowerElem beta;   // Sigma: increment; Pi: 0
    Seed seed;
};

class Tower {
public:
    explicit Tower(BaseKind base = BaseKind::Rational, std::string var = "k", std::string param = "");

    BaseKind base() const { return base_; }
    const std::string& var() const { return var_; }
    const std::string& param() const { return param_; }
    bool has_param() const { return !param_.empty(); }

    std::size_t size() const { return gens_.size(); }
    const Generator& generator(std::size_t i) const { return gens_.at(i); }
    const std::vector<Generator>& generators() const { return gens_; }
    int find(const std::string& name) const;

    // Append a generator after structural validation only (no transcendence check).
    Tower extended(Generator g) const;

    TowerElem gen(std::size_t i) const { return TowerElem::generator(i); }
    // The base variable k (or x = q^k) as an element.
    TowerElem base_var() const { return TowerElem(BaseFun::variable()); }

    BaseFun shift_base(const BaseFun& f, long j) const;
    TowerElem shift(const TowerElem& x, long j) const;

    // Base-level alpha of a Pi generator.
    BaseFun pi_alpha(std::size_t i) const;
    bool is_pi(std::size_t i) const { return gens_.at(i).kind == GenKind::Pi; }
    bool is_normalized() const;

    std::string format(const BaseFun& f) const;
    std::string format(const Constant& c) const;
    std::string format(const TowerElem& x) const;
    // Text used for the base variable inside expressions.
    std::string var_text() const;

private:
    TowerElem step(const TowerElem& x, bool forward) const;

    BaseKind base_;
    std::string var_;
    std::string param_;
    std::vector<Generator> gens_;
    std::vector<TowerElem> fwd_;
    std::vector<TowerElem> bwd_;
    std::vector<bool> bwd_ok_;
};

// Pi generators first, Sigma after, relative order kept. perm[old] = new.
Tower normalize_order(const Tower& t, std::vector<std::size_t>* perm = nullptr);
TowerElem remap(const TowerElem& x, const std::vector<std::size_t>& perm);

}  // namespace telecert
