#pragma once

#include "telecert/solver/fode.hpp"

#include <optional>
#include <string>
#include <vector>

namespace telecert {

struct TelescopeSolution {
    std::vector<Constant> c;
    TowerElem g;
};

// R: base-level f; H: one Pi monomial times base-level; D: polynomial in Sigma
// generators; HxD: one Pi monomial times polynomial in Sigma generators;
// multi: several Pi monomials (each block handled as H or HxD).
std::string classify_problem(const Tower& t, const std::vector<TowerElem>& f);

// All solutions with c != 0 of sigma(g) - g = sum c_i f_i, as an echelon
// basis: pivots ascending, each c scaled so its first nonzero entry is 1.
// g is normalized to have no constant part. Throws UnsupportedShape.
std::vector<TelescopeSolution> param_telescope_basis(const Tower& t, const std::vector<TowerElem>& f);

// First element of the echelon basis, or nothing (a complete verdict).
std::optional<TelescopeSolution> param_telescope(const Tower& t, const std::vector<TowerElem>& f);

// Exact check of sigma(g) - g = sum c_i f_i.
bool check_telescoping(const Tower& t, const std::vector<TowerElem>& f, const TelescopeSolution& s);

struct MultiplicativeSolution {
    std::vector<long> c;
    BaseFun g;
};

// Integer c != 0 and g with sigma(g)/g = prod f_i^c_i over the rational base, or nothing.
std::optional<MultiplicativeSolution> solve_multiplicative(const std::vector<BaseFun>& f);

struct DiffHypResult {
    std::optional<TelescopeSolution> solution;
    std::vector<bool> gosper_summable;
    Tower tower;
};

// sigma(g) - g = sum c_i t_i for Pi generators t_i with the given shift quotients.
DiffHypResult diffhyp_telescope(const std::vector<BaseFun>& alphas);

struct ZeilbergerResult {
    bool found = false;
    long order = -1;
    long max_order = 0;
    std::vector<Constant> c;
    TowerElem g;
    Tower tower;
    std::vector<TowerElem> f;  // f_i = f(m + i, k) in the tower, i = 0..order
    bool rational_term = false;
};

// Shift in the parameter: m -> m + j inside every coefficient.
BaseFun shift_param(const BaseFun& f, long j);

// Creative telescoping for a hypergeometric term given by its shift quotients
// in k and in the parameter m; orders tried ascending from 0.
ZeilbergerResult zeilberger(const BaseFun& alpha_k, const BaseFun& alpha_m, long max_order);

}  // namespace telecert
