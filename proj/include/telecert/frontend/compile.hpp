#pragma once

// Lowering of expressions into towers, shift quotients and direct values.

#include "telecert/frontend/expr.hpp"
#include "telecert/tower/tower.hpp"

#include <optional>
#include <string>
#include <vector>

namespace telecert {

struct CompileOptions {
    std::string var = "k";
    std::string param;  // empty: the single free symbol other than var, if any
};

struct Compiled {
    Tower tower;
    std::vector<TowerElem> f;
    // Kernels whose seed is not in the constant field are normalized to 1 at r - 1.
    std::vector<std::string> notes;
};

// One Pi generator per hypergeometric kernel (product of atoms along one
// exponent direction), one Sigma generator per harmonic-type sum; every
// generator passes admission. Throws NotCompilable, StartTooSmall and
// admission errors.
Compiled compile_to_tower(const std::vector<Expr>& exprs, const CompileOptions& opts = {});

struct HyperRatios {
    BaseFun alpha_k;  // f(m, k+1) / f(m, k)
    BaseFun alpha_m;  // f(m+1, k) / f(m, k)
    std::string param;
};

// Shift quotients of a single hypergeometric term. Throws NotHypergeometric, NotCompilable.
HyperRatios hypergeometric_ratios(const Expr& summand, const CompileOptions& opts = {});

// Exact value at var = k0, the parameter symbolic or substituted. Throws
// NotCompilable when the value is not in the constant field (e.g. m! for symbolic m).
Constant eval_direct(const Expr& e, long k0, const CompileOptions& opts = {},
                     const std::optional<Rational>& param_value = std::nullopt);

// The parameter symbol the expressions use ("" if none).
std::string detect_param(const std::vector<Expr>& exprs, const CompileOptions& opts,
                         const std::vector<std::string>& reserved = {});

// Expression over an existing tower: var (or qpow(var) on the q-base), the
// parameter and generator names. Throws NotCompilable.
TowerElem lower_in_tower(const Expr& e, const Tower& t);

struct TowerSpecDoc {
    Tower tower;
    std::vector<TowerElem> summands;
    std::vector<std::string> summand_text;
};

// Parses the JSON tower-spec document and runs admission for every generator.
// Throws std::invalid_argument for malformed documents, TowerInvalid for rejections.
TowerSpecDoc load_tower_spec(const std::string& json_text);

}  // namespace telecert
