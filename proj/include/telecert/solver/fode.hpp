#pragma once

#include "telecert/tower/tower.hpp"

#include <optional>
#include <vector>

namespace telecert {

struct FodeSolution {
    std::vector<Constant> c;
    BaseFun v;
};

// Basis of {(c, v) : a*sigma(v) + b*v = sum c_i rhs_i} over the base field,
// sigma being k -> k + 1 (Rational) or x -> q x (QPower). An empty basis means
// only the trivial solution exists.
std::vector<FodeSolution> solve_param_fode(BaseKind base, const BaseFun& a, const BaseFun& b,
                                           const std::vector<BaseFun>& rhs);

// Universal denominator of a*sigma(y) + b*y = r for polynomial a, b (Abramov).
BasePoly universal_denominator(BaseKind base, const BasePoly& a, const BasePoly& b);

// v with alpha*sigma(v) - v = 1, or nothing.
std::optional<BaseFun> gosper(BaseKind base, const BaseFun& alpha);

}  // namespace telecert
