#pragma once

#include "telecert/tower/tower.hpp"

#include <optional>
#include <string>
#include <variant>

namespace telecert {

// Why a generator was not admitted: sigma(g) - g = beta (Sigma, n = 0) or
// sigma(g) = alpha^n g (Pi).
struct Rejection {
    long n = 0;
    TowerElem g;
    std::string reason;
};

using Admission = std::variant<Tower, Rejection>;

// Default seeds: Sigma r = L(beta) + 1, c = 0; Pi r = max(Z(alpha), L(alpha)) + 1, c = 1.
Seed default_sigma_seed(const Tower& t, const TowerElem& beta);
Seed default_pi_seed(const Tower& t, const BaseFun& alpha);

// Extend by sigma(s) = s + beta if no g in the current field telescopes beta.
Admission admit_sigma(const Tower& t, const std::string& name, const TowerElem& beta,
                      std::optional<Seed> seed = std::nullopt);

// Extend by sigma(p) = alpha p if alpha^n is never sigma(g)/g in the current field.
Admission admit_pi(const Tower& t, const std::string& name, const TowerElem& alpha,
                   std::optional<Seed> seed = std::nullopt);

// Unwrap or throw TowerInvalid carrying the rejection witness.
Tower admitted(const Admission& a);

}  // namespace telecert
