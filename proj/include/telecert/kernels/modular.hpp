#pragma once

// Modular row operations for the relation oracle's rank screen.
// Moduli are primes below 2^26, so a product of two residues is exact in a
// double; the AVX2 variant relies on that.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace telecert::kernels {

constexpr std::uint32_t kMaxModulus = 1u << 26;

// Primes below 2^26 used by the oracle, largest first.
const std::vector<std::uint32_t>& oracle_primes();

// dst[i] = (dst[i] - f * src[i]) mod p, for residues in [0, p).
void submul_mod_scalar(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t f, std::size_t n,
                       std::uint32_t p);
void submul_mod_avx2(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t f, std::size_t n,
                     std::uint32_t p);

using SubmulFn = void (*)(std::uint32_t*, const std::uint32_t*, std::uint32_t, std::size_t, std::uint32_t);

bool cpu_has_avx2();
// AVX2 when the CPU supports it, scalar otherwise. TELECERT_SCALAR=1 forces scalar.
SubmulFn select_submul();
void submul_mod(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t f, std::size_t n, std::uint32_t p);

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);

// Rank of a row-major rows x cols matrix of residues mod p (matrix is consumed).
std::size_t rank_mod(std::vector<std::uint32_t> m, std::size_t rows, std::size_t cols, std::uint32_t p,
                     SubmulFn fn = nullptr);

}  // namespace telecert::kernels
