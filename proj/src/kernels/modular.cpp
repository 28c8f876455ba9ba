#include "telecert/kernels/modular.hpp"

#include <cstdlib>
#include <string_view>
#include <stdexcept>
#include <utility>

#if defined(__x86_64__) || defined(__i386__)
#define TELECERT_X86 1
#include <immintrin.h>
#else
#define TELECERT_X86 0
#endif

namespace telecert::kernels {

const std::vector<std::uint32_t>& oracle_primes()
{
    static const std::vector<std::uint32_t> primes{67108859u, 67108837u, 67108819u, 67108777u};
    return primes;
}

void submul_mod_scalar(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t f, std::size_t n,
                       std::uint32_t p)
{
    const std::uint64_t pp = p;
    const std::uint64_t neg = pp - f % pp;
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = static_cast<std::uint32_t>((dst[i] + neg * src[i]) % pp);
}

#if TELECERT_X86

__attribute__((target("avx2,fma"))) void submul_mod_avx2(std::uint32_t* dst, const std::uint32_t* src,
                                                          std::uint32_t f, std::size_t n, std::uint32_t p)
{
    const __m256d vp = _mm256_set1_pd(static_cast<double>(p));
    const __m256d vinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
    const __m256d vf = _mm256_set1_pd(static_cast<double>(f % p));
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m128i s4 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + i));
        __m128i d4 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + i));
        __m256d s = _mm256_cvtepi32_pd(s4);
        __m256d d = _mm256_cvtepi32_pd(d4);
        // prod < 2^52 is exact; q may be off by one, fixed below.
        __m256d prod = _mm256_mul_pd(vf, s);
        __m256d q = _mm256_floor_pd(_mm256_mul_pd(prod, vinv));
        __m256d r = _mm256_fnmadd_pd(q, vp, prod);
        r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), vp));
        r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, vp, _CMP_GE_OQ), vp));
        __m256d out = _mm256_sub_pd(d, r);
        out = _mm256_add_pd(out, _mm256_and_pd(_mm256_cmp_pd(out, zero, _CMP_LT_OQ), vp));
        _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), _mm256_cvtpd_epi32(out));
    }
    if (i < n)
        submul_mod_scalar(dst + i, src + i, f, n - i, p);
}

bool cpu_has_avx2()
{
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

#else

void submul_mod_avx2(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t f, std::size_t n,
                     std::uint32_t p)
{
    submul_mod_scalar(dst, src, f, n, p);
}

bool cpu_has_avx2() { return false; }

#endif

SubmulFn select_submul()
{
    static const SubmulFn fn = [] {
        const char* force = std::getenv("TELECERT_SCALAR");
        if (force != nullptr && std::string_view(force) == "1")
            return &submul_mod_scalar;
        return cpu_has_avx2() ? &submul_mod_avx2 : &submul_mod_scalar;
    }();
    return fn;
}

void submul_mod(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t f, std::size_t n, std::uint32_t p)
{
    select_submul()(dst, src, f, n, p);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p)
{
    std::int64_t t = 0, nt = 1;
    std::int64_t r = p, nr = a % p;
    if (nr == 0)
        throw std::domain_error("inverse of zero residue");
    while (nr != 0) {
        std::int64_t q = r / nr;
        t = std::exchange(nt, t - q * nt);
        r = std::exchange(nr, r - q * nr);
    }
    if (t < 0)
        t += p;
    return static_cast<std::uint32_t>(t);
}

std::size_t rank_mod(std::vector<std::uint32_t> m, std::size_t rows, std::size_t cols, std::uint32_t p, SubmulFn fn)
{
    if (p >= kMaxModulus)
        throw std::invalid_argument("modulus must be below 2^26");
    if (fn == nullptr)
        fn = select_submul();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv * cols + c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        if (piv != r)
            for (std::size_t j = c; j < cols; ++j)
                std::swap(m[piv * cols + j], m[r * cols + j]);
        std::uint32_t* prow = &m[r * cols];
        const std::uint64_t inv = inv_mod(prow[c], p);
        for (std::size_t j = c; j < cols; ++j)
            prow[j] = static_cast<std::uint32_t>(prow[j] * inv % p);
        for (std::size_t i = r + 1; i < rows; ++i) {
            std::uint32_t f = m[i * cols + c];
            if (f != 0)
                fn(&m[i * cols + c], prow + c, f, cols - c, p);
        }
        ++r;
    }
    return r;
}

}  // namespace telecert::kernels
