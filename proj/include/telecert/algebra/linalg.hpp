#pragma once

#include "telecert/algebra/ratfun.hpp"

#include <cstddef>
#include <vector>

namespace telecert {

template <class F>
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<F> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, F(0)) {}
    F& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

inline std::size_t pivot_cost(const Rational& x)
{
    return mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
}

template <class F>
std::size_t pivot_cost(const RatFun<F>& x)
{
    std::size_t c = 0;
    for (const auto& v : x.num().coeffs())
        c += 1 + pivot_cost(v);
    for (const auto& v : x.den().coeffs())
        c += 1 + pivot_cost(v);
    return c;
}

// In-place reduced row echelon form; returns pivot columns.
template <class F>
std::vector<std::size_t> rref(Matrix<F>& m)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t best = m.rows;
        std::size_t best_cost = 0;
        for (std::size_t i = r; i < m.rows; ++i) {
            if (is_zero(m(i, c)))
                continue;
            std::size_t cost = pivot_cost(m(i, c));
            if (best == m.rows || cost < best_cost) {
                best = i;
                best_cost = cost;
            }
        }
        if (best == m.rows)
            continue;
        if (best != r)
            for (std::size_t j = 0; j < m.cols; ++j)
                std::swap(m(best, j), m(r, j));
        F inv = F(1) / m(r, c);
        for (std::size_t j = c; j < m.cols; ++j)
            if (!is_zero(m(r, j)))
                m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || is_zero(m(i, c)))
                continue;
            F f = m(i, c);
            for (std::size_t j = c; j < m.cols; ++j)
                if (!is_zero(m(r, j)))
                    m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Basis of {x : m x = 0}, one vector per free column (entry 1 there).
template <class F>
std::vector<std::vector<F>> nullspace(Matrix<F> m)
{
    std::vector<std::size_t> piv = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t p : piv)
        is_pivot[p] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<F> v(m.cols, F(0));
        v[f] = F(1);
        for (std::size_t i = 0; i < piv.size(); ++i)
            if (!is_zero(m(i, f)))
                v[piv[i]] = -m(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace telecert
