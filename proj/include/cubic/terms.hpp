#pragma once

// Cell-local enumeration of the summands of cup and cup-1 products. Numeric
// products and the symbolic phase-polynomial builders both go through these,
// so they agree term by term.

#include <bit>
#include <cstdint>
#include <vector>

#include "cubic/complex.hpp"

namespace cubic {

namespace detail {

// Sign of the shuffle that sorts the directions of I followed by those of S\I.
inline int shuffle_sign(std::uint32_t I, std::uint32_t S) {
    std::uint32_t J = S & ~I;
    int inv = 0;
    for (std::uint32_t m = I; m; m &= m - 1) {
        int i = std::countr_zero(m);
        inv += std::popcount(J & ((1u << i) - 1));
    }
    return (inv & 1) ? -1 : 1;
}

// Calls f(sub) for every subset of `mask` with exactly `k` bits.
template <class F>
void for_each_subset(std::uint32_t mask, int k, F&& f) {
    if (k < 0 || k > std::popcount(mask)) return;
    if (k == 0) { f(0u); return; }
    std::uint32_t bits[32];
    int n = 0;
    for (std::uint32_t m = mask; m; m &= m - 1) bits[n++] = static_cast<std::uint32_t>(std::countr_zero(m));
    std::uint32_t sel = (1u << k) - 1;
    const std::uint32_t lim = 1u << n;
    while (sel < lim) {
        std::uint32_t sub = 0;
        for (int i = 0; i < n; ++i)
            if (sel >> i & 1u) sub |= 1u << bits[i];
        f(sub);
        std::uint32_t c = sel & (0u - sel), r = sel + c;
        sel = (((r ^ sel) >> 2) / c) | r;
    }
}

} // namespace detail

// Summands of (alpha cup beta) on the n-cell `cell`, deg alpha = p:
// f(alpha_cell, beta_cell, sign). The sign is the integral orientation
// factor (shuffle sign on cubes, +1 on ordered simplices).
template <class F>
void for_each_cup_term(const CellComplex& cx, int n, std::uint32_t cell, int p, F&& f) {
    if (p < 0 || p > n) return;
    if (cx.is_hypercubic()) {
        const std::uint32_t x = cx.cube_base(n, cell), S = cx.cube_dirs(n, cell);
        detail::for_each_subset(S, p, [&](std::uint32_t I) {
            f(cx.cube_index(x, I), cx.cube_index(cx.shift_mask(x, I), S & ~I), detail::shuffle_sign(I, S));
        });
    } else {
        f(cx.subrange(n, cell, 0, p), cx.subrange(n, cell, p, n), 1);
    }
}

// Summands of (alpha cup beta cup gamma) on an n-cell with deg alpha = p and
// deg beta = q: f(alpha_cell, beta_cell, gamma_cell).
template <class F>
void for_each_triple_cup_term(const CellComplex& cx, int n, std::uint32_t cell, int p, int q, F&& f) {
    for_each_cup_term(cx, n, cell, p + q, [&](std::uint32_t ab, std::uint32_t g, int) {
        for_each_cup_term(cx, p + q, ab, p, [&](std::uint32_t a, std::uint32_t b, int) { f(a, b, g); });
    });
}

// Summands of (alpha cup_1 beta) on the n-cell `cell`, deg alpha = p,
// deg beta = n + 1 - p. On cubes the two faces share one direction s; alpha
// sits at the far end of every missing direction above s and beta at the far
// end of every missing direction below s. On simplices this is Steenrod's
// formula alpha(0..i, i+q..n) beta(i..i+q).
template <class F>
void for_each_cup1_term(const CellComplex& cx, int n, std::uint32_t cell, int p, F&& f) {
    const int q = n + 1 - p;
    if (p < 1 || q < 1) return;
    if (cx.is_hypercubic()) {
        const std::uint32_t x = cx.cube_base(n, cell), S = cx.cube_dirs(n, cell);
        for (std::uint32_t m = S; m; m &= m - 1) {
            const int s = std::countr_zero(m);
            const std::uint32_t rest = S & ~(1u << s);
            const std::uint32_t below = (1u << s) - 1;
            detail::for_each_subset(rest, p - 1, [&](std::uint32_t Ap) {
                std::uint32_t Bp = rest & ~Ap;
                std::uint32_t A = Ap | (1u << s), B = Bp | (1u << s);
                std::uint32_t xa = cx.shift_mask(x, Bp & ~below);
                std::uint32_t xb = cx.shift_mask(x, Ap & below);
                f(cx.cube_index(xa, A), cx.cube_index(xb, B));
            });
        }
    } else {
        int pos[32];
        for (int i = 0; i < p; ++i) {
            int t = 0;
            for (int v = 0; v <= i; ++v) pos[t++] = v;
            for (int v = i + q; v <= n; ++v) pos[t++] = v;
            f(cx.subsimplex(n, cell, std::span<const int>(pos, t)), cx.subrange(n, cell, i, i + q));
        }
    }
}

} // namespace cubic
