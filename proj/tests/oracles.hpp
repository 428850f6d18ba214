#pragma once

// Closed-form reference values written directly from the defining formulas,
// sharing no code paths with the library beyond its container types.

#include "brstlab/brst.hpp"

#include <gmpxx.h>
#include <map>
#include <vector>

namespace oracle {

using brst::Mono;
using brst::PhaseFunction;
using brst::Scalar;

inline mpz_class falling(long n, long r)
{
    mpz_class out = 1;
    for (long j = 0; j < r; ++j)
        out *= n - j;
    return out;
}

inline mpz_class factorial(long r) { return falling(r, r); }

/// (1/i)^r
inline Scalar minus_i_pow(int r)
{
    static const Scalar cyc[4] = {Scalar(1), Scalar(0, -1), Scalar(-1), Scalar(0, 1)};
    return cyc[r % 4];
}

/// exp((lambda/i)(d_phi (x) d_p + d_J (x) d_psi)) on monomials z^a w^b p^m J^j; variables (z, w, p, J)
inline brst::FunSeries torus_star(const Mono& f, const Mono& g, int order)
{
    brst::FunSeries out(order);
    for (int r = 0; r <= order; ++r)
        for (int s = 0; r + s <= order; ++s) {
            // d_phi^r z^a = (i a)^r, d_p^r p^n = n^(r), d_J^s J^j = j^(s), d_psi^s w^d = (i d)^s
            if (r > g[2] || s > f[3])
                continue;
            Scalar c = minus_i_pow(r + s);
            Scalar ia(0, f[0]), id(0, g[1]);
            for (int t = 0; t < r; ++t)
                c *= ia;
            for (int t = 0; t < s; ++t)
                c *= id;
            c *= Scalar(mpq_class(falling(g[2], r) * falling(f[3], s), factorial(r) * factorial(s)));
            if (c.is_zero())
                continue;
            Mono m{};
            m[0] = f[0] + g[0];
            m[1] = f[1] + g[1];
            m[2] = f[2] + g[2] - r;
            m[3] = f[3] + g[3] - s;
            out.at(r + s).add(m, c);
        }
    return out;
}

/// exp((lambda/i) d_phi (x) d_p) on z^a p^m, z^c p^n
inline brst::FunSeries reduced_torus_star(int a, int m, int c, int n, int order)
{
    brst::FunSeries out(order);
    for (int r = 0; r <= std::min(order, n); ++r) {
        Scalar coef = minus_i_pow(r);
        for (int t = 0; t < r; ++t)
            coef *= Scalar(0, a);
        coef *= Scalar(mpq_class(falling(n, r), factorial(r)));
        if (coef.is_zero())
            continue;
        Mono mono{};
        mono[0] = a + c;
        mono[2] = m + n - r;
        out.at(r).add(mono, coef);
    }
    return out;
}

/// generators of a word in canonical order: ghosts 0..n-1 then antighosts, encoded ghost a -> a, antighost a -> 32 + a
inline std::vector<int> letters(brst::GhostWord w)
{
    std::vector<int> out;
    for (int a = 0; a < 32; ++a)
        if ((w.g >> a) & 1u)
            out.push_back(a);
    for (int a = 0; a < 32; ++a)
        if ((w.a >> a) & 1u)
            out.push_back(32 + a);
    return out;
}

/// sign of the concatenation x y after bubble sorting; 0 if a letter repeats
inline int wedge_sign(brst::GhostWord x, brst::GhostWord y)
{
    std::vector<int> s = letters(x);
    for (int l : letters(y))
        s.push_back(l);
    int sign = 1;
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = 0; j + 1 < s.size() - i; ++j) {
            if (s[j] == s[j + 1])
                return 0;
            if (s[j] > s[j + 1]) {
                std::swap(s[j], s[j + 1]);
                sign = -sign;
            }
        }
    for (size_t j = 0; j + 1 < s.size(); ++j)
        if (s[j] == s[j + 1])
            return 0;
    return sign;
}

} // namespace oracle
