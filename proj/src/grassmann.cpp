#include "brstlab/grassmann.hpp"

#include "brstlab/errors.hpp"

#include <cctype>

namespace brst {

namespace {

inline uint32_t below(int i) { return (1u << i) - 1u; }
inline uint32_t above(int i) { return ~((2u << i) - 1u); }
inline int sign_of(int count) { return (count & 1) ? -1 : 1; }

// number of generators of w strictly before v in canonical order
int before(Gen v, GhostWord w)
{
    if (v.ghost)
        return std::popcount(w.g & below(v.index));
    return std::popcount(w.g) + std::popcount(w.a & below(v.index));
}

SignedWord remove(Gen dual, GhostWord w, bool fromRight)
{
    if (!w.has(dual))
        return {};
    const int pos = before(dual, w);
    const int after = w.degree() - 1 - pos;
    if (dual.ghost)
        w.g &= ~(1u << dual.index);
    else
        w.a &= ~(1u << dual.index);
    return {sign_of(fromRight ? after : pos), w};
}

} // namespace

SignedWord wedge(GhostWord x, GhostWord y)
{
    if ((x.g & y.g) || (x.a & y.a))
        return {};
    int inv = 0;
    for (uint32_t m = y.g; m; m &= m - 1) {
        int c = std::countr_zero(m);
        inv += std::popcount(x.g & above(c)) + std::popcount(x.a);
    }
    for (uint32_t m = y.a; m; m &= m - 1) {
        int c = std::countr_zero(m);
        inv += std::popcount(x.a & above(c));
    }
    return {sign_of(inv), GhostWord{x.g | y.g, x.a | y.a}};
}

SignedWord left_mul(Gen v, GhostWord w)
{
    if (w.has(v))
        return {};
    const int pos = before(v, w);
    if (v.ghost)
        w.g |= 1u << v.index;
    else
        w.a |= 1u << v.index;
    return {sign_of(pos), w};
}

SignedWord insert_left(Gen v, GhostWord w)
{
    return remove(Gen{!v.ghost, v.index}, w, false);
}

SignedWord insert_right(Gen v, GhostWord w)
{
    return remove(Gen{!v.ghost, v.index}, w, true);
}

std::vector<CliffTerm> cliff_words(GhostWord x, GhostWord y, const Scalar& kappa, int maxOrder)
{
    std::vector<CliffTerm> out;
    std::map<std::pair<GhostWord, GhostWord>, Scalar> cur{{{x, y}, Scalar(1)}};
    const Scalar cp = Scalar(0, 2) * kappa;
    const Scalar cq = Scalar(0, 2) * (Scalar(1) - kappa);
    for (int r = 0; r <= maxOrder && !cur.empty(); ++r) {
        std::map<GhostWord, Scalar> level;
        for (const auto& [uv, c] : cur) {
            SignedWord s = wedge(uv.first, uv.second);
            if (s)
                level[s.w] += s.sign > 0 ? c : -c;
        }
        for (const auto& [w, c] : level)
            if (!c.is_zero())
                out.push_back({r, c, w});
        if (r == maxOrder)
            break;
        std::map<std::pair<GhostWord, GhostWord>, Scalar> next;
        const Scalar inv = Scalar::frac(1, r + 1);
        for (const auto& [uv, c] : cur) {
            const auto& [u, v] = uv;
            // P: j(e_a) on the left factor, i(e^a) on the right factor
            for (uint32_t m = u.g & v.a; m; m &= m - 1) {
                int a = std::countr_zero(m);
                SignedWord l = insert_right(anti(a), u);
                SignedWord rr = insert_left(ghost(a), v);
                next[{l.w, rr.w}] += c * cp * inv * Scalar(l.sign * rr.sign);
            }
            // P*: j(e^a) on the left factor, i(e_a) on the right factor
            for (uint32_t m = u.a & v.g; m; m &= m - 1) {
                int a = std::countr_zero(m);
                SignedWord l = insert_right(ghost(a), u);
                SignedWord rr = insert_left(anti(a), v);
                next[{l.w, rr.w}] += c * cq * inv * Scalar(l.sign * rr.sign);
            }
        }
        cur.clear();
        for (auto& [k, c] : next)
            if (!c.is_zero())
                cur.emplace(k, c);
    }
    return out;
}

std::vector<std::pair<Scalar, GhostWord>> poisson_words(GhostWord x, GhostWord y)
{
    std::map<GhostWord, Scalar> acc;
    auto push = [&](SignedWord l, SignedWord r) {
        SignedWord s = wedge(l.w, r.w);
        if (s)
            acc[s.w] += Scalar(2 * l.sign * r.sign * s.sign);
    };
    for (uint32_t m = x.g & y.a; m; m &= m - 1) {
        int a = std::countr_zero(m);
        push(insert_right(anti(a), x), insert_left(ghost(a), y));
    }
    for (uint32_t m = x.a & y.g; m; m &= m - 1) {
        int a = std::countr_zero(m);
        push(insert_right(ghost(a), x), insert_left(anti(a), y));
    }
    std::vector<std::pair<Scalar, GhostWord>> out;
    for (auto& [w, c] : acc)
        if (!c.is_zero())
            out.emplace_back(c, w);
    return out;
}

std::string word_str(GhostWord w)
{
    if (w.g == 0 && w.a == 0)
        return "1";
    std::string s;
    for (uint32_t m = w.g; m; m &= m - 1)
        s += (s.empty() ? "" : "^") + std::string("e^") + std::to_string(std::countr_zero(m) + 1);
    for (uint32_t m = w.a; m; m &= m - 1)
        s += (s.empty() ? "" : "^") + std::string("e_") + std::to_string(std::countr_zero(m) + 1);
    return s;
}

SignedWord parse_word(const std::string& text)
{
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            t += c;
    if (t == "1")
        return {1, {}};
    std::vector<Gen> gens;
    size_t i = 0;
    while (i < t.size()) {
        if (t[i] != 'e' || i + 2 >= t.size() || (t[i + 1] != '^' && t[i + 1] != '_'))
            throw ParseError("bad ghost word '" + text + "'");
        const bool isGhost = t[i + 1] == '^';
        i += 2;
        size_t j = i;
        while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j])))
            ++j;
        if (j == i)
            throw ParseError("missing index in ghost word '" + text + "'");
        int idx = std::stoi(t.substr(i, j - i));
        if (idx < 1 || idx > 16)
            throw ParseError("ghost index out of range in '" + text + "'");
        gens.push_back({isGhost, idx - 1});
        i = j;
        if (i < t.size()) {
            if (t[i] != '^')
                throw ParseError("expected '^' in ghost word '" + text + "'");
            ++i;
            if (i == t.size())
                throw ParseError("trailing '^' in ghost word '" + text + "'");
        }
    }
    SignedWord acc{1, {}};
    for (auto it = gens.rbegin(); it != gens.rend(); ++it) {
        SignedWord s = left_mul(*it, acc.w);
        if (!s)
            return {};
        acc = {acc.sign * s.sign, s.w};
    }
    return acc;
}

ScalarSeries scalar_series_mul(const ScalarSeries& a, const ScalarSeries& b)
{
    return series_mul(a, b);
}

GrassElement wedge(const GrassElement& x, const GrassElement& y)
{
    return graded_product(
        x, y,
        [](GhostWord u, GhostWord v) {
            std::vector<CliffTerm> r;
            if (SignedWord s = wedge(u, v))
                r.push_back({0, Scalar(s.sign), s.w});
            return r;
        },
        scalar_series_mul);
}

GrassElement cliff_kappa(const GrassElement& x, const GrassElement& y, const Scalar& kappa)
{
    const int n = x.order();
    return graded_product(
        x, y, [&](GhostWord u, GhostWord v) { return cliff_words(u, v, kappa, n); }, scalar_series_mul);
}

GrassElement grass_poisson(const GrassElement& x, const GrassElement& y)
{
    return graded_product(
        x, y,
        [](GhostWord u, GhostWord v) {
            std::vector<CliffTerm> r;
            for (auto& [c, w] : poisson_words(u, v))
                r.push_back({0, c, w});
            return r;
        },
        scalar_series_mul);
}

GrassElement gamma_element(int n, int order)
{
    GrassElement g(order);
    for (int a = 0; a < n; ++a) {
        GhostWord w{1u << a, 1u << a};
        g.add(w, ScalarSeries::constant(Scalar::frac(1, 2), order));
    }
    return g;
}

std::string grass_str(const GrassElement& x)
{
    return graded_str<Scalar>(x, [](const ScalarSeries& s) { return "(" + series_str(s) + ")"; });
}

} // namespace brst
