#pragma once

#include "brstlab/scalar.hpp"
#include "brstlab/series.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace brst {

/// Basis generator: ghost e^index (element of g*) or antighost e_index (element of g).
struct Gen {
    bool ghost;
    int index; // 0-based
};
inline Gen ghost(int a) { return {true, a}; }
inline Gen anti(int a) { return {false, a}; }

/// e^{a1}^...^e^{ak}^e_{b1}^...^e_{bl}, ascending indices, ghosts first.
struct GhostWord {
    uint32_t g = 0;
    uint32_t a = 0;

    int ghost_degree() const { return std::popcount(g); }
    int antighost_degree() const { return std::popcount(a); }
    int degree() const { return ghost_degree() + antighost_degree(); }
    int parity() const { return degree() & 1; }
    int ghost_number() const { return ghost_degree() - antighost_degree(); }
    bool has(Gen v) const { return ((v.ghost ? g : a) >> v.index) & 1u; }

    friend auto operator<=>(const GhostWord&, const GhostWord&) = default;
};

/// A word with a sign; sign == 0 encodes the zero element.
struct SignedWord {
    int sign = 0;
    GhostWord w;
    explicit operator bool() const { return sign != 0; }
};

SignedWord wedge(GhostWord x, GhostWord y);
/// v ^ w
SignedWord left_mul(Gen v, GhostWord w);
/// i(v): v = e_a removes e^a, v = e^a removes e_a; sign from the factors in front
SignedWord insert_left(Gen v, GhostWord w);
/// j(v) = -(-1)^deg i(v)
SignedWord insert_right(Gen v, GhostWord w);

struct CliffTerm {
    int power; // of lambda
    Scalar coeff;
    GhostWord word;
};

/// x o_kappa y = mu o exp(2 i lambda (kappa P + (1-kappa) P*)) (x (x) y), truncated at maxOrder.
std::vector<CliffTerm> cliff_words(GhostWord x, GhostWord y, const Scalar& kappa, int maxOrder);

/// 2 mu (P + P*)(x (x) y)
std::vector<std::pair<Scalar, GhostWord>> poisson_words(GhostWord x, GhostWord y);

std::string word_str(GhostWord w);
/// "1", "e^1^e_2", any order of factors; repeated factors give sign 0
SignedWord parse_word(const std::string& text);

/// Elements of Lambda(g* + g) (x) C[[lambda]] for a coefficient algebra C.
/// C needs: default = 0, construction from Scalar, +=, -=, *= Scalar, unary -, ==, is_zero().
template <class C>
class Graded {
public:
    using Coeff = Series<C>;
    using Map = std::map<GhostWord, Coeff>;

    explicit Graded(int order = 0) : order_(order) {}

    static Graded unit(int order) { return term(GhostWord{}, Coeff::constant(C(Scalar(1)), order)); }
    static Graded term(GhostWord w, const Coeff& s)
    {
        Graded x(s.order());
        x.add(w, s);
        return x;
    }
    static Graded term(GhostWord w, const C& c, int order) { return term(w, Coeff::constant(c, order)); }

    int order() const { return order_; }
    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }

    Coeff coeff(GhostWord w) const
    {
        auto it = t_.find(w);
        return it == t_.end() ? Coeff(order_) : it->second;
    }

    void add(GhostWord w, const Coeff& s)
    {
        check(s.order());
        auto it = t_.find(w);
        if (it == t_.end()) {
            if (!s.is_zero())
                t_.emplace(w, s);
            return;
        }
        it->second += s;
        if (it->second.is_zero())
            t_.erase(it);
    }
    void add(GhostWord w, const Coeff& s, const Scalar& k)
    {
        if (k.is_zero())
            return;
        add(w, k == Scalar(1) ? s : s * k);
    }

    Graded& operator+=(const Graded& o)
    {
        check(o.order_);
        for (const auto& [w, s] : o.t_)
            add(w, s);
        return *this;
    }
    Graded& operator-=(const Graded& o)
    {
        check(o.order_);
        for (const auto& [w, s] : o.t_)
            add(w, -s);
        return *this;
    }
    Graded& operator*=(const Scalar& k)
    {
        if (k.is_zero()) {
            t_.clear();
            return *this;
        }
        for (auto& [w, s] : t_)
            s *= k;
        return *this;
    }
    friend Graded operator+(Graded a, const Graded& b) { return a += b; }
    friend Graded operator-(Graded a, const Graded& b) { return a -= b; }
    friend Graded operator*(Graded a, const Scalar& k) { return a *= k; }
    friend Graded operator*(const Scalar& k, Graded a) { return a *= k; }
    Graded operator-() const { return *this * Scalar(-1); }
    friend bool operator==(const Graded& a, const Graded& b)
    {
        return a.order_ == b.order_ && a.t_ == b.t_;
    }
    friend bool operator!=(const Graded& a, const Graded& b) { return !(a == b); }

    Graded with_order(int n) const
    {
        Graded x(n);
        for (const auto& [w, s] : t_)
            x.add(w, s.with_order(n));
        return x;
    }
    /// multiplication by lambda^k
    Graded shifted(int k) const
    {
        Graded x(order_);
        for (const auto& [w, s] : t_)
            x.add(w, s.shifted(k));
        return x;
    }
    /// lowest lambda power present; order()+1 for zero
    int valuation() const
    {
        int v = order_ + 1;
        for (const auto& [w, s] : t_)
            v = std::min(v, s.valuation());
        return v;
    }

    /// keep words satisfying pred
    template <class Pred>
    Graded filter(Pred&& pred) const
    {
        Graded x(order_);
        for (const auto& [w, s] : t_)
            if (pred(w))
                x.t_.emplace(w, s);
        return x;
    }
    Graded bidegree(int k, int l) const
    {
        return filter([&](GhostWord w) { return w.ghost_degree() == k && w.antighost_degree() == l; });
    }
    Graded antighost(int l) const
    {
        return filter([&](GhostWord w) { return w.antighost_degree() == l; });
    }
    Graded parity_part(int p) const
    {
        return filter([&](GhostWord w) { return w.parity() == p; });
    }

    /// Apply a map on words that returns a single signed word (or zero).
    template <class F>
    Graded map_words(F&& f) const
    {
        Graded x(order_);
        for (const auto& [w, s] : t_) {
            SignedWord r = f(w);
            if (r)
                x.add(r.w, r.sign > 0 ? s : -s);
        }
        return x;
    }

    /// Apply f(word, coeff) -> Graded and sum.
    template <class F>
    Graded map_terms(F&& f) const
    {
        Graded x(order_);
        for (const auto& [w, s] : t_)
            x += f(w, s);
        return x;
    }

    void check(int n) const
    {
        if (n != order_)
            throw ConfigError("truncation order mismatch: " + std::to_string(order_) + " vs " +
                              std::to_string(n));
    }

private:
    int order_;
    Map t_;
};

using GrassElement = Graded<Scalar>;

template <class C>
Graded<C> insert_left(Gen v, const Graded<C>& x)
{
    return x.map_words([&](GhostWord w) { return insert_left(v, w); });
}
template <class C>
Graded<C> insert_right(Gen v, const Graded<C>& x)
{
    return x.map_words([&](GhostWord w) { return insert_right(v, w); });
}
template <class C>
Graded<C> left_mul(Gen v, const Graded<C>& x)
{
    return x.map_words([&](GhostWord w) { return left_mul(v, w); });
}

/// Delta = sum_a i(e_a) i(e^a)
template <class C>
Graded<C> super_laplacian(const Graded<C>& x, int n)
{
    Graded<C> out(x.order());
    for (int a = 0; a < n; ++a)
        out += insert_left(anti(a), insert_left(ghost(a), x));
    return out;
}

/// S_kappa = exp(2 i kappa lambda Delta)
template <class C>
Graded<C> s_kappa(const Graded<C>& x, const Scalar& kappa, int n)
{
    Graded<C> out = x;
    Graded<C> cur = x;
    const Scalar step = Scalar(0, 2) * kappa;
    for (int k = 1; k <= x.order() && !cur.is_zero(); ++k) {
        cur = super_laplacian(cur, n).shifted(1) * (step / Scalar(k));
        out += cur;
    }
    return out;
}

/// Bilinear extension of a word product; coeffMul(s, t) multiplies coefficient series.
template <class C, class WordMul, class CoeffMul>
Graded<C> graded_product(const Graded<C>& x, const Graded<C>& y, WordMul&& wordMul, CoeffMul&& coeffMul)
{
    x.check(y.order());
    const int n = x.order();
    Graded<C> out(n);
    for (const auto& [u, s] : x.terms())
        for (const auto& [v, t] : y.terms()) {
            std::vector<CliffTerm> words = wordMul(u, v);
            if (words.empty())
                continue;
            Series<C> st = coeffMul(s, t);
            for (const CliffTerm& ct : words)
                out.add(ct.word, ct.power == 0 ? st : st.shifted(ct.power), ct.coeff);
        }
    return out;
}

ScalarSeries scalar_series_mul(const ScalarSeries& a, const ScalarSeries& b);

GrassElement wedge(const GrassElement& x, const GrassElement& y);
GrassElement cliff_kappa(const GrassElement& x, const GrassElement& y, const Scalar& kappa);
GrassElement grass_poisson(const GrassElement& x, const GrassElement& y);

/// gamma = 1/2 sum_a e^a ^ e_a
GrassElement gamma_element(int n, int order);

template <class C>
std::string graded_str(const Graded<C>& x, const std::function<std::string(const Series<C>&)>& coeffStr)
{
    if (x.is_zero())
        return "0";
    std::string out;
    for (const auto& [w, s] : x.terms()) {
        if (!out.empty())
            out += " + ";
        out += "[" + word_str(w) + "] " + coeffStr(s);
    }
    return out;
}

std::string grass_str(const GrassElement& x);

} // namespace brst
