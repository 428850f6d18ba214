#include "brstlab/phasespace.hpp"

#include "brstlab/errors.hpp"

#include <sstream>

namespace brst {

// ---- PhaseFunction ----

Scalar PhaseFunction::coeff(const Mono& m) const
{
    auto it = t_.find(m);
    return it == t_.end() ? Scalar() : it->second;
}

void PhaseFunction::add(const Mono& m, const Scalar& c)
{
    if (c.is_zero())
        return;
    auto [it, fresh] = t_.try_emplace(m, c);
    if (fresh)
        return;
    it->second += c;
    if (it->second.is_zero())
        t_.erase(it);
}

PhaseFunction& PhaseFunction::operator+=(const PhaseFunction& o)
{
    for (const auto& [m, c] : o.t_)
        add(m, c);
    return *this;
}

PhaseFunction& PhaseFunction::operator-=(const PhaseFunction& o)
{
    for (const auto& [m, c] : o.t_)
        add(m, -c);
    return *this;
}

PhaseFunction& PhaseFunction::operator*=(const Scalar& k)
{
    if (k.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto& [m, c] : t_)
        c *= k;
    return *this;
}

PhaseFunction operator*(const PhaseFunction& a, const PhaseFunction& b)
{
    PhaseFunction out;
    for (const auto& [ma, ca] : a.t_)
        for (const auto& [mb, cb] : b.t_) {
            Mono m;
            for (int v = 0; v < kMaxVars; ++v)
                m[v] = static_cast<int16_t>(ma[v] + mb[v]);
            out.add(m, ca * cb);
        }
    return out;
}

// ---- Backend construction ----

Backend Backend::torus()
{
    Backend b;
    b.kind_ = BackendKind::Torus;
    b.name_ = "torus";
    b.vars_ = {"z", "w", "p", "J"};
    b.kinds_ = {VarKind::Fourier, VarKind::Fourier, VarKind::Poly, VarKind::Poly};
    const Scalar mi = Scalar(0, -1); // 1/i
    // (lambda/i)(d_phi (x) d_p + d_J (x) d_psi)
    b.starPairs_ = {{0, 2, mi}, {3, 1, mi}};
    b.poissonTerms_ = {{2, 0, 1}, {0, 2, -1}, {1, 3, 1}, {3, 1, -1}};
    b.momVars_ = {3};
    b.lieDim_ = 1;
    return b;
}

Backend Backend::torus_perturbed(const PhaseFunction& P)
{
    for (const auto& [m, c] : P.terms())
        for (int v = 0; v < kMaxVars; ++v)
            if (v != 2 && m[v] != 0)
                throw ConfigError("perturbation P must depend on p alone");
    Backend b = torus();
    b.kind_ = BackendKind::TorusPerturbed;
    b.name_ = "torus-perturbed";
    b.P_ = P;
    return b;
}

Backend Backend::flat(int d, int k, bool weyl)
{
    if (d < 1 || 2 * d > kMaxVars)
        throw ConfigError("flat backend needs 1 <= d <= " + std::to_string(kMaxVars / 2));
    if (k < 1 || k > d)
        throw ConfigError("flat backend needs 1 <= k <= d");
    Backend b;
    b.kind_ = weyl ? BackendKind::FlatWeyl : BackendKind::Flat;
    b.name_ = std::string(weyl ? "flat-weyl:" : "flat:") + std::to_string(d) + "," + std::to_string(k);
    for (int j = 1; j <= d; ++j)
        b.vars_.push_back("x" + std::to_string(j));
    for (int j = 1; j <= d; ++j)
        b.vars_.push_back("p" + std::to_string(j));
    b.kinds_.assign(2 * d, VarKind::Poly);
    for (int j = 0; j < d; ++j) {
        if (weyl) {
            b.starPairs_.push_back({j, d + j, Scalar(0, -1) * Scalar::frac(1, 2)});
            b.starPairs_.push_back({d + j, j, Scalar(0, 1) * Scalar::frac(1, 2)});
        } else {
            b.starPairs_.push_back({j, d + j, Scalar(0, -1)});
        }
        b.poissonTerms_.push_back({d + j, j, 1});
        b.poissonTerms_.push_back({j, d + j, -1});
    }
    for (int a = 0; a < k; ++a)
        b.momVars_.push_back(d + (d - k) + a);
    b.lieDim_ = k;
    return b;
}

Backend Backend::point(int lieDim)
{
    Backend b;
    b.kind_ = BackendKind::Point;
    b.name_ = "point";
    b.lieDim_ = lieDim;
    return b;
}

namespace {

std::pair<int, int> parse_dk(const std::string& s)
{
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw ConfigError("expected d,k in backend spec, got '" + s + "'");
    try {
        return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw ConfigError("expected d,k in backend spec, got '" + s + "'");
    }
}

} // namespace

Backend Backend::from_spec(const std::string& spec, int lieDim)
{
    if (spec == "torus")
        return torus();
    if (spec == "torus-perturbed") {
        Backend t = torus();
        return torus_perturbed(t.variable(2));
    }
    if (spec == "point")
        return point(lieDim);
    if (spec.rfind("flat:", 0) == 0) {
        auto [d, k] = parse_dk(spec.substr(5));
        return flat(d, k, false);
    }
    if (spec.rfind("flat-weyl:", 0) == 0) {
        auto [d, k] = parse_dk(spec.substr(10));
        return flat(d, k, true);
    }
    throw ConfigError("unknown backend '" + spec + "'");
}

// ---- calculus ----

Mono Backend::var(int v, int e) const
{
    Mono m{};
    m[v] = static_cast<int16_t>(e);
    return m;
}

namespace {

// derivative of a single monomial; returns false if it vanishes
bool diff_mono(Mono& m, Scalar& c, int v, VarKind kind)
{
    if (m[v] == 0)
        return false;
    if (kind == VarKind::Fourier) {
        c *= Scalar(0, m[v]);
    } else {
        c *= Scalar(m[v]);
        --m[v];
    }
    return true;
}

} // namespace

PhaseFunction Backend::diff(const PhaseFunction& f, int v) const
{
    PhaseFunction out;
    for (const auto& [m0, c0] : f.terms()) {
        Mono m = m0;
        Scalar c = c0;
        if (diff_mono(m, c, v, kinds_[v]))
            out.add(m, c);
    }
    return out;
}

FunSeries Backend::raw_star(const PhaseFunction& f, const PhaseFunction& g, int order) const
{
    FunSeries out(order);
    using Pair = std::pair<Mono, Mono>;
    for (const auto& [ma, ca] : f.terms())
        for (const auto& [mb, cb] : g.terms()) {
            std::map<Pair, Scalar> cur{{{ma, mb}, ca * cb}};
            for (int r = 0; r <= order && !cur.empty(); ++r) {
                PhaseFunction level;
                for (const auto& [ab, c] : cur) {
                    Mono m;
                    for (int v = 0; v < kMaxVars; ++v)
                        m[v] = static_cast<int16_t>(ab.first[v] + ab.second[v]);
                    level.add(m, c);
                }
                out.at(r) += level;
                if (r == order)
                    break;
                std::map<Pair, Scalar> next;
                const Scalar inv = Scalar::frac(1, r + 1);
                for (const auto& [ab, c] : cur)
                    for (const DerivPair& dp : starPairs_) {
                        Mono l = ab.first, rr = ab.second;
                        Scalar k = c * dp.c * inv;
                        if (!diff_mono(l, k, dp.left, kinds_[dp.left]) ||
                            !diff_mono(rr, k, dp.right, kinds_[dp.right]))
                            continue;
                        next[{l, rr}] += k;
                    }
                cur.clear();
                for (auto& [ab, c] : next)
                    if (!c.is_zero())
                        cur.emplace(ab, c);
            }
        }
    return out;
}

FunSeries Backend::base_star(const FunSeries& f, const FunSeries& g) const
{
    return series_product(f, g, [this](const PhaseFunction& a, const PhaseFunction& b, int m) {
        return raw_star(a, b, m);
    });
}

FunSeries Backend::star(const FunSeries& f, const FunSeries& g) const
{
    if (kind_ != BackendKind::TorusPerturbed)
        return base_star(f, g);
    return apply_s(base_star(apply_s(f, -1), apply_s(g, -1)), 1);
}

FunSeries Backend::star(const PhaseFunction& f, const PhaseFunction& g, int order) const
{
    return star(FunSeries::constant(f, order), FunSeries::constant(g, order));
}

FunSeries Backend::apply_s(const FunSeries& f, int t) const
{
    if (kind_ != BackendKind::TorusPerturbed)
        return f;
    const int n = f.order();
    FunSeries out = f;
    for (int i = 0; i <= n; ++i) {
        PhaseFunction cur = f[i];
        for (int r = 1; i + r <= n && !cur.is_zero(); ++r) {
            // cur <- (t/r) P dJ cur
            cur = P_ * diff(cur, 3) * Scalar::frac(t, r);
            out.at(i + r) += cur;
        }
    }
    return out;
}

PhaseFunction Backend::poisson(const PhaseFunction& f, const PhaseFunction& g) const
{
    PhaseFunction out;
    for (const DerivPair& t : poissonTerms_)
        out += diff(f, t.left) * diff(g, t.right) * t.c;
    return out;
}

FunSeries Backend::momentum(int a, int order) const
{
    return FunSeries::constant(classical_momentum(a), order);
}

PhaseFunction Backend::classical_momentum(int a) const
{
    if (a < 0 || a >= lieDim_)
        throw ConfigError("momentum index out of range");
    if (point())
        return PhaseFunction();
    return variable(momVars_[a]);
}

PhaseFunction Backend::lie_classical(int a, const PhaseFunction& f) const
{
    return poisson(classical_momentum(a), f);
}

bool Backend::is_constraint_function(const PhaseFunction& f) const
{
    for (const auto& [m, c] : f.terms())
        for (int v : momVars_)
            if (m[v] != 0)
                return false;
    return true;
}

PhaseFunction Backend::restrict_fn(const PhaseFunction& f) const
{
    PhaseFunction out;
    for (const auto& [m, c] : f.terms()) {
        bool keep = true;
        for (int v : momVars_)
            keep = keep && m[v] == 0;
        if (keep)
            out.add(m, c);
    }
    return out;
}

PhaseFunction Backend::prolong_fn(const PhaseFunction& u) const
{
    if (!is_constraint_function(u))
        throw ConfigError("prolong: argument depends on a constrained momentum");
    return u;
}

int Backend::var_index(const std::string& name) const
{
    for (int v = 0; v < nvars(); ++v)
        if (vars_[v] == name)
            return v;
    return -1;
}

std::string Backend::mono_str(const Mono& m) const
{
    std::string s;
    for (int v = 0; v < nvars(); ++v) {
        if (m[v] == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += vars_[v];
        if (m[v] != 1)
            s += "^" + std::to_string(m[v]);
    }
    return s.empty() ? "1" : s;
}

std::string Backend::str(const PhaseFunction& f) const
{
    if (f.is_zero())
        return "0";
    std::string out;
    for (const auto& [m, c] : f.terms()) {
        const bool unit = m == Mono{};
        std::string t;
        if (unit)
            t = c.str();
        else if (c == Scalar(1))
            t = mono_str(m);
        else if (c == Scalar(-1))
            t = "-" + mono_str(m);
        else
            t = c.str() + "*" + mono_str(m);
        if (out.empty())
            out = t;
        else if (t[0] == '-')
            out += " - " + t.substr(1);
        else
            out += " + " + t;
    }
    return out;
}

std::string Backend::str(const FunSeries& f) const
{
    std::string out;
    for (int r = 0; r <= f.order(); ++r) {
        if (f[r].is_zero())
            continue;
        std::string t = str(f[r]);
        if (r > 0) {
            std::string lam = r == 1 ? "lambda" : "lambda^" + std::to_string(r);
            t = f[r].size() == 1 && f[r].terms().begin()->first == Mono{} && f[r].terms().begin()->second == Scalar(1)
                    ? lam
                    : lam + "*(" + t + ")";
        }
        out += out.empty() ? t : " + " + t;
    }
    return out.empty() ? "0" : out;
}

} // namespace brst
