#pragma once

#include "brstlab/scalar.hpp"
#include "brstlab/series.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace brst {

constexpr int kMaxVars = 8;
using Mono = std::array<int16_t, kMaxVars>;

/// Finite sum of monomials with Gaussian-rational coefficients. Exponents of
/// Fourier variables (z = e^{i phi}, w = e^{i psi}) may be negative.
class PhaseFunction {
public:
    using Map = std::map<Mono, Scalar>;

    PhaseFunction() = default;
    PhaseFunction(const Scalar& c) { add(Mono{}, c); }
    static PhaseFunction monomial(const Mono& m, const Scalar& c = Scalar(1))
    {
        PhaseFunction f;
        f.add(m, c);
        return f;
    }

    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }
    Scalar coeff(const Mono& m) const;
    void add(const Mono& m, const Scalar& c);

    PhaseFunction& operator+=(const PhaseFunction& o);
    PhaseFunction& operator-=(const PhaseFunction& o);
    PhaseFunction& operator*=(const Scalar& k);
    friend PhaseFunction operator+(PhaseFunction a, const PhaseFunction& b) { return a += b; }
    friend PhaseFunction operator-(PhaseFunction a, const PhaseFunction& b) { return a -= b; }
    friend PhaseFunction operator*(PhaseFunction a, const Scalar& k) { return a *= k; }
    friend PhaseFunction operator*(const Scalar& k, PhaseFunction a) { return a *= k; }
    PhaseFunction operator-() const { return *this * Scalar(-1); }
    /// pointwise product
    friend PhaseFunction operator*(const PhaseFunction& a, const PhaseFunction& b);
    friend bool operator==(const PhaseFunction& a, const PhaseFunction& b) { return a.t_ == b.t_; }
    friend bool operator!=(const PhaseFunction& a, const PhaseFunction& b) { return !(a == b); }

private:
    Map t_;
};

using FunSeries = Series<PhaseFunction>;

enum class VarKind { Fourier, Poly };
enum class BackendKind { Torus, TorusPerturbed, Flat, FlatWeyl, Point };

/// Coefficient c of one summand c * D_left (x) D_right in a star exponent.
struct DerivPair {
    int left;
    int right;
    Scalar c;
};

/// A desk-scale Hamiltonian quantum g-space for an abelian g (or the trivial point).
class Backend {
public:
    static Backend torus();
    /// star conjugated by S = exp(lambda P d/dJ); P must depend on p alone
    static Backend torus_perturbed(const PhaseFunction& P);
    static Backend flat(int d, int k, bool weyl = false);
    static Backend point(int lieDim);
    /// "torus", "torus-perturbed", "flat:d,k", "flat-weyl:d,k", "point"
    static Backend from_spec(const std::string& spec, int lieDim);

    BackendKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    int nvars() const { return static_cast<int>(vars_.size()); }
    const std::vector<std::string>& var_names() const { return vars_; }
    VarKind var_kind(int v) const { return kinds_[v]; }
    /// number of momentum components (= dim g)
    int momenta() const { return lieDim_; }
    /// variable index of J_a; -1 on the point
    int momentum_var(int a) const { return point() ? -1 : momVars_[a]; }
    bool point() const { return kind_ == BackendKind::Point; }
    bool has_constraints() const { return !point(); }
    /// Known to satisfy J*f - f*J = i lambda {J,f}; the suites still verify it.
    bool strongly_invariant() const { return kind_ != BackendKind::TorusPerturbed; }
    const PhaseFunction& perturbation() const { return P_; }

    Mono var(int v, int e = 1) const;
    PhaseFunction variable(int v) const { return PhaseFunction::monomial(var(v)); }

    /// derivative in coordinate v (Fourier: d/dphi, i.e. multiply by i*k)
    PhaseFunction diff(const PhaseFunction& f, int v) const;

    /// f * g expanded up to lambda^order
    FunSeries star(const PhaseFunction& f, const PhaseFunction& g, int order) const;
    /// Cauchy extension of star to series of equal order
    FunSeries star(const FunSeries& f, const FunSeries& g) const;
    /// the undeformed star (before conjugation by S) on the perturbed torus; equals star() elsewhere
    FunSeries base_star(const FunSeries& f, const FunSeries& g) const;

    PhaseFunction poisson(const PhaseFunction& f, const PhaseFunction& g) const;

    /// quantum momentum J_a as a series (classical J_a at order 0)
    FunSeries momentum(int a, int order) const;
    PhaseFunction classical_momentum(int a) const;
    /// classical action {J_a, f}
    PhaseFunction lie_classical(int a, const PhaseFunction& f) const;

    bool is_constraint_function(const PhaseFunction& f) const;
    /// iota^*: set every J_a to zero
    PhaseFunction restrict_fn(const PhaseFunction& f) const;
    /// geometric prolongation of a constraint function
    PhaseFunction prolong_fn(const PhaseFunction& u) const;

    /// S^t = exp(t lambda P d/dJ) applied to a series (perturbed torus only)
    FunSeries apply_s(const FunSeries& f, int t) const;

    /// variable lookup for the expression parser; -1 if unknown
    int var_index(const std::string& name) const;
    std::string mono_str(const Mono& m) const;
    std::string str(const PhaseFunction& f) const;
    std::string str(const FunSeries& f) const;

private:
    Backend() = default;
    FunSeries raw_star(const PhaseFunction& f, const PhaseFunction& g, int order) const;

    BackendKind kind_ = BackendKind::Point;
    std::string name_;
    std::vector<std::string> vars_;
    std::vector<VarKind> kinds_;
    std::vector<DerivPair> starPairs_;
    std::vector<DerivPair> poissonTerms_;
    std::vector<int> momVars_;
    int lieDim_ = 0;
    PhaseFunction P_;
};

} // namespace brst
