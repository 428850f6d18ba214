#pragma once

#include "brstlab/expr.hpp"
#include "brstlab/grassmann.hpp"
#include "brstlab/liealg.hpp"
#include "brstlab/phasespace.hpp"

#include <string>

namespace brst {

/// Boundary part lives on Lambda g* (x) C^inf(C)[[lambda]], bulk is a SuperField.
struct AugmentedField {
    SuperField boundary;
    SuperField bulk;

    explicit AugmentedField(int order = 0) : boundary(order), bulk(order) {}
    AugmentedField(SuperField b, SuperField f) : boundary(std::move(b)), bulk(std::move(f)) {}

    AugmentedField& operator+=(const AugmentedField& o)
    {
        boundary += o.boundary;
        bulk += o.bulk;
        return *this;
    }
    AugmentedField& operator-=(const AugmentedField& o)
    {
        boundary -= o.boundary;
        bulk -= o.bulk;
        return *this;
    }
    AugmentedField& operator*=(const Scalar& k)
    {
        boundary *= k;
        bulk *= k;
        return *this;
    }
    friend AugmentedField operator+(AugmentedField a, const AugmentedField& b) { return a += b; }
    friend AugmentedField operator-(AugmentedField a, const AugmentedField& b) { return a -= b; }
    friend AugmentedField operator*(AugmentedField a, const Scalar& k) { return a *= k; }
    friend bool operator==(const AugmentedField& a, const AugmentedField& b)
    {
        return a.boundary == b.boundary && a.bulk == b.bulk;
    }
    bool is_zero() const { return boundary.is_zero() && bulk.is_zero(); }
    int order() const { return bulk.order(); }
};

SuperField lambda_divide(const SuperField& x);

/// A Lie algebra paired with a backend. All operators take the truncation order from
/// their arguments; kappa is passed explicitly.
class Context {
public:
    Context(LieAlgebra L, Backend B);
    static Context from_specs(const std::string& lie, const std::string& backend);

    const LieAlgebra& lie() const { return L_; }
    const Backend& backend() const { return B_; }
    int n() const { return L_.dim(); }

    // ---- elements ----
    SuperField unit(int order) const { return SuperField::unit(order); }
    SuperField lift(const GrassElement& g) const;
    SuperField function(const PhaseFunction& f, int order) const;
    SuperField function(const FunSeries& f) const;
    GrassElement omega_grass(int order) const;
    GrassElement chi_grass(int order) const;
    SuperField omega(int order) const { return lift(omega_grass(order)); }
    SuperField chi(int order) const { return lift(chi_grass(order)); }
    SuperField gamma(int order) const { return lift(gamma_element(n(), order)); }
    /// sum_a e^a (x) J_a
    SuperField momentum_field(int order) const;
    /// Omega + J + i lambda (1 - 2 kappa) chi
    SuperField theta(const Scalar& kappa, int order) const;
    /// Omega + J
    SuperField theta_classical(int order) const;

    // ---- products ----
    SuperField star(const SuperField& a, const SuperField& b, const Scalar& kappa) const;
    /// a *_k b - (-1)^{|a||b|} b *_k a, a homogeneous of parity pa, b split by parity
    SuperField supercommutator(const SuperField& a, int pa, const SuperField& b, const Scalar& kappa) const;
    SuperField wedge(const SuperField& a, const SuperField& b) const;
    SuperField super_poisson(const SuperField& a, const SuperField& b) const;

    // ---- quantum operators ----
    /// D_kappa = (1/i lambda) ad_kappa(Theta_kappa), computed one order higher
    SuperField brst(const SuperField& a, const Scalar& kappa) const;
    SuperField gh(const SuperField& a) const;
    SuperField gh_ad(const SuperField& a, const Scalar& kappa) const;
    SuperField gh_poisson(const SuperField& a) const;
    SuperField laplacian(const SuperField& a) const { return super_laplacian(a, n()); }
    SuperField s_kappa(const SuperField& a, const Scalar& kappa) const { return brst::s_kappa(a, kappa, n()); }

    SuperField op_q(const SuperField& a) const;
    SuperField op_q_def(const SuperField& a) const;
    SuperField op_c(const SuperField& a) const;
    SuperField op_c_def(const SuperField& a) const;
    SuperField op_u(const SuperField& a) const;
    SuperField op_u_ad(const SuperField& a, const Scalar& kappa) const;
    SuperField op_u_poisson(const SuperField& a) const;
    SuperField op_ms(const SuperField& a) const;
    SuperField op_ma(const SuperField& a) const;
    SuperField op_ms_def(const SuperField& a) const;
    SuperField op_ma_def(const SuperField& a) const;
    SuperField quant_koszul(const SuperField& a) const;
    SuperField quant_ce(const SuperField& a) const;
    /// L_M(e_a) F = (1/i lambda)(J_a * F - F * J_a)
    FunSeries lie_m(int a, const FunSeries& F) const;

    // ---- classical operators (lambda-linear) ----
    SuperField koszul(const SuperField& a) const;
    SuperField ce(const SuperField& a) const;
    SuperField brst_classical(const SuperField& a) const;
    SuperField brst_poisson(const SuperField& a) const;

    // ---- augmentation ----
    /// iota^* with the (-1)^k sign, on the antighost-0 part
    SuperField restrict_graded(const SuperField& a) const;
    SuperField prolong_graded(const SuperField& c) const;
    /// geometric Koszul homotopy h_i on every antighost degree
    SuperField homotopy(const SuperField& a) const;
    /// deformed restriction r on the antighost-0 part
    SuperField deformed_restriction(const SuperField& a) const;
    FunSeries deformed_restriction(const FunSeries& f) const;
    /// quantised homotopies qh_i on every antighost degree
    SuperField quantum_homotopy(const SuperField& a) const;
    FunSeries lie_c(int a, const FunSeries& u) const;
    FunSeries lie_c_classical(int a, const FunSeries& u) const;
    SuperField ce_c(const SuperField& c) const;
    SuperField ce_c_classical(const SuperField& c) const;
    bool in_quantum_ideal(const FunSeries& f) const;

    // augmented complex
    AugmentedField aug_koszul_q(const AugmentedField& x) const;
    AugmentedField aug_homotopy_q(const AugmentedField& x) const;
    AugmentedField aug_ce_q(const AugmentedField& x) const;
    AugmentedField aug_brst_q(const AugmentedField& x) const;
    AugmentedField h_prime_q(const AugmentedField& x) const;
    AugmentedField aug_koszul(const AugmentedField& x) const;
    AugmentedField aug_homotopy(const AugmentedField& x) const;
    AugmentedField aug_ce(const AugmentedField& x) const;
    AugmentedField aug_brst(const AugmentedField& x) const;
    AugmentedField h_prime(const AugmentedField& x) const;

    // cohomology
    SuperField psi(const SuperField& a) const;
    SuperField psi_inverse(const SuperField& c) const;
    SuperField psi_classical(const SuperField& a) const;
    SuperField psi_inverse_classical(const SuperField& c) const;
    /// r(prol u *_0 prol v) for invariant u, v
    FunSeries reduced_star(const FunSeries& u, const FunSeries& v) const;
    /// 4 r((h' c1) *_0 (h' c2)) for closed boundary fields
    SuperField cohomology_product(const SuperField& c1, const SuperField& c2) const;
    bool is_invariant(const FunSeries& u) const;

    std::string str(const SuperField& x) const { return field_str(x, B_); }
    std::string str(const FunSeries& f) const { return B_.str(f); }

private:
    void need_constraints(const char* what) const;
    SuperField neumann_x(const SuperField& a0) const;
    template <class F>
    SuperField coeff_map(const SuperField& a, F&& f) const;

    LieAlgebra L_;
    Backend B_;
};

} // namespace brst
