#include "brstlab/brst.hpp"

#include "brstlab/errors.hpp"

namespace brst {

namespace {

const Scalar kMinusI = Scalar(0, -1); // 1/i
const Scalar kHalf = Scalar::frac(1, 2);

inline Scalar sgn_k(int k) { return Scalar((k & 1) ? -1 : 1); }

FunSeries pointwise(const FunSeries& a, const FunSeries& b)
{
    return series_product(a, b, [](const PhaseFunction& x, const PhaseFunction& y, int m) {
        return FunSeries::constant(x * y, m);
    });
}

FunSeries map_coeffs(const FunSeries& s, const std::function<PhaseFunction(const PhaseFunction&)>& f)
{
    FunSeries out(s.order());
    for (int r = 0; r <= s.order(); ++r)
        if (!s[r].is_zero())
            out.at(r) = f(s[r]);
    return out;
}

SignedWord chain(SignedWord s, Gen v, SignedWord (*op)(Gen, GhostWord))
{
    if (!s)
        return s;
    SignedWord t = op(v, s.w);
    return {s.sign * t.sign, t.w};
}

} // namespace

SuperField lambda_divide(const SuperField& x)
{
    SuperField out(x.order() - 1);
    for (const auto& [w, s] : x.terms()) {
        if (!s[0].is_zero())
            throw DivisionError("graded commutator has a nonzero classical term at word " + word_str(w));
        out.add(w, lambda_divide(s));
    }
    return out;
}

template <class F>
SuperField Context::coeff_map(const SuperField& a, F&& f) const
{
    SuperField out(a.order());
    for (const auto& [w, s] : a.terms())
        out.add(w, f(s));
    return out;
}

Context::Context(LieAlgebra L, Backend B) : L_(std::move(L)), B_(std::move(B))
{
    if (auto v = validate(L_))
        throw ConfigError("invalid Lie algebra: " + v->str());
    if (B_.momenta() != L_.dim())
        throw ConfigError("backend " + B_.name() + " carries " + std::to_string(B_.momenta()) +
                          " momenta but the Lie algebra has dimension " + std::to_string(L_.dim()));
    if (!B_.point() && !L_.is_abelian())
        throw ConfigError("backend " + B_.name() + " has an abelian momentum map; use the point backend for " +
                          L_.name());
}

Context Context::from_specs(const std::string& lie, const std::string& backend)
{
    LieAlgebra L;
    if (lie.empty()) {
        int k = 1;
        if (backend.rfind("flat", 0) == 0) {
            Backend probe = Backend::from_spec(backend, 1);
            k = probe.momenta();
        }
        L = LieAlgebra::abelian(k);
    } else {
        L = LieAlgebra::from_spec(lie);
    }
    return Context(L, Backend::from_spec(backend, L.dim()));
}

void Context::need_constraints(const char* what) const
{
    if (!B_.has_constraints())
        throw ConfigError(std::string(what) + ": backend " + B_.name() + " has no constraint surface");
}

// ---- elements ----

SuperField Context::lift(const GrassElement& g) const
{
    SuperField out(g.order());
    for (const auto& [w, s] : g.terms()) {
        FunSeries f(g.order());
        for (int r = 0; r <= g.order(); ++r)
            f.at(r) = PhaseFunction(s[r]);
        out.add(w, f);
    }
    return out;
}

SuperField Context::function(const PhaseFunction& f, int order) const
{
    return SuperField::term(GhostWord{}, f, order);
}

SuperField Context::function(const FunSeries& f) const
{
    return SuperField::term(GhostWord{}, f);
}

GrassElement Context::omega_grass(int order) const
{
    GrassElement out(order);
    const int N = n();
    for (int c = 0; c < N; ++c)
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                const mpq_class& f = L_.f(c, a, b);
                if (sgn(f) == 0 || a == b)
                    continue;
                SignedWord s{1, GhostWord{0, 1u << c}};
                s = chain(s, ghost(b), left_mul);
                s = chain(s, ghost(a), left_mul);
                out.add(s.w, ScalarSeries::constant(Scalar(f) * Scalar::frac(-s.sign, 4), order));
            }
    return out;
}

GrassElement Context::chi_grass(int order) const
{
    GrassElement out(order);
    auto chi = L_.trace_form();
    for (int a = 0; a < n(); ++a)
        out.add(GhostWord{1u << a, 0}, ScalarSeries::constant(Scalar(chi[a]), order));
    return out;
}

SuperField Context::momentum_field(int order) const
{
    SuperField out(order);
    for (int a = 0; a < n(); ++a)
        out.add(GhostWord{1u << a, 0}, B_.momentum(a, order));
    return out;
}

SuperField Context::theta(const Scalar& kappa, int order) const
{
    SuperField t = omega(order) + momentum_field(order);
    t += chi(order).shifted(1) * (Scalar::i() * (Scalar(1) - Scalar(2) * kappa));
    return t;
}

SuperField Context::theta_classical(int order) const
{
    return omega(order) + momentum_field(order);
}

// ---- products ----

SuperField Context::star(const SuperField& a, const SuperField& b, const Scalar& kappa) const
{
    const int N = a.order();
    return graded_product(
        a, b, [&](GhostWord u, GhostWord v) { return cliff_words(u, v, kappa, N); },
        [&](const FunSeries& s, const FunSeries& t) { return B_.star(s, t); });
}

SuperField Context::supercommutator(const SuperField& a, int pa, const SuperField& b, const Scalar& kappa) const
{
    SuperField out = star(a, b, kappa);
    for (int p = 0; p < 2; ++p) {
        SuperField bp = b.parity_part(p);
        if (bp.is_zero())
            continue;
        SuperField ba = star(bp, a, kappa);
        if ((pa * p) & 1)
            out += ba;
        else
            out -= ba;
    }
    return out;
}

SuperField Context::wedge(const SuperField& a, const SuperField& b) const
{
    return graded_product(
        a, b,
        [](GhostWord u, GhostWord v) {
            std::vector<CliffTerm> r;
            if (SignedWord s = brst::wedge(u, v))
                r.push_back({0, Scalar(s.sign), s.w});
            return r;
        },
        pointwise);
}

SuperField Context::super_poisson(const SuperField& a, const SuperField& b) const
{
    SuperField fun = graded_product(
        a, b,
        [](GhostWord u, GhostWord v) {
            std::vector<CliffTerm> r;
            if (SignedWord s = brst::wedge(u, v))
                r.push_back({0, Scalar(s.sign), s.w});
            return r;
        },
        [&](const FunSeries& s, const FunSeries& t) {
            return series_product(s, t, [&](const PhaseFunction& x, const PhaseFunction& y, int m) {
                return FunSeries::constant(B_.poisson(x, y), m);
            });
        });
    SuperField grass = graded_product(
        a, b,
        [](GhostWord u, GhostWord v) {
            std::vector<CliffTerm> r;
            for (auto& [c, w] : poisson_words(u, v))
                r.push_back({0, c, w});
            return r;
        },
        pointwise);
    return fun + grass;
}

// ---- quantum operators ----

SuperField Context::brst(const SuperField& a, const Scalar& kappa) const
{
    const int N = a.order();
    SuperField A = a.with_order(N + 1);
    return lambda_divide(supercommutator(theta(kappa, N + 1), 1, A, kappa)) * kMinusI;
}

SuperField Context::gh(const SuperField& a) const
{
    SuperField out(a.order());
    for (const auto& [w, s] : a.terms())
        out.add(w, s, Scalar(w.ghost_number()));
    return out;
}

SuperField Context::gh_ad(const SuperField& a, const Scalar& kappa) const
{
    const int N = a.order();
    return lambda_divide(supercommutator(gamma(N + 1), 0, a.with_order(N + 1), kappa)) * kMinusI;
}

SuperField Context::gh_poisson(const SuperField& a) const
{
    return super_poisson(gamma(a.order()), a);
}

SuperField Context::op_q(const SuperField& x) const
{
    SuperField out(x.order());
    const int N = n();
    for (int c = 0; c < N; ++c)
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                const mpq_class& f = L_.f(c, a, b);
                if (sgn(f) == 0)
                    continue;
                out += left_mul(anti(c), insert_left(ghost(a), insert_left(ghost(b), x))) * Scalar(f);
            }
    return out * Scalar::frac(-1, 2);
}

SuperField Context::op_c(const SuperField& x) const
{
    SuperField out(x.order());
    const int N = n();
    for (int c = 0; c < N; ++c)
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                const mpq_class& f = L_.f(c, a, b);
                if (sgn(f) == 0)
                    continue;
                out += insert_left(anti(c), insert_left(ghost(a), insert_left(ghost(b), x))) * Scalar(f);
            }
    return out * Scalar::frac(-1, 2);
}

namespace {

std::vector<int> bits(uint32_t m)
{
    std::vector<int> v;
    for (; m; m &= m - 1)
        v.push_back(std::countr_zero(m));
    return v;
}

} // namespace

SuperField Context::op_q_def(const SuperField& x) const
{
    SuperField out(x.order());
    for (const auto& [w, s] : x.terms()) {
        const std::vector<int> xi = bits(w.a);
        const int k = w.ghost_degree();
        const int l = static_cast<int>(xi.size());
        for (int i = 0; i < l; ++i)
            for (int j = i + 1; j < l; ++j) {
                const uint32_t rest = w.a & ~(1u << xi[i]) & ~(1u << xi[j]);
                // positions are 1-based: (-1)^{(i+1)+(j+1)-1}
                const int sij = ((i + j + 1) & 1) ? -1 : 1;
                for (int c = 0; c < n(); ++c) {
                    const mpq_class& f = L_.f(c, xi[i], xi[j]);
                    if (sgn(f) == 0)
                        continue;
                    SignedWord t = left_mul(anti(c), GhostWord{0, rest});
                    if (!t)
                        continue;
                    out.add(GhostWord{w.g, t.w.a}, s, Scalar(f) * Scalar(sij * t.sign) * sgn_k(k));
                }
            }
    }
    return out;
}

SuperField Context::op_c_def(const SuperField& x) const
{
    SuperField out(x.order());
    for (const auto& [w, s] : x.terms()) {
        const std::vector<int> xi = bits(w.a);
        const int l = static_cast<int>(xi.size());
        for (int i = 0; i < l; ++i)
            for (int j = i + 1; j < l; ++j) {
                const uint32_t rest = w.a & ~(1u << xi[i]) & ~(1u << xi[j]);
                const int sij = ((i + j + 1) & 1) ? -1 : 1;
                for (int c = 0; c < n(); ++c) {
                    const mpq_class& f = L_.f(c, xi[i], xi[j]);
                    if (sgn(f) == 0)
                        continue;
                    // i(e_c) alpha on the pure ghost word
                    SignedWord t = insert_left(anti(c), GhostWord{w.g, 0});
                    if (!t)
                        continue;
                    out.add(GhostWord{t.w.g, rest}, s, Scalar(f) * Scalar(sij * t.sign));
                }
            }
    }
    return out;
}

SuperField Context::op_u(const SuperField& x) const
{
    SuperField out(x.order());
    auto chi = L_.trace_form();
    for (int a = 0; a < n(); ++a)
        if (sgn(chi[a]) != 0)
            out += insert_left(ghost(a), x) * Scalar(2 * chi[a]);
    return out;
}

SuperField Context::op_u_ad(const SuperField& a, const Scalar& kappa) const
{
    const int N = a.order();
    return lambda_divide(supercommutator(chi(N + 1), 1, a.with_order(N + 1), kappa)) * kMinusI;
}

SuperField Context::op_u_poisson(const SuperField& a) const
{
    return super_poisson(chi(a.order()), a);
}

SuperField Context::op_ms(const SuperField& x) const
{
    SuperField out(x.order());
    for (int a = 0; a < n(); ++a) {
        const FunSeries J = B_.momentum(a, x.order());
        for (const auto& [w, s] : x.terms())
            if (SignedWord t = insert_left(ghost(a), w))
                out.add(t.w, B_.star(s, J), Scalar(t.sign));
    }
    return out;
}

SuperField Context::op_ma(const SuperField& x) const
{
    SuperField out(x.order());
    for (int a = 0; a < n(); ++a) {
        const FunSeries J = B_.momentum(a, x.order());
        for (const auto& [w, s] : x.terms())
            if (SignedWord t = insert_left(ghost(a), w))
                out.add(t.w, B_.star(J, s), Scalar(t.sign));
    }
    return out;
}

namespace {

template <class Mul>
SuperField ms_def_impl(const SuperField& x, int n, Mul&& mul)
{
    SuperField out(x.order());
    for (const auto& [w, s] : x.terms()) {
        const int k = w.ghost_degree();
        for (int a = 0; a < n; ++a) {
            // i(e^a) on the pure antighost word xi
            SignedWord t = insert_left(ghost(a), GhostWord{0, w.a});
            if (!t)
                continue;
            out.add(GhostWord{w.g, t.w.a}, mul(a, s), Scalar(t.sign) * sgn_k(k));
        }
    }
    return out;
}

} // namespace

SuperField Context::op_ms_def(const SuperField& x) const
{
    return ms_def_impl(x, n(), [&](int a, const FunSeries& s) { return B_.star(s, B_.momentum(a, s.order())); });
}

SuperField Context::op_ma_def(const SuperField& x) const
{
    return ms_def_impl(x, n(), [&](int a, const FunSeries& s) { return B_.star(B_.momentum(a, s.order()), s); });
}

SuperField Context::quant_koszul(const SuperField& x) const
{
    SuperField corr = op_u(x) * kHalf - op_q(x);
    return op_ms(x) + corr.shifted(1) * Scalar::i();
}

FunSeries Context::lie_m(int a, const FunSeries& F) const
{
    const int N = F.order();
    FunSeries G = F.with_order(N + 1);
    FunSeries J = B_.momentum(a, N + 1);
    return lambda_divide(B_.star(J, G) - B_.star(G, J)) * kMinusI;
}

namespace {

template <class Rho>
SuperField ce_impl(const LieAlgebra& L, const SuperField& x, Rho&& rho)
{
    const int N = L.dim();
    SuperField out(x.order());
    for (int c = 0; c < N; ++c)
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                const mpq_class& f = L.f(c, a, b);
                if (sgn(f) == 0)
                    continue;
                out += left_mul(ghost(a), left_mul(anti(c), insert_left(ghost(b), x))) * Scalar(f);
                out += left_mul(ghost(a), left_mul(ghost(b), insert_left(anti(c), x))) * (Scalar(f) * Scalar::frac(-1, 2));
            }
    for (int a = 0; a < N; ++a) {
        SuperField acted(x.order());
        for (const auto& [w, s] : x.terms())
            acted.add(w, rho(a, s));
        out += left_mul(ghost(a), acted);
    }
    return out;
}

} // namespace

SuperField Context::quant_ce(const SuperField& x) const
{
    return ce_impl(L_, x, [&](int a, const FunSeries& s) { return lie_m(a, s); });
}

// ---- classical ----

SuperField Context::koszul(const SuperField& x) const
{
    SuperField out(x.order());
    for (int a = 0; a < n(); ++a) {
        const PhaseFunction J = B_.classical_momentum(a);
        if (J.is_zero())
            continue;
        for (const auto& [w, s] : x.terms())
            if (SignedWord t = insert_left(ghost(a), w))
                out.add(t.w, map_coeffs(s, [&](const PhaseFunction& f) { return f * J; }), Scalar(t.sign));
    }
    return out;
}

SuperField Context::ce(const SuperField& x) const
{
    return ce_impl(L_, x, [&](int a, const FunSeries& s) {
        return map_coeffs(s, [&](const PhaseFunction& f) { return B_.lie_classical(a, f); });
    });
}

SuperField Context::brst_classical(const SuperField& a) const
{
    return ce(a) + koszul(a) * Scalar(2);
}

SuperField Context::brst_poisson(const SuperField& a) const
{
    return super_poisson(theta_classical(a.order()), a);
}

// ---- augmentation ----

SuperField Context::restrict_graded(const SuperField& a) const
{
    need_constraints("restrict");
    SuperField out(a.order());
    for (const auto& [w, s] : a.terms())
        if (w.antighost_degree() == 0)
            out.add(w, map_coeffs(s, [&](const PhaseFunction& f) { return B_.restrict_fn(f); }),
                    sgn_k(w.ghost_degree()));
    return out;
}

SuperField Context::prolong_graded(const SuperField& c) const
{
    need_constraints("prolong");
    SuperField out(c.order());
    for (const auto& [w, s] : c.terms()) {
        if (w.antighost_degree() != 0)
            throw ConfigError("prolong: boundary field carries antighosts");
        out.add(w, map_coeffs(s, [&](const PhaseFunction& f) { return B_.prolong_fn(f); }),
                sgn_k(w.ghost_degree()));
    }
    return out;
}

SuperField Context::homotopy(const SuperField& x) const
{
    need_constraints("homotopy");
    SuperField out(x.order());
    const int N = x.order();
    for (const auto& [w, s] : x.terms()) {
        const int l = w.antighost_degree();
        // accumulate per target word
        std::map<GhostWord, FunSeries> acc;
        for (int r = 0; r <= N; ++r)
            for (const auto& [m, c] : s[r].terms()) {
                int deg = 0;
                for (int a = 0; a < n(); ++a)
                    deg += m[B_.momentum_var(a)];
                if (deg == 0)
                    continue;
                for (int a = 0; a < n(); ++a) {
                    const int v = B_.momentum_var(a);
                    if (m[v] == 0)
                        continue;
                    SignedWord t = left_mul(anti(a), w);
                    if (!t)
                        continue;
                    Mono lowered = m;
                    --lowered[v];
                    auto it = acc.try_emplace(t.w, N).first;
                    it->second.at(r).add(lowered, c * Scalar::frac(t.sign * m[v], l + deg));
                }
            }
        for (auto& [tw, ts] : acc)
            out.add(tw, ts);
    }
    return out;
}

SuperField Context::neumann_x(const SuperField& a0) const
{
    // sum_k X^k a0 with X = (d - d_q) h_0 on antighost 0; X raises the lambda order
    SuperField acc = a0;
    SuperField cur = a0;
    const int N = a0.order();
    for (int it = 0; !cur.is_zero(); ++it) {
        if (it > N + 1)
            throw InversionError("deformed restriction: Neumann series did not terminate; residual " + str(cur));
        SuperField hc = homotopy(cur);
        SuperField next = koszul(hc) - quant_koszul(hc);
        if (!next.is_zero() && next.valuation() <= cur.valuation())
            throw InversionError("deformed restriction: correction does not raise the lambda order; residual " +
                                 str(next));
        cur = std::move(next);
        acc += cur;
    }
    return acc;
}

SuperField Context::deformed_restriction(const SuperField& a) const
{
    need_constraints("deformed restriction");
    return restrict_graded(neumann_x(a.antighost(0)));
}

FunSeries Context::deformed_restriction(const FunSeries& f) const
{
    return deformed_restriction(function(f)).coeff(GhostWord{});
}

SuperField Context::quantum_homotopy(const SuperField& x) const
{
    need_constraints("quantum homotopy");
    const int N = x.order();
    SuperField out(N);
    SuperField a0 = x.antighost(0);
    if (!a0.is_zero())
        out += homotopy(neumann_x(a0));
    for (int i = 1; i <= n(); ++i) {
        SuperField b = x.antighost(i);
        if (b.is_zero())
            continue;
        // Y = h_{i-1} d_q + d_q h_i; invert via sum (id - Y)^k
        SuperField acc = b;
        SuperField cur = b;
        for (int it = 0; !cur.is_zero(); ++it) {
            if (it > N + 1)
                throw InversionError("quantum homotopy: Neumann series did not terminate at antighost " +
                                     std::to_string(i));
            SuperField y = homotopy(quant_koszul(cur)) + quant_koszul(homotopy(cur));
            SuperField next = cur - y;
            if (!next.is_zero() && next.valuation() <= cur.valuation())
                throw InversionError("quantum homotopy: id - Y does not raise the lambda order; residual " +
                                     str(next));
            cur = std::move(next);
            acc += cur;
        }
        out += homotopy(acc);
    }
    return out;
}

FunSeries Context::lie_c(int a, const FunSeries& u) const
{
    FunSeries pu = map_coeffs(u, [&](const PhaseFunction& f) { return B_.prolong_fn(f); });
    return deformed_restriction(lie_m(a, pu));
}

FunSeries Context::lie_c_classical(int a, const FunSeries& u) const
{
    return map_coeffs(u, [&](const PhaseFunction& f) { return B_.restrict_fn(B_.lie_classical(a, B_.prolong_fn(f))); });
}

SuperField Context::ce_c(const SuperField& c) const
{
    need_constraints("ce on C");
    return ce_impl(L_, c, [&](int a, const FunSeries& s) { return lie_c(a, s); });
}

SuperField Context::ce_c_classical(const SuperField& c) const
{
    need_constraints("ce on C");
    return ce_impl(L_, c, [&](int a, const FunSeries& s) { return lie_c_classical(a, s); });
}

bool Context::in_quantum_ideal(const FunSeries& f) const
{
    return deformed_restriction(f).is_zero();
}

bool Context::is_invariant(const FunSeries& u) const
{
    return ce_c(function(u)).is_zero();
}

// ---- augmented complex ----

AugmentedField Context::aug_koszul_q(const AugmentedField& x) const
{
    return {deformed_restriction(x.bulk), quant_koszul(x.bulk)};
}

AugmentedField Context::aug_homotopy_q(const AugmentedField& x) const
{
    return {SuperField(x.order()), prolong_graded(x.boundary) + quantum_homotopy(x.bulk)};
}

AugmentedField Context::aug_ce_q(const AugmentedField& x) const
{
    return {ce_c(x.boundary), quant_ce(x.bulk)};
}

AugmentedField Context::aug_brst_q(const AugmentedField& x) const
{
    return {ce_c(x.boundary) + deformed_restriction(x.bulk) * Scalar(2), brst(x.bulk, 0)};
}

namespace {

template <class K, class H>
AugmentedField h_prime_impl(const AugmentedField& x, int n, K&& K_op, H&& h_op)
{
    // (id + K/2)^{-1}; K raises the ghost degree, so the series stops after n+1 terms
    AugmentedField acc = x;
    AugmentedField cur = x;
    for (int it = 0; !cur.is_zero(); ++it) {
        if (it > n + 1)
            throw InversionError("h': (id + K/2) is not unipotent on this input");
        cur = K_op(cur) * Scalar::frac(-1, 2);
        acc += cur;
    }
    return h_op(acc) * Scalar::frac(1, 2);
}

} // namespace

AugmentedField Context::h_prime_q(const AugmentedField& x) const
{
    return h_prime_impl(
        x, n(),
        [&](const AugmentedField& y) { return aug_ce_q(aug_homotopy_q(y)) + aug_homotopy_q(aug_ce_q(y)); },
        [&](const AugmentedField& y) { return aug_homotopy_q(y); });
}

AugmentedField Context::aug_koszul(const AugmentedField& x) const
{
    return {restrict_graded(x.bulk), koszul(x.bulk)};
}

AugmentedField Context::aug_homotopy(const AugmentedField& x) const
{
    return {SuperField(x.order()), prolong_graded(x.boundary) + homotopy(x.bulk)};
}

AugmentedField Context::aug_ce(const AugmentedField& x) const
{
    return {ce_c_classical(x.boundary), ce(x.bulk)};
}

AugmentedField Context::aug_brst(const AugmentedField& x) const
{
    return {ce_c_classical(x.boundary) + restrict_graded(x.bulk) * Scalar(2), brst_classical(x.bulk)};
}

AugmentedField Context::h_prime(const AugmentedField& x) const
{
    return h_prime_impl(
        x, n(), [&](const AugmentedField& y) { return aug_ce(aug_homotopy(y)) + aug_homotopy(aug_ce(y)); },
        [&](const AugmentedField& y) { return aug_homotopy(y); });
}

// ---- cohomology ----

SuperField Context::psi(const SuperField& a) const
{
    SuperField res = brst(a, 0);
    if (!res.is_zero())
        throw ClosednessError("psi: input is not D_0-closed; residual " + str(res));
    return deformed_restriction(a);
}

SuperField Context::psi_inverse(const SuperField& c) const
{
    SuperField res = ce_c(c);
    if (!res.is_zero())
        throw ClosednessError("psi_inverse: input is not closed on C; residual " + str(res));
    SuperField cur = prolong_graded(c);
    SuperField acc = cur;
    for (int k = 1; k <= n() + 1 && !cur.is_zero(); ++k) {
        cur = quantum_homotopy(quant_ce(cur)) * Scalar::frac(-1, 2);
        acc += cur;
    }
    return acc;
}

SuperField Context::psi_classical(const SuperField& a) const
{
    SuperField res = brst_classical(a);
    if (!res.is_zero())
        throw ClosednessError("psi: input is not D-closed; residual " + str(res));
    return restrict_graded(a);
}

SuperField Context::psi_inverse_classical(const SuperField& c) const
{
    SuperField res = ce_c_classical(c);
    if (!res.is_zero())
        throw ClosednessError("psi_inverse: input is not closed on C; residual " + str(res));
    SuperField cur = prolong_graded(c);
    SuperField acc = cur;
    for (int k = 1; k <= n() + 1 && !cur.is_zero(); ++k) {
        cur = homotopy(ce(cur)) * Scalar::frac(-1, 2);
        acc += cur;
    }
    return acc;
}

FunSeries Context::reduced_star(const FunSeries& u, const FunSeries& v) const
{
    need_constraints("reduced star");
    for (const FunSeries* x : {&u, &v}) {
        SuperField res = ce_c(function(*x));
        if (!res.is_zero())
            throw InvarianceError("reduced star: " + B_.str(*x) + " is not invariant; ce = " + str(res));
    }
    auto prol = [&](const FunSeries& s) {
        return map_coeffs(s, [&](const PhaseFunction& f) { return B_.prolong_fn(f); });
    };
    return deformed_restriction(B_.star(prol(u), prol(v)));
}

SuperField Context::cohomology_product(const SuperField& c1, const SuperField& c2) const
{
    for (const SuperField* c : {&c1, &c2}) {
        SuperField res = ce_c(*c);
        if (!res.is_zero())
            throw ClosednessError("cohomology product: input is not closed; residual " + str(res));
    }
    const int N = c1.order();
    SuperField h1 = h_prime_q(AugmentedField(c1, SuperField(N))).bulk;
    SuperField h2 = h_prime_q(AugmentedField(c2, SuperField(N))).bulk;
    return deformed_restriction(star(h1, h2, 0)) * Scalar(4);
}

} // namespace brst
