#include "brstlab/suites.hpp"

#include "brstlab/reduction.hpp"

#include <functional>
#include <json.hpp>
#include <sstream>

namespace brst {

// ---- sampler ----

Scalar FieldSampler::scalar()
{
    static const int dens[] = {1, 1, 1, 2, 3};
    Scalar re = Scalar::frac(uniform(-3, 3), dens[uniform(0, 4)]);
    Scalar im = uniform(0, 2) == 0 ? Scalar::frac(uniform(-2, 2), dens[uniform(0, 4)]) : Scalar(0);
    Scalar s = re + im * Scalar::i();
    return s.is_zero() ? Scalar(1) : s;
}

Mono FieldSampler::mono(bool withMomenta)
{
    const Backend& B = ctx_.backend();
    Mono m{};
    for (int v = 0; v < B.nvars(); ++v) {
        bool momentum = false;
        for (int a = 0; a < B.momenta(); ++a)
            momentum = momentum || B.momentum_var(a) == v;
        if (momentum && !withMomenta)
            continue;
        m[v] = static_cast<int16_t>(B.var_kind(v) == VarKind::Fourier ? uniform(-1, 1) : uniform(0, 2));
    }
    return m;
}

PhaseFunction FieldSampler::function(int terms, bool withMomenta)
{
    PhaseFunction f;
    for (int t = 0; t < terms; ++t)
        f.add(mono(withMomenta), scalar());
    return f;
}

GhostWord FieldSampler::word(int maxGhost, int maxAnti)
{
    const int n = ctx_.n();
    GhostWord w;
    for (int a = 0; a < n; ++a) {
        if (uniform(0, 2) == 0 && (maxGhost < 0 || w.ghost_degree() < maxGhost))
            w.g |= 1u << a;
        if (uniform(0, 2) == 0 && (maxAnti < 0 || w.antighost_degree() < maxAnti))
            w.a |= 1u << a;
    }
    return w;
}

FunSeries FieldSampler::series(int order, int terms, bool withMomenta)
{
    FunSeries s(order);
    for (int t = 0; t < terms; ++t) {
        int r = uniform(0, 3) == 0 ? std::min(order, 1) : 0;
        s.at(r) += function(1, withMomenta);
    }
    return s;
}

SuperField FieldSampler::field(int order, int terms)
{
    SuperField x(order);
    for (int t = 0; t < terms; ++t)
        x.add(word(), series(order, 1));
    return x;
}

SuperField FieldSampler::homogeneous(int order, int parity, int terms)
{
    SuperField x(order);
    for (int t = 0; t < 8 * terms && static_cast<int>(x.size()) < terms; ++t) {
        GhostWord w = word();
        if (w.parity() == parity)
            x.add(w, series(order, 1));
    }
    if (x.is_zero() && parity == 0)
        x.add(GhostWord{}, series(order, 1));
    if (x.is_zero() && ctx_.n() > 0)
        x.add(GhostWord{1u, 0u}, series(order, 1));
    return x;
}

SuperField FieldSampler::antighost_field(int order, int l, int terms)
{
    SuperField x(order);
    const int n = ctx_.n();
    if (l > n)
        return x;
    for (int t = 0; t < terms; ++t) {
        GhostWord w = word(-1, 0);
        // choose l distinct antighosts
        std::vector<int> idx(n);
        for (int a = 0; a < n; ++a)
            idx[a] = a;
        for (int j = 0; j < l; ++j) {
            int pick = uniform(j, n - 1);
            std::swap(idx[j], idx[pick]);
            w.a |= 1u << idx[j];
        }
        x.add(w, series(order, 1));
    }
    return x;
}

SuperField FieldSampler::boundary_field(int order, int terms)
{
    SuperField x(order);
    for (int t = 0; t < terms; ++t)
        x.add(word(-1, 0), series(order, 1, false));
    return x;
}

GrassElement FieldSampler::grass(int order, int terms)
{
    GrassElement x(order);
    for (int t = 0; t < terms; ++t) {
        int r = uniform(0, 3) == 0 ? std::min(order, 1) : 0;
        x.add(word(), ScalarSeries::monomial(scalar(), r, order));
    }
    return x;
}

GrassElement FieldSampler::grass_homogeneous(int order, int parity, int terms)
{
    GrassElement x(order);
    for (int t = 0; t < 8 * terms && static_cast<int>(x.size()) < terms; ++t) {
        GhostWord w = word();
        if (w.parity() == parity)
            x.add(w, ScalarSeries::constant(scalar(), order));
    }
    if (x.is_zero())
        x.add(parity ? GhostWord{1u, 0u} : GhostWord{}, ScalarSeries::constant(Scalar(1), order));
    return x;
}

// ---- report ----

int SuiteReport::passed() const
{
    int k = 0;
    for (const auto& c : cases)
        k += c.pass;
    return k;
}

int SuiteReport::failed() const { return static_cast<int>(cases.size()) - passed(); }

std::string SuiteReport::json() const
{
    nlohmann::json j;
    j["config"] = {{"suite", config.suite},     {"lie", lieName},         {"backend", config.backend},
                   {"order", config.order},     {"samples", config.samples}, {"seed", config.seed}};
    j["cases"] = nlohmann::json::array();
    for (const auto& c : cases) {
        nlohmann::json e = {{"name", c.name}, {"status", c.pass ? "pass" : "fail"}};
        if (!c.pass && !c.witness.empty())
            e["witness"] = c.witness;
        j["cases"].push_back(e);
    }
    j["summary"] = {{"pass", passed()}, {"fail", failed()}};
    return j.dump(2);
}

std::string SuiteReport::text() const
{
    std::ostringstream os;
    os << "suite " << config.suite << "  lie " << lieName << "  backend " << config.backend << "  order "
       << config.order << "  samples " << config.samples << "  seed " << config.seed << "\n";
    for (const auto& c : cases) {
        os << (c.pass ? "  pass  " : "  FAIL  ") << c.name;
        if (!c.pass && !c.witness.empty())
            os << "\n        witness: " << c.witness;
        os << "\n";
    }
    os << passed() << " passed, " << failed() << " failed\n";
    return os.str();
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = {"all",  "grassmann", "liealg",   "backend",
                                                   "brst", "homotopy",  "classical"};
    return names;
}

// ---- suites ----

namespace {

const Scalar kappas[] = {Scalar(0), Scalar::frac(1, 4), Scalar::frac(1, 2), Scalar(1)};

std::string kstr(const Scalar& k) { return "kappa=" + k.str(); }

class Runner {
public:
    Runner(const Context& ctx, const SuiteConfig& cfg, SuiteReport& rep)
        : ctx_(ctx), cfg_(cfg), rep_(rep), rng_(ctx, cfg.seed)
    {
    }

    const Context& ctx() const { return ctx_; }
    const Backend& B() const { return ctx_.backend(); }
    int N() const { return cfg_.order; }
    int S() const { return cfg_.samples; }
    FieldSampler& rng() { return rng_; }

    /// runs `check` S times; it returns an empty string on success, otherwise a witness
    void repeat(const std::string& name, int times, const std::function<std::string()>& check)
    {
        CaseResult res{name, true, ""};
        try {
            for (int s = 0; s < times && res.pass; ++s) {
                std::string w = check();
                if (!w.empty()) {
                    res.pass = false;
                    res.witness = w;
                }
            }
        } catch (const std::exception& e) {
            res.pass = false;
            res.witness = std::string("exception: ") + e.what();
        }
        rep_.cases.push_back(std::move(res));
    }

    void once(const std::string& name, const std::function<std::string()>& check) { repeat(name, 1, check); }

    std::string fs(const SuperField& x) const { return ctx_.str(x); }

private:
    const Context& ctx_;
    const SuiteConfig& cfg_;
    SuiteReport& rep_;
    FieldSampler rng_;
};

std::string unless(bool ok, const std::string& witness) { return ok ? std::string() : witness; }

// ---- grassmann ----

GrassElement change_basis(const GrassElement& x, const std::vector<std::vector<mpq_class>>& M,
                          const std::vector<std::vector<mpq_class>>& Minv, int n)
{
    // e^a -> sum_b M[a][b] e^b, e_a -> sum_b Minv[b][a] e_b
    const int order = x.order();
    auto image = [&](Gen v) {
        GrassElement y(order);
        for (int b = 0; b < n; ++b) {
            mpq_class c = v.ghost ? M[v.index][b] : Minv[b][v.index];
            if (c != 0)
                y.add(GhostWord{v.ghost ? 1u << b : 0u, v.ghost ? 0u : 1u << b},
                      ScalarSeries::constant(Scalar(c), order));
        }
        return y;
    };
    GrassElement out(order);
    for (const auto& [w, s] : x.terms()) {
        GrassElement acc = GrassElement::unit(order);
        for (int a = 0; a < n; ++a)
            if (w.has(ghost(a)))
                acc = wedge(acc, image(ghost(a)));
        for (int a = 0; a < n; ++a)
            if (w.has(anti(a)))
                acc = wedge(acc, image(anti(a)));
        for (const auto& [w2, s2] : acc.terms())
            out.add(w2, scalar_series_mul(s, s2));
    }
    return out;
}

void grassmann_suite(Runner& R)
{
    const int n = R.ctx().n();
    const int N = std::min(R.N(), 4);
    for (const Scalar& k : kappas)
        R.repeat("clifford product associative, " + kstr(k), R.S(), [&] {
            GrassElement a = R.rng().grass(N), b = R.rng().grass(N), c = R.rng().grass(N);
            return unless(cliff_kappa(cliff_kappa(a, b, k), c, k) == cliff_kappa(a, cliff_kappa(b, c, k), k),
                          grass_str(a) + " | " + grass_str(b) + " | " + grass_str(c));
        });
    for (const Scalar& k : kappas)
        R.repeat("clifford supercommutator is i lambda {,} at first order, " + kstr(k), R.S(), [&] {
            int pa = R.rng().uniform(0, 1), pb = R.rng().uniform(0, 1);
            GrassElement a = R.rng().grass_homogeneous(N, pa), b = R.rng().grass_homogeneous(N, pb);
            GrassElement com = cliff_kappa(a, b, k) - cliff_kappa(b, a, k) * Scalar((pa & pb) ? -1 : 1);
            GrassElement rhs = grass_poisson(a, b).shifted(1) * Scalar::i();
            GrassElement diff = (com - rhs).filter([](GhostWord) { return true; });
            bool ok = true;
            for (const auto& [w, s] : diff.terms())
                ok = ok && s.valuation() >= 2;
            return unless(ok, grass_str(a) + " | " + grass_str(b));
        });
    for (const Scalar& k : kappas)
        R.repeat("S_kappa intertwines the kappa and standard products, " + kstr(k), R.S(), [&] {
            GrassElement a = R.rng().grass(N), b = R.rng().grass(N);
            return unless(s_kappa(cliff_kappa(a, b, k), k, n) ==
                              cliff_kappa(s_kappa(a, k, n), s_kappa(b, k, n), Scalar(0)),
                          grass_str(a) + " | " + grass_str(b));
        });
    R.repeat("laplacian is basis independent", R.S(), [&] {
        // random unipotent-times-diagonal rational basis change
        std::vector<std::vector<mpq_class>> L(n, std::vector<mpq_class>(n)), Li = L;
        std::vector<mpq_class> diag(n);
        for (int a = 0; a < n; ++a) {
            int d = R.rng().uniform(1, 3) * (R.rng().uniform(0, 1) ? 1 : -1);
            diag[a] = mpq_class(d, R.rng().uniform(1, 2));
            diag[a].canonicalize();
            for (int b = 0; b < a; ++b)
                L[a][b] = R.rng().uniform(-2, 2);
            L[a][a] = 1;
        }
        // M = L * diag, inverse by forward substitution
        std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n)), Minv = M;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                M[a][b] = L[a][b] * diag[b];
        for (int col = 0; col < n; ++col) {
            // solve L y = e_col
            std::vector<mpq_class> y(n);
            for (int a = 0; a < n; ++a) {
                mpq_class s = a == col ? 1 : 0;
                for (int b = 0; b < a; ++b)
                    s -= L[a][b] * y[b];
                y[a] = s;
            }
            for (int a = 0; a < n; ++a)
                Li[a][col] = y[a];
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                Minv[a][b] = Li[a][b] / diag[a];
        GrassElement x = R.rng().grass(N);
        GrassElement tx = change_basis(x, M, Minv, n);
        return unless(super_laplacian(tx, n) == change_basis(super_laplacian(x, n), M, Minv, n), grass_str(x));
    });
    R.repeat("insertions are anticommuting superderivations of the wedge product", R.S(), [&] {
        int pa = R.rng().uniform(0, 1);
        GrassElement a = R.rng().grass_homogeneous(N, pa), b = R.rng().grass(N);
        Gen v{R.rng().uniform(0, 1) == 1, R.rng().uniform(0, n - 1)};
        Gen u{R.rng().uniform(0, 1) == 1, R.rng().uniform(0, n - 1)};
        bool der = insert_left(v, wedge(a, b)) ==
                   wedge(insert_left(v, a), b) + wedge(a, insert_left(v, b)) * Scalar(pa ? -1 : 1);
        bool anti = (insert_left(v, insert_left(u, b)) + insert_left(u, insert_left(v, b))).is_zero();
        return unless(der && anti, grass_str(a) + " | " + grass_str(b));
    });
}

// ---- liealg ----

void liealg_suite(Runner& R)
{
    const LieAlgebra& L = R.ctx().lie();
    const int n = L.dim();
    R.once("structure constants are antisymmetric and satisfy Jacobi", [&] {
        auto v = validate(L);
        return v ? v->str() : std::string();
    });
    R.once("Jacobi by direct cyclic sums", [&] {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int e = 0; e < n; ++e) {
                        mpq_class s = 0;
                        for (int d = 0; d < n; ++d)
                            s += L.f(d, a, b) * L.f(e, d, c) + L.f(d, b, c) * L.f(e, d, a) +
                                 L.f(d, c, a) * L.f(e, d, b);
                        if (s != 0)
                            return "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "," +
                                   std::to_string(c + 1) + ")";
                    }
        return std::string();
    });
    R.once("chi vanishes on commutators", [&] {
        auto chi = L.trace_form();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                mpq_class s = 0;
                for (int c = 0; c < n; ++c)
                    s += L.f(c, a, b) * chi[c];
                if (s != 0)
                    return "chi([e_" + std::to_string(a + 1) + ",e_" + std::to_string(b + 1) + "]) != 0";
            }
        return std::string();
    });
    for (const Scalar& k : kappas)
        R.once("Omega squares to zero, " + kstr(k), [&] {
            GrassElement w = R.ctx().omega_grass(4);
            GrassElement sq = cliff_kappa(w, w, k);
            return unless(sq.is_zero(), grass_str(sq));
        });
}

// ---- backend ----

FunSeries diffq_closed_form(const Context& ctx, const FunSeries& f)
{
    const Backend& B = ctx.backend();
    const int N = f.order();
    auto restrict = [&](const FunSeries& s) {
        FunSeries out(N);
        for (int r = 0; r <= N; ++r)
            out.at(r) = B.restrict_fn(s[r]);
        return out;
    };
    auto dJ = [&](const FunSeries& s, int a) {
        FunSeries out(N);
        for (int r = 0; r <= N; ++r)
            out.at(r) = B.diff(s[r], B.momentum_var(a));
        return out;
    };
    switch (B.kind()) {
    case BackendKind::Torus:
        return restrict(f);
    case BackendKind::TorusPerturbed: {
        // iota^* exp(-lambda ad(P) d/dJ), ad taken in the undeformed product
        FunSeries P = FunSeries::constant(B.perturbation(), N);
        FunSeries acc = f, term = f;
        for (int k = 1; k <= N; ++k) {
            FunSeries d = dJ(term, 0);
            FunSeries ad = B.base_star(P, d) - B.base_star(d, P);
            term = ad.shifted(1) * Scalar::frac(-1, k);
            acc += term;
        }
        return restrict(acc);
    }
    case BackendKind::Flat:
    case BackendKind::FlatWeyl: {
        // iota^* exp(c lambda sum_a d/dx_a d/dJ_a), c = i (standard) or i/2 (Weyl)
        const Scalar c = B.kind() == BackendKind::Flat ? Scalar::i() : Scalar(0, 1) * Scalar::frac(1, 2);
        const int d = B.nvars() / 2;
        FunSeries acc = f, term = f;
        for (int k = 1; k <= N; ++k) {
            FunSeries next(N);
            for (int a = 0; a < ctx.n(); ++a) {
                FunSeries t = dJ(term, a);
                for (int r = 0; r <= N; ++r)
                    t.at(r) = B.diff(t[r], B.momentum_var(a) - d);
                next += t;
            }
            term = next.shifted(1) * (c * Scalar::frac(1, k));
            acc += term;
        }
        return restrict(acc);
    }
    default:
        throw ConfigError("no closed-form restriction for " + B.name());
    }
}

void backend_suite(Runner& R)
{
    const Backend& B = R.B();
    const int N = std::min(R.N(), 4);
    R.repeat("star product associative", R.S(), [&] {
        PhaseFunction f = R.rng().function(), g = R.rng().function(), h = R.rng().function();
        FunSeries F = FunSeries::constant(f, N), G = FunSeries::constant(g, N), H = FunSeries::constant(h, N);
        return unless(B.star(B.star(F, G), H) == B.star(F, B.star(G, H)),
                      B.str(f) + " | " + B.str(g) + " | " + B.str(h));
    });
    R.repeat("antisymmetric first order is i times the Poisson bracket", R.S(), [&] {
        PhaseFunction f = R.rng().function(), g = R.rng().function();
        PhaseFunction c1 = B.star(f, g, 1)[1] - B.star(g, f, 1)[1];
        return unless(c1 == B.poisson(f, g) * Scalar::i(), B.str(f) + " | " + B.str(g));
    });
    R.repeat("Poisson bracket satisfies Jacobi", R.S(), [&] {
        PhaseFunction f = R.rng().function(), g = R.rng().function(), h = R.rng().function();
        PhaseFunction j = B.poisson(f, B.poisson(g, h)) + B.poisson(g, B.poisson(h, f)) + B.poisson(h, B.poisson(f, g));
        return unless(j.is_zero(), B.str(f) + " | " + B.str(g) + " | " + B.str(h));
    });
    R.once("quantum covariance of the momenta", [&] {
        const LieAlgebra& L = R.ctx().lie();
        for (int a = 0; a < R.ctx().n(); ++a)
            for (int b = 0; b < R.ctx().n(); ++b) {
                FunSeries Ja = B.momentum(a, N), Jb = B.momentum(b, N);
                FunSeries lhs = B.star(Ja, Jb) - B.star(Jb, Ja);
                FunSeries rhs(N);
                for (int c = 0; c < R.ctx().n(); ++c)
                    rhs += B.momentum(c, N) * Scalar(L.f(c, a, b));
                rhs = rhs.shifted(1) * Scalar::i();
                if (lhs != rhs)
                    return "[J_" + std::to_string(a + 1) + ", J_" + std::to_string(b + 1) + "]";
            }
        return std::string();
    });
    if (!B.has_constraints())
        return;
    if (B.strongly_invariant()) {
        R.once("strong invariance on probe monomials", [&] {
            std::string w;
            return check_strong_invariance(R.ctx(), function_probes(R.ctx(), 2), N, &w) ? std::string() : w;
        });
    } else {
        R.once("strong invariance fails on z (expected)", [&] {
            PhaseFunction z = B.variable(0);
            return unless(!check_strong_invariance(R.ctx(), {z}, N), "J * z - z * J equals i lambda {J, z}");
        });
    }
    for (int l = 0; l <= R.ctx().n(); ++l)
        R.repeat("augmented Koszul homotopy identity at antighost " + std::to_string(l), R.S(), [&] {
            AugmentedField x(l == 0 ? R.rng().boundary_field(N) : SuperField(N), R.rng().antighost_field(N, l));
            AugmentedField back = R.ctx().aug_homotopy(R.ctx().aug_koszul(x)) + R.ctx().aug_koszul(R.ctx().aug_homotopy(x));
            return unless(back == x, R.fs(x.bulk));
        });
    R.repeat("deformed restriction equals its closed differential-operator form", R.S(), [&] {
        FunSeries f = R.rng().series(N, 3);
        return unless(R.ctx().deformed_restriction(f) == diffq_closed_form(R.ctx(), f), B.str(f));
    });
}

// ---- brst ----

void brst_suite(Runner& R)
{
    const Context& C = R.ctx();
    const int N = R.N();
    const int n = C.n();
    for (const Scalar& k : kappas)
        R.once("Theta squares to zero, " + kstr(k), [&] {
            SuperField t = C.theta(k, N);
            SuperField sq = C.star(t, t, k);
            return unless(sq.is_zero(), R.fs(sq));
        });
    for (const Scalar& k : kappas)
        R.repeat("BRST operator squares to zero, " + kstr(k), R.S(), [&] {
            SuperField a = R.rng().field(N);
            return unless(C.brst(C.brst(a, k), k).is_zero(), R.fs(a));
        });
    for (const Scalar& k : kappas)
        R.repeat("BRST operator is an odd superderivation, " + kstr(k), R.S(), [&] {
            int pa = R.rng().uniform(0, 1);
            SuperField a = R.rng().homogeneous(N, pa), b = R.rng().field(N, 2);
            SuperField lhs = C.brst(C.star(a, b, k), k);
            SuperField rhs = C.star(C.brst(a, k), b, k) + C.star(a, C.brst(b, k), k) * Scalar(pa ? -1 : 1);
            return unless(lhs == rhs, R.fs(a) + " | " + R.fs(b));
        });
    for (const Scalar& k : kappas)
        R.repeat("conjugation coherence with the Weyl operator, " + kstr(k), R.S(), [&] {
            SuperField a = R.rng().field(N);
            Scalar t = k - Scalar::frac(1, 2);
            SuperField rhs = C.s_kappa(C.brst(C.s_kappa(a, t), Scalar::frac(1, 2)), -t);
            return unless(C.brst(a, k) == rhs, R.fs(a));
        });

    auto dq = [&](const SuperField& x) { return C.quant_ce(x); };
    auto kq = [&](const SuperField& x) { return C.quant_koszul(x); };
    R.repeat("double complex: both squares and the anticommutator vanish", R.S(), [&] {
        SuperField a = R.rng().field(N);
        bool ok = dq(dq(a)).is_zero() && kq(kq(a)).is_zero() && (dq(kq(a)) + kq(dq(a))).is_zero();
        return unless(ok, R.fs(a));
    });
    R.repeat("standard BRST operator is delta_q + 2 d_q", R.S(), [&] {
        SuperField a = R.rng().field(N);
        return unless(C.brst(a, Scalar(0)) == dq(a) + kq(a) * Scalar(2), R.fs(a));
    });

    auto lam = [](const SuperField& x, int p) { return x.shifted(p); };
    auto dqk = [&](const SuperField& a, const Scalar& k) {
        return dq(a) + lam(C.op_q(a), 1) * (Scalar(0, 4) * k) - (C.op_ms(a) - C.op_ma(a)) * (Scalar(2) * k) -
               lam(C.op_u(a), 1) * (Scalar(0, 2) * k) + lam(C.op_c(a), 2) * (Scalar(4) * k * k);
    };
    auto kqk = [&](const SuperField& a, const Scalar& k) {
        return C.op_ms(a) + lam(C.op_u(a), 1) * Scalar(0, 1) * Scalar::frac(1, 2) - lam(C.op_q(a), 1) * Scalar::i() -
               lam(C.op_c(a), 2) * (Scalar(2) * k);
    };
    for (const Scalar& k : kappas) {
        R.repeat("kappa Chevalley-Eilenberg part equals the conjugated delta_q, " + kstr(k), R.S(), [&] {
            SuperField a = R.rng().field(N);
            return unless(dqk(a, k) == C.s_kappa(dq(C.s_kappa(a, k)), -k), R.fs(a));
        });
        R.repeat("kappa Koszul part equals d_q - 2 kappa lambda^2 c, " + kstr(k), R.S(), [&] {
            SuperField a = R.rng().field(N);
            return unless(kqk(a, k) == kq(a) - lam(C.op_c(a), 2) * (Scalar(2) * k), R.fs(a));
        });
        R.repeat("kappa BRST operator splits into the two parts, " + kstr(k), R.S(), [&] {
            SuperField a = R.rng().field(N);
            SuperField L1 = C.op_ms(a) * (Scalar(1) - k) + C.op_ma(a) * k;
            SuperField expl = dq(a) + L1 * Scalar(2) + lam(C.op_q(a), 1) * (Scalar(0, 2) * (Scalar(2) * k - Scalar(1))) -
                              lam(C.op_u(a), 1) * (Scalar::i() * (Scalar(2) * k - Scalar(1))) -
                              lam(C.op_c(a), 2) * (Scalar(4) * k * (Scalar(1) - k));
            SuperField D = C.brst(a, k);
            bool ok = D == expl && D == dqk(a, k) + kqk(a, k) * Scalar(2);
            return unless(ok, R.fs(a));
        });
        R.repeat("kappa parts supercommute, " + kstr(k), R.S(), [&] {
            SuperField a = R.rng().field(N);
            SuperField x = dqk(kqk(a, k), k) + kqk(dqk(a, k), k);
            return unless(x.is_zero(), R.fs(a));
        });
    }
    R.repeat("Weyl-ordered explicit operators", R.S(), [&] {
        SuperField a = R.rng().field(N);
        SuperField ce = dq(a) + lam(C.op_q(a), 1) * Scalar(0, 2) - (C.op_ms(a) - C.op_ma(a)) -
                        lam(C.op_u(a), 1) * Scalar::i() + lam(C.op_c(a), 2);
        SuperField ks = C.op_ms(a) + lam(C.op_u(a), 1) * Scalar(0, 1) * Scalar::frac(1, 2) -
                        lam(C.op_q(a), 1) * Scalar::i() - lam(C.op_c(a), 2);
        SuperField D = dq(a) + C.op_ms(a) + C.op_ma(a) - lam(C.op_c(a), 2);
        Scalar h = Scalar::frac(1, 2);
        bool ok = ce == dqk(a, h) && ks == kqk(a, h) && D == C.brst(a, h);
        return unless(ok, R.fs(a));
    });

    auto Lap = [&](const SuperField& x) { return C.laplacian(x); };
    R.repeat("laplacian commutation relations", R.S(), [&] {
        SuperField a = R.rng().field(N);
        bool ok = Lap(C.op_q(a)) - C.op_q(Lap(a)) == C.op_c(a) && Lap(C.op_c(a)) == C.op_c(Lap(a)) &&
                  Lap(C.op_ms(a)) == C.op_ms(Lap(a)) && Lap(C.op_ma(a)) == C.op_ma(Lap(a)) &&
                  Lap(C.op_u(a)) == C.op_u(Lap(a));
        return unless(ok, R.fs(a));
    });
    R.repeat("laplacian against delta_q", R.S(), [&] {
        SuperField a = R.rng().field(N);
        SuperField a1 = a.with_order(N + 1);
        SuperField dm = lambda_divide(C.op_ma(a1) - C.op_ms(a1)) * Scalar(0, -1);
        SuperField lhs = Lap(dq(a)) - dq(Lap(a));
        return unless(lhs == C.op_q(a) * Scalar(-2) - dm + C.op_u(a), R.fs(a));
    });
    R.repeat("operator definitions agree with their basis formulas", R.S(), [&] {
        SuperField a = R.rng().field(N);
        bool ok = C.op_q(a) == C.op_q_def(a) && C.op_c(a) == C.op_c_def(a) && C.op_ms(a) == C.op_ms_def(a) &&
                  C.op_ma(a) == C.op_ma_def(a);
        return unless(ok, R.fs(a));
    });
    R.repeat("ghost number operator is (k - l) on bidegree components", R.S(), [&] {
        SuperField a = R.rng().field(N);
        SuperField expect(N);
        for (const auto& [w, s] : a.terms())
            expect.add(w, s, Scalar(w.ghost_number()));
        return unless(C.gh(a) == expect, R.fs(a));
    });
    (void)n;

    if (!C.backend().has_constraints())
        return;
    auto prol = [&](const FunSeries& u) { return C.prolong_graded(C.function(u)).coeff(GhostWord{}); };
    R.repeat("deformed restriction inverts prolongation", R.S(), [&] {
        FunSeries u = R.rng().series(N, 2, false);
        return unless(C.deformed_restriction(prol(u)) == u, C.str(u));
    });
    R.repeat("deformed restriction kills the image of d_q on antighost 1", R.S(), [&] {
        SuperField x = R.rng().antighost_field(N, 1).filter([](GhostWord w) { return w.ghost_degree() == 0; });
        return unless(C.deformed_restriction(kq(x)).is_zero(), R.fs(x));
    });
    R.repeat("prol o r is idempotent", R.S(), [&] {
        FunSeries f = R.rng().series(N, 3);
        FunSeries p1 = prol(C.deformed_restriction(f));
        return unless(prol(C.deformed_restriction(p1)) == p1, C.str(f));
    });
    R.repeat("kernel of prol o r lies in the image of d_q", R.S(), [&] {
        FunSeries f = R.rng().series(N, 3);
        FunSeries k = f - prol(C.deformed_restriction(f));
        SuperField K = C.function(k);
        SuperField pre = C.quantum_homotopy(K);
        return unless(kq(pre) == K, C.str(k));
    });
    R.repeat("vanishing ideal is a left ideal", R.S(), [&] {
        SuperField x = R.rng().antighost_field(N, 1).filter([](GhostWord w) { return w.ghost_degree() == 0; });
        FunSeries f = kq(x).coeff(GhostWord{});
        FunSeries g = R.rng().series(N, 2);
        return unless(C.in_quantum_ideal(C.backend().star(g, f)), C.str(f) + " | " + C.str(g));
    });
    if (C.backend().strongly_invariant()) {
        R.repeat("quantum action on the constraint surface equals the classical one", R.S(), [&] {
            FunSeries u = R.rng().series(N, 2, false);
            for (int a = 0; a < n; ++a)
                if (C.lie_c(a, u) != C.lie_c_classical(a, u))
                    return C.str(u);
            SuperField c = R.rng().boundary_field(N);
            return unless(C.ce_c(c) == C.ce_c_classical(c), R.fs(c));
        });
    }
}

// ---- homotopy ----

void homotopy_suite(Runner& R)
{
    const Context& C = R.ctx();
    if (!C.backend().has_constraints())
        return;
    const int N = R.N();
    for (int l = 0; l <= C.n(); ++l)
        R.repeat("quantum homotopy identity at antighost " + std::to_string(l), R.S(), [&] {
            AugmentedField x(l == 0 ? R.rng().boundary_field(N) : SuperField(N), R.rng().antighost_field(N, l));
            AugmentedField back = C.aug_koszul_q(C.aug_homotopy_q(x)) + C.aug_homotopy_q(C.aug_koszul_q(x));
            return unless(back == x, R.fs(x.bulk));
        });
    R.repeat("quantum h' is a contracting homotopy for the augmented BRST operator", R.S(), [&] {
        AugmentedField x(R.rng().boundary_field(N), R.rng().field(N));
        AugmentedField back = C.aug_brst_q(C.h_prime_q(x)) + C.h_prime_q(C.aug_brst_q(x));
        return unless(back == x, R.fs(x.bulk));
    });
    if (C.backend().strongly_invariant())
        R.repeat("strong invariance: h' = h/2 and the CE part anticommutes with h", R.S(), [&] {
            AugmentedField x(R.rng().boundary_field(N), R.rng().field(N));
            AugmentedField anti = C.aug_ce_q(C.aug_homotopy_q(x)) + C.aug_homotopy_q(C.aug_ce_q(x));
            bool ok = anti.is_zero() && C.h_prime_q(x) == C.aug_homotopy_q(x) * Scalar::frac(1, 2);
            return unless(ok, R.fs(x.bulk));
        });
    R.repeat("Psi inverse produces closed fields and Psi undoes it", R.S(), [&] {
        // closed boundary fields: images of extended invariants in ghost degree 0
        std::vector<PhaseFunction> box = invariant_box(C, 1);
        PhaseFunction seed = box[R.rng().uniform(0, static_cast<int>(box.size()) - 1)];
        SolveOutcome o = solve_invariant(C, seed, N);
        if (!o.extends())
            return std::string();
        SuperField c = C.function(*o.extension);
        SuperField inv = C.psi_inverse(c);
        bool ok = C.brst(inv, Scalar(0)).is_zero() && C.psi(inv) == c;
        return unless(ok, C.backend().str(seed));
    });
    R.once("Dirac picture: product defect lies in the vanishing ideal", [&] {
        std::vector<PhaseFunction> box = invariant_box(C, 1);
        for (const PhaseFunction& u : box)
            for (const PhaseFunction& v : box) {
                SolveOutcome ou = solve_invariant(C, u, N), ov = solve_invariant(C, v, N);
                if (!ou.extends() || !ov.extends())
                    continue;
                auto prol = [&](const FunSeries& s) { return C.prolong_graded(C.function(s)).coeff(GhostWord{}); };
                FunSeries red = C.reduced_star(*ou.extension, *ov.extension);
                FunSeries defect = C.backend().star(prol(*ou.extension), prol(*ov.extension)) - prol(red);
                SuperField D = C.function(defect);
                if (C.quant_koszul(C.quantum_homotopy(D)) != D)
                    return C.backend().str(u) + " | " + C.backend().str(v);
            }
        return std::string();
    });
}

// ---- classical ----

void classical_suite(Runner& R)
{
    const Context& C = R.ctx();
    const int N = R.N();
    R.repeat("classical BRST operator squares to zero", R.S(), [&] {
        SuperField a = R.rng().field(N);
        return unless(C.brst_classical(C.brst_classical(a)).is_zero(), R.fs(a));
    });
    R.repeat("classical BRST operator is the bracket with Theta", R.S(), [&] {
        SuperField a = R.rng().field(N);
        return unless(C.brst_classical(a) == C.brst_poisson(a), R.fs(a));
    });
    R.repeat("super Poisson bracket with the ghost element is the ghost number", R.S(), [&] {
        SuperField a = R.rng().field(N);
        return unless(C.gh_poisson(a) == C.gh(a), R.fs(a));
    });
    if (!C.backend().has_constraints())
        return;
    R.repeat("classical h' is a contracting homotopy", R.S(), [&] {
        AugmentedField x(R.rng().boundary_field(N), R.rng().field(N));
        AugmentedField back = C.aug_brst(C.h_prime(x)) + C.h_prime(C.aug_brst(x));
        return unless(back == x, R.fs(x.bulk));
    });
    R.repeat("classical Psi round trip", R.S(), [&] {
        SuperField c = C.function(R.rng().series(N, 2, false));
        // make it closed: restrict to classically invariant terms
        SuperField closed(N);
        for (const auto& [w, s] : c.terms()) {
            FunSeries keep(N);
            for (int r = 0; r <= N; ++r)
                for (const auto& [m, co] : s[r].terms()) {
                    PhaseFunction t = PhaseFunction::monomial(m, co);
                    bool inv = true;
                    for (int a = 0; a < C.n(); ++a)
                        inv = inv && C.lie_c_classical(a, FunSeries::constant(t, N)).is_zero();
                    if (inv)
                        keep.at(r) += t;
                }
            closed.add(w, keep);
        }
        SuperField inv = C.psi_inverse_classical(closed);
        bool ok = C.brst_classical(inv).is_zero() && C.psi_classical(inv) == closed;
        return unless(ok, R.fs(closed));
    });
    if (C.backend().kind() == BackendKind::Torus)
        R.once("reduced Poisson bracket on the cotangent bundle of the circle", [&] {
            // {f, g} = df/dp df/dphi - df/dphi dg/dp on functions of (z, p)
            const Backend& B = C.backend();
            for (const PhaseFunction& u : invariant_box(C, 2))
                for (const PhaseFunction& v : invariant_box(C, 2)) {
                    PhaseFunction viaM = B.restrict_fn(B.poisson(B.prolong_fn(u), B.prolong_fn(v)));
                    PhaseFunction direct = B.diff(u, 2) * B.diff(v, 0) - B.diff(u, 0) * B.diff(v, 2);
                    if (viaM != direct)
                        return B.str(u) + " | " + B.str(v);
                }
            return std::string();
        });
}

} // namespace

SuiteReport run_suite(const SuiteConfig& cfg)
{
    bool known = false;
    for (const auto& s : suite_names())
        known = known || s == cfg.suite;
    if (!known)
        throw ConfigError("unknown suite '" + cfg.suite + "'");
    if (cfg.order < 1)
        throw ConfigError("order must be at least 1");
    if (cfg.samples < 1)
        throw ConfigError("samples must be at least 1");

    Context ctx = Context::from_specs(cfg.lie, cfg.backend);
    SuiteReport rep;
    rep.config = cfg;
    rep.lieName = ctx.lie().name();
    Runner R(ctx, cfg, rep);
    auto want = [&](const char* s) { return cfg.suite == "all" || cfg.suite == s; };
    if (want("grassmann"))
        grassmann_suite(R);
    if (want("liealg"))
        liealg_suite(R);
    if (want("backend"))
        backend_suite(R);
    if (want("brst"))
        brst_suite(R);
    if (want("homotopy"))
        homotopy_suite(R);
    if (want("classical"))
        classical_suite(R);
    return rep;
}

} // namespace brst
