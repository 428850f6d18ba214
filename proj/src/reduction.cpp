#include "brstlab/reduction.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace brst {

namespace {

bool torus_like(const Backend& B)
{
    return B.kind() == BackendKind::Torus || B.kind() == BackendKind::TorusPerturbed;
}

bool flat_like(const Backend& B)
{
    return B.kind() == BackendKind::Flat || B.kind() == BackendKind::FlatWeyl;
}

void need_reducible(const Context& ctx, const char* what)
{
    if (!ctx.backend().has_constraints())
        throw ConfigError(std::string(what) + ": backend '" + ctx.backend().name() + "' has no constraint surface");
}

/// position variable x_{d-k+a} on which J_a acts by translation
int flat_action_var(const Backend& B, int a)
{
    return B.momentum_var(a) - B.nvars() / 2;
}

int group_degree(const Backend& B, const Mono& m, int k)
{
    int deg = 0;
    for (int a = 0; a < k; ++a)
        deg += m[flat_action_var(B, a)];
    return deg;
}

FunSeries map_series(const FunSeries& s, const std::function<PhaseFunction(const PhaseFunction&)>& f)
{
    FunSeries out(s.order());
    for (int r = 0; r <= s.order(); ++r)
        out.at(r) = f(s[r]);
    return out;
}

/// canonical ordering of seeds: small total exponent first, positive before negative
std::vector<int> seed_key(const Mono& m)
{
    std::vector<int> key;
    int total = 0;
    for (int16_t e : m)
        total += std::abs(e);
    key.push_back(total);
    for (int16_t e : m) {
        key.push_back(std::abs(e));
        key.push_back(e < 0 ? 1 : 0);
    }
    return key;
}

std::vector<int> function_key(const PhaseFunction& f)
{
    std::vector<int> key;
    for (const auto& [m, c] : f.terms()) {
        auto k = seed_key(m);
        key.insert(key.end(), k.begin(), k.end());
    }
    return key;
}

/// multi-indices in [lo, hi]^dims, in lexicographic order
std::vector<std::vector<int>> grid_points(int dims, int lo, int hi)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(dims, lo);
    while (true) {
        out.push_back(cur);
        int i = dims - 1;
        while (i >= 0 && cur[i] == hi)
            cur[i--] = lo;
        if (i < 0)
            break;
        ++cur[i];
    }
    return out;
}

} // namespace

std::string verdict_str(Verdict v)
{
    switch (v) {
    case Verdict::CertifiedByTheorem:
        return "CERTIFIED-BY-THEOREM";
    case Verdict::SampleConsistent:
        return "SAMPLE-CONSISTENT";
    case Verdict::Fails:
        return "FAILS";
    }
    return "?";
}

// ---- solver ----

SolveOutcome solve_invariant(const Context& ctx, const PhaseFunction& seed, int order)
{
    need_reducible(ctx, "solve_invariant");
    const Backend& B = ctx.backend();
    const int k = ctx.n();
    if (!B.is_constraint_function(seed))
        throw ConfigError("solve_invariant: seed depends on a constrained momentum: " + B.str(seed));
    for (int a = 0; a < k; ++a) {
        PhaseFunction d = B.restrict_fn(B.lie_classical(a, seed));
        if (!d.is_zero())
            throw InvarianceError("solve_invariant: seed " + B.str(seed) + " is not classically invariant; action " +
                                  std::to_string(a + 1) + " gives " + B.str(d));
    }

    SolveOutcome out;
    out.seed = seed;
    FunSeries u = FunSeries::constant(seed, order);
    for (int s = 0; s < order; ++s) {
        std::vector<PhaseFunction> g(k);
        bool any = false;
        for (int a = 0; a < k; ++a) {
            FunSeries d = ctx.lie_c(a, u);
            if (d.valuation() <= s)
                throw Error("solve_invariant: lower-order defect survived at lambda^" + std::to_string(d.valuation()));
            g[a] = d[s + 1];
            any = any || !g[a].is_zero();
        }
        if (!any)
            continue;

        // solve L_0 u_{s+1} = -g with the zero-average complement
        PhaseFunction corr;
        PhaseFunction bad;
        std::string test;
        if (torus_like(B)) {
            for (const auto& [m, c] : g[0].terms()) {
                const int l = m[1];
                if (l == 0)
                    bad.add(m, c);
                else
                    corr.add(m, c / Scalar(0, l));
            }
            test = "psi-average of the residual is " + B.str(bad) +
                   " (nonzero); integrating d/dpsi u = g over the psi circle kills the left-hand side";
        } else if (flat_like(B)) {
            for (int a = 0; a < k; ++a)
                for (const auto& [m, c] : g[a].terms()) {
                    Mono raised = m;
                    ++raised[flat_action_var(B, a)];
                    corr.add(raised, -c / Scalar(group_degree(B, m, k) + 1));
                }
            for (int a = 0; a < k; ++a)
                bad += B.restrict_fn(B.lie_classical(a, corr)) + g[a];
            test = "the residual is not exact along the orbit directions; defect after the Poincare homotopy is " +
                   B.str(bad);
        } else {
            throw ConfigError("solve_invariant: unsupported backend " + B.name());
        }

        if (!bad.is_zero()) {
            Obstruction ob;
            ob.order = s + 1;
            for (int a = 0; a < k && ob.residual.is_zero(); ++a)
                ob.residual = g[a];
            ob.unsolvable = bad;
            ob.genuine = s == 0;
            std::ostringstream msg;
            msg << "no u_" << s + 1 << " exists: " << test;
            msg << (ob.genuine ? "; the equation involves only the seed"
                               : "; relative to the zero-average choices at lower orders");
            ob.certificate = msg.str();
            out.obstruction = std::move(ob);
            return out;
        }
        u.at(s + 1) = corr;
    }

    for (int a = 0; a < k; ++a)
        if (!ctx.lie_c(a, u).is_zero())
            throw Error("solve_invariant: extension of " + B.str(seed) + " failed re-verification");
    out.extension = std::move(u);
    return out;
}

// ---- samples ----

std::vector<int> reduced_vars(const Context& ctx)
{
    need_reducible(ctx, "reduced_vars");
    const Backend& B = ctx.backend();
    if (torus_like(B))
        return {0, 2};
    const int d = B.nvars() / 2;
    const int free = d - ctx.n();
    std::vector<int> v;
    for (int j = 0; j < free; ++j)
        v.push_back(j);
    for (int j = 0; j < free; ++j)
        v.push_back(d + j);
    return v;
}

std::vector<PhaseFunction> invariant_box(const Context& ctx, int maxDeg)
{
    const Backend& B = ctx.backend();
    std::vector<int> vars = reduced_vars(ctx);
    std::vector<PhaseFunction> out;
    if (vars.empty()) {
        out.emplace_back(Scalar(1));
        return out;
    }
    // Fourier exponents range over [-D, D]; shift the grid and undo per variable
    for (const auto& idx : grid_points(static_cast<int>(vars.size()), 0, 2 * maxDeg)) {
        Mono m{};
        bool ok = true;
        for (size_t i = 0; i < vars.size(); ++i) {
            int e = idx[i];
            if (B.var_kind(vars[i]) == VarKind::Fourier)
                e -= maxDeg;
            else if (e > maxDeg)
                ok = false;
            m[vars[i]] = static_cast<int16_t>(e);
        }
        if (ok)
            out.push_back(PhaseFunction::monomial(m));
    }
    return out;
}

std::vector<PhaseFunction> function_probes(const Context& ctx, int maxDeg)
{
    const Backend& B = ctx.backend();
    const int nv = B.nvars();
    std::vector<PhaseFunction> out;
    if (nv == 0) {
        out.emplace_back(Scalar(1));
        return out;
    }
    for (const auto& idx : grid_points(nv, 0, 2 * maxDeg)) {
        Mono m{};
        int total = 0;
        for (int v = 0; v < nv; ++v) {
            int e = idx[v];
            if (B.var_kind(v) == VarKind::Fourier)
                e -= maxDeg;
            m[v] = static_cast<int16_t>(e);
            total += std::abs(e);
        }
        if (total <= maxDeg)
            out.push_back(PhaseFunction::monomial(m));
    }
    return out;
}

bool check_strong_invariance(const Context& ctx, const std::vector<PhaseFunction>& probes, int order,
                             std::string* witness)
{
    const Backend& B = ctx.backend();
    for (const PhaseFunction& f : probes)
        for (int a = 0; a < ctx.n(); ++a) {
            FunSeries quantum = ctx.lie_m(a, FunSeries::constant(f, order));
            FunSeries classical = FunSeries::constant(B.lie_classical(a, f), order);
            if (quantum != classical) {
                if (witness)
                    *witness = "J_" + std::to_string(a + 1) + " on " + B.str(f) + ": quantum " + B.str(quantum) +
                               " vs classical " + B.str(classical);
                return false;
            }
        }
    return true;
}

// ---- verdict ----

VerdictRecord consistency_verdict(const Context& ctx, const std::vector<PhaseFunction>& samples, int order,
                                  uint64_t seed)
{
    VerdictRecord rec;
    rec.order = order;
    for (const PhaseFunction& u : samples)
        rec.outcomes.push_back(solve_invariant(ctx, u, order));

    const SolveOutcome* worst = nullptr;
    for (const SolveOutcome& o : rec.outcomes)
        if (!o.extends() && (!worst || function_key(o.seed) < function_key(worst->seed)))
            worst = &o;
    if (worst) {
        rec.verdict = Verdict::Fails;
        rec.witness = *worst;
        rec.note = "there is no consistent quantum reduction: " + ctx.backend().str(worst->seed) +
                   " does not extend (" + worst->obstruction->certificate + ")";
        return rec;
    }

    // the deformed embedding must be linear on the sample span
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(samples.size()) - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 4 && !samples.empty(); ++trial) {
        PhaseFunction combo;
        FunSeries expected(order);
        for (int j = 0; j < 3; ++j) {
            int i = pick(rng);
            Scalar c(coef(rng), coef(rng));
            combo += samples[i] * c;
            expected += *rec.outcomes[i].extension * c;
        }
        SolveOutcome o = solve_invariant(ctx, combo, order);
        if (!o.extends() || *o.extension != expected) {
            rec.linear = false;
            rec.verdict = Verdict::Fails;
            rec.witness = o;
            rec.note = "deformed embedding is not linear on " + ctx.backend().str(combo);
            return rec;
        }
    }

    std::string why;
    rec.strongInvariance = ctx.backend().strongly_invariant() &&
                           check_strong_invariance(ctx, function_probes(ctx, 2), order, &why);
    if (rec.strongInvariance) {
        rec.verdict = Verdict::CertifiedByTheorem;
        rec.note = "strongly invariant: quantum invariants coincide with classical ones";
    } else {
        rec.verdict = Verdict::SampleConsistent;
        rec.note = "every sampled invariant extends; strong invariance " +
                   (why.empty() ? std::string("not claimed") : "fails: " + why);
    }
    return rec;
}

std::vector<TableEntry> reduced_table(const Context& ctx, int maxDeg, int order)
{
    std::vector<PhaseFunction> box = invariant_box(ctx, maxDeg);
    VerdictRecord rec = consistency_verdict(ctx, box, order);
    if (rec.verdict == Verdict::Fails)
        throw InvarianceError("reduced table refused: " + rec.note);
    std::vector<TableEntry> out;
    for (size_t i = 0; i < box.size(); ++i)
        for (size_t j = 0; j < box.size(); ++j)
            out.push_back({box[i], box[j],
                           ctx.reduced_star(*rec.outcomes[i].extension, *rec.outcomes[j].extension)});
    return out;
}

// ---- Vey audit ----

int newton_degree(std::map<std::vector<int>, Scalar> f, int dims, int G)
{
    for (int axis = 0; axis < dims; ++axis) {
        for (const auto& base : grid_points(dims, 0, G)) {
            if (base[axis] != 0)
                continue;
            std::vector<Scalar> line(G + 1);
            std::vector<int> p = base;
            for (int t = 0; t <= G; ++t) {
                p[axis] = t;
                line[t] = f[p];
            }
            // in-place forward differences at the origin
            for (int lvl = 1; lvl <= G; ++lvl)
                for (int t = G; t >= lvl; --t)
                    line[t] = line[t] - line[t - 1];
            for (int t = 0; t <= G; ++t) {
                p[axis] = t;
                f[p] = line[t];
            }
        }
    }
    int deg = -1;
    for (const auto& [j, c] : f)
        if (!c.is_zero()) {
            int s = 0;
            for (int x : j)
                s += x;
            deg = std::max(deg, s);
        }
    return deg;
}

VeyReport vey_order_audit(const Context& ctx, int order, int rmax, int grid)
{
    const Backend& B = ctx.backend();
    std::vector<int> vars = reduced_vars(ctx);
    const int dims = static_cast<int>(vars.size());
    VeyReport rep;
    if (grid <= rmax)
        throw ConfigError("vey audit: grid must exceed the highest audited order");
    rmax = std::min(rmax, order);

    std::vector<std::vector<int>> pts = dims ? grid_points(dims, 0, grid) : std::vector<std::vector<int>>{{}};
    auto mono_of = [&](const std::vector<int>& e) {
        Mono m{};
        for (int i = 0; i < dims; ++i)
            m[vars[i]] = static_cast<int16_t>(e[i]);
        return m;
    };

    std::vector<FunSeries> ext;
    for (const auto& e : pts) {
        SolveOutcome o = solve_invariant(ctx, PhaseFunction::monomial(mono_of(e)), order);
        if (!o.extends())
            throw InvarianceError("vey audit: " + B.str(o.seed) + " does not extend: " + o.obstruction->certificate);
        ext.push_back(*o.extension);
    }

    std::map<std::pair<size_t, size_t>, FunSeries> prod;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = 0; j < pts.size(); ++j)
            prod.emplace(std::make_pair(i, j), ctx.reduced_star(ext[i], ext[j]));

    for (int r = 0; r <= rmax; ++r) {
        VeyRow row;
        row.r = r;
        for (int arg = 0; arg < 2; ++arg) {
            int worst = -1;
            for (size_t probe = 0; probe < pts.size(); ++probe) {
                // shift -> (exponent of the varying argument -> coefficient)
                std::map<std::vector<int>, std::map<std::vector<int>, Scalar>> groups;
                for (size_t i = 0; i < pts.size(); ++i) {
                    const FunSeries& p = arg == 0 ? prod.at({i, probe}) : prod.at({probe, i});
                    for (const auto& [m, c] : p[r].terms()) {
                        std::vector<int> shift(B.nvars());
                        for (int v = 0; v < B.nvars(); ++v)
                            shift[v] = m[v];
                        for (int d = 0; d < dims; ++d)
                            shift[vars[d]] -= pts[i][d] + pts[probe][d];
                        groups[shift][pts[i]] = c;
                    }
                }
                for (auto& [shift, values] : groups) {
                    int deg = newton_degree(values, dims, grid);
                    if (deg > worst) {
                        worst = deg;
                        if (deg > r && rep.witness.empty())
                            rep.witness = "C_" + std::to_string(r) + " has order " + std::to_string(deg) +
                                          " in argument " + std::to_string(arg + 1) + " (probe " +
                                          B.str(PhaseFunction::monomial(mono_of(pts[probe]))) + ")";
                    }
                }
            }
            (arg == 0 ? row.orderFirst : row.orderSecond) = std::max(worst, 0);
        }
        row.ok = row.orderFirst <= r && row.orderSecond <= r;
        rep.ok = rep.ok && row.ok;
        rep.rows.push_back(row);
    }
    return rep;
}

// ---- alternate homotopy ----

namespace {

/// Reduction data built from prol' = exp(lambda J d/dp) prol and h_0' = h_0 (id - (prol' - prol) iota^*).
class ShearedReduction {
public:
    explicit ShearedReduction(const Context& ctx) : ctx_(ctx)
    {
        const Backend& B = ctx.backend();
        std::vector<int> vars = reduced_vars(ctx);
        int shear = -1;
        for (int v : vars)
            if (B.var_kind(v) == VarKind::Poly && shear < 0 && (torus_like(B) || v >= B.nvars() / 2))
                shear = v;
        if (shear < 0)
            throw ConfigError("alternate homotopy: no reduced momentum to shear on " + B.name());
        p_ = shear;
        J_ = B.momentum_var(0);
    }

    /// exp(lambda J d/dp) on a coefficient series
    FunSeries shear(const FunSeries& f) const
    {
        const Backend& B = ctx_.backend();
        const int N = f.order();
        FunSeries out(N);
        for (int r = 0; r <= N; ++r) {
            PhaseFunction term = f[r];
            mpz_class fact = 1;
            for (int j = 0; r + j <= N && !term.is_zero(); ++j) {
                out.at(r + j) += term * Scalar(mpq_class(1, fact));
                term = B.diff(term, p_) * B.variable(J_);
                fact *= j + 1;
            }
        }
        return out;
    }

    SuperField shear(const SuperField& x) const
    {
        SuperField out(x.order());
        for (const auto& [w, s] : x.terms())
            out.add(w, shear(s));
        return out;
    }

    SuperField prol(const SuperField& c) const { return shear(ctx_.prolong_graded(c)); }

    SuperField h0(const SuperField& x) const
    {
        SuperField a0 = x.antighost(0);
        SuperField rest = x - a0;
        SuperField ic = ctx_.restrict_graded(a0);
        SuperField t = prol(ic) - ctx_.prolong_graded(ic);
        return ctx_.homotopy(a0 - t) + ctx_.homotopy(rest);
    }

    SuperField neumann(const SuperField& a0) const
    {
        SuperField acc = a0;
        SuperField cur = a0;
        const int N = a0.order();
        for (int it = 0; !cur.is_zero(); ++it) {
            if (it > N + 1)
                throw InversionError("alternate restriction: Neumann series did not terminate");
            SuperField hc = h0(cur);
            SuperField next = ctx_.koszul(hc) - ctx_.quant_koszul(hc);
            if (!next.is_zero() && next.valuation() <= cur.valuation())
                throw InversionError("alternate restriction: correction does not raise the lambda order");
            cur = std::move(next);
            acc += cur;
        }
        return acc;
    }

    SuperField restrict(const SuperField& a) const { return ctx_.restrict_graded(neumann(a.antighost(0))); }
    SuperField qh0(const SuperField& a) const { return h0(neumann(a.antighost(0))); }

    FunSeries restrict(const FunSeries& f) const { return restrict(ctx_.function(f)).coeff(GhostWord{}); }
    FunSeries prol(const FunSeries& u) const { return prol(ctx_.function(u)).coeff(GhostWord{}); }

    FunSeries product(const FunSeries& u, const FunSeries& v) const
    {
        return restrict(ctx_.backend().star(prol(u), prol(v)));
    }

    /// Phi = r' o prol
    FunSeries phi(const FunSeries& u) const
    {
        return restrict(ctx_.prolong_graded(ctx_.function(u)).coeff(GhostWord{}));
    }

private:
    const Context& ctx_;
    int p_ = -1;
    int J_ = -1;
};

} // namespace

AlternateReport alternate_homotopy_check(const Context& ctx, int maxDeg, int order)
{
    need_reducible(ctx, "alternate homotopy");
    const Backend& B = ctx.backend();
    ShearedReduction alt(ctx);
    AlternateReport rep;
    auto fail = [&](bool& flag, const std::string& what) {
        flag = false;
        if (rep.witness.empty())
            rep.witness = what;
    };

    std::vector<PhaseFunction> box = invariant_box(ctx, maxDeg);
    std::vector<FunSeries> ext;
    for (const PhaseFunction& u : box) {
        SolveOutcome o = solve_invariant(ctx, u, order);
        if (!o.extends())
            throw InvarianceError("alternate homotopy: " + B.str(u) + " does not extend");
        ext.push_back(*o.extension);
    }

    // augmentation identities for the sheared data
    for (const FunSeries& u : ext) {
        FunSeries pu = alt.prol(u);
        if (pu != map_series(u, [&](const PhaseFunction& f) { return B.prolong_fn(f); }))
            rep.prolongationChanged = true;
        if (map_series(pu, [&](const PhaseFunction& f) { return B.restrict_fn(f); }) != u)
            fail(rep.augmentation, "iota^* prol' != id on " + B.str(u));
        if (!alt.h0(ctx.function(pu)).is_zero())
            fail(rep.augmentation, "h_0' prol' != 0 on " + B.str(u));
        if (alt.restrict(pu) != u)
            fail(rep.augmentation, "r' prol' != id on " + B.str(u));
    }
    for (const PhaseFunction& f : function_probes(ctx, 2)) {
        SuperField a = ctx.function(f, order);
        SuperField back = ctx.koszul(alt.h0(a)) + alt.prol(ctx.restrict_graded(a));
        if (back != a)
            fail(rep.augmentation, "d h_0' + prol' iota^* != id on " + B.str(f));
        SuperField qback = ctx.quant_koszul(alt.qh0(a)) + alt.prol(alt.restrict(a));
        if (qback != a)
            fail(rep.augmentation, "d_q qh_0' + prol' r' != id on " + B.str(f));
        for (int b = 0; b < ctx.n(); ++b) {
            SuperField e = SuperField::term(GhostWord{0, 1u << b}, FunSeries::constant(f, order));
            if (!alt.restrict(ctx.quant_koszul(e)).is_zero())
                fail(rep.augmentation, "r' d_q != 0 on e_" + std::to_string(b + 1) + " " + B.str(f));
        }
    }

    // Phi built order by order through the Neumann series of r'
    std::vector<FunSeries> phi;
    for (size_t i = 0; i < box.size(); ++i) {
        phi.push_back(alt.phi(ext[i]));
        if (phi.back()[0] != box[i])
            fail(rep.homomorphism, "Phi does not start with the identity on " + B.str(box[i]));
        if (phi.back() != ext[i])
            rep.identity = false;
    }
    for (size_t i = 0; i < box.size(); ++i)
        for (size_t j = 0; j < box.size(); ++j) {
            ++rep.pairs;
            FunSeries red = ctx.reduced_star(ext[i], ext[j]);
            FunSeries lhs = alt.phi(red);
            FunSeries rhs = alt.product(phi[i], phi[j]);
            if (lhs != rhs)
                fail(rep.homomorphism, "Phi(u * v) != Phi(u) *' Phi(v) for u = " + B.str(box[i]) +
                                           ", v = " + B.str(box[j]));
            if (alt.product(ext[i], ext[j]) != red)
                rep.productsEqual = false;
        }
    return rep;
}

} // namespace brst
