#include "brstlab/reduction.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <doctest.h>
#include <random>

using namespace brst;

namespace {

PhaseFunction fn(const Context& c, const char* s) { return parse_function(s, c.backend()); }

bool p_only(const PhaseFunction& f)
{
    for (const auto& [m, c] : f.terms())
        if (m[0] != 0 || m[1] != 0 || m[3] != 0)
            return false;
    return true;
}

} // namespace

TEST_SUITE("reduction")
{
    TEST_CASE("perturbed torus: z is obstructed at first order")
    {
        Context c = Context::from_specs("", "torus-perturbed");
        SolveOutcome o = solve_invariant(c, fn(c, "z"), 5);
        REQUIRE_FALSE(o.extends());
        CHECK(o.obstruction->order == 1);
        CHECK(o.obstruction->residual == fn(c, "z") * Scalar(0, -1));
        CHECK(o.obstruction->unsolvable == fn(c, "z") * Scalar(0, -1));
        CHECK(o.obstruction->genuine);
        CHECK(o.obstruction->certificate.find("psi-average") != std::string::npos);
    }

    TEST_CASE("perturbed torus: powers of p extend unchanged")
    {
        Context c = Context::from_specs("", "torus-perturbed");
        for (const char* s : {"1", "p", "p^2", "p^3", "2*p - i*p^3"}) {
            SolveOutcome o = solve_invariant(c, fn(c, s), 5);
            REQUIRE(o.extends());
            CHECK(*o.extension == FunSeries::constant(fn(c, s), 5));
        }
    }

    TEST_CASE("standard torus: classical invariants are quantum invariants")
    {
        Context c = Context::from_specs("", "torus");
        for (const char* s : {"z", "z^-2*p^3", "p"}) {
            SolveOutcome o = solve_invariant(c, fn(c, s), 5);
            REQUIRE(o.extends());
            CHECK(*o.extension == FunSeries::constant(fn(c, s), 5));
        }
        CHECK_THROWS_AS(solve_invariant(c, fn(c, "w"), 3), InvarianceError);
        CHECK_THROWS_AS(solve_invariant(c, fn(c, "J"), 3), ConfigError);
    }

    TEST_CASE("perturbed torus: extendable seeds in the box are exactly the p-only ones")
    {
        Context c = Context::from_specs("", "torus-perturbed");
        for (const PhaseFunction& u : invariant_box(c, 3))
            CHECK(solve_invariant(c, u, 5).extends() == p_only(u));
    }

    TEST_CASE("verdicts")
    {
        Context std_ = Context::from_specs("", "torus");
        CHECK(consistency_verdict(std_, invariant_box(std_, 3), 5).verdict == Verdict::CertifiedByTheorem);
        Context flat = Context::from_specs("", "flat:2,1");
        CHECK(consistency_verdict(flat, invariant_box(flat, 2), 4).verdict == Verdict::CertifiedByTheorem);
        Context pert = Context::from_specs("", "torus-perturbed");
        VerdictRecord rec = consistency_verdict(pert, invariant_box(pert, 3), 5);
        CHECK(rec.verdict == Verdict::Fails);
        REQUIRE(rec.witness.has_value());
        CHECK(rec.witness->seed == fn(pert, "z"));
        CHECK(rec.note.find("no consistent quantum reduction") != std::string::npos);
        // only p-only samples: every seed extends but strong invariance fails
        std::vector<PhaseFunction> ps = {fn(pert, "1"), fn(pert, "p"), fn(pert, "p^2")};
        CHECK(consistency_verdict(pert, ps, 4).verdict == Verdict::SampleConsistent);
    }

    TEST_CASE("verdict is stable under reshuffling and raising the order")
    {
        Context pert = Context::from_specs("", "torus-perturbed");
        std::vector<PhaseFunction> box = invariant_box(pert, 2);
        std::mt19937_64 rng(8);
        for (int t = 0; t < 3; ++t) {
            std::shuffle(box.begin(), box.end(), rng);
            VerdictRecord rec = consistency_verdict(pert, box, 3);
            CHECK(rec.verdict == Verdict::Fails);
            CHECK(rec.witness->seed == fn(pert, "z"));
        }
        for (int N = 1; N <= 6; ++N) {
            SolveOutcome o = solve_invariant(pert, fn(pert, "z^2*p"), N);
            REQUIRE_FALSE(o.extends());
            CHECK(o.obstruction->order == 1);
        }
    }

    TEST_CASE("reduced table matches the closed form on the standard torus")
    {
        Context c = Context::from_specs("", "torus");
        std::vector<TableEntry> table = reduced_table(c, 3, 5);
        CHECK(table.size() == 28 * 28);
        bool sawZP = false;
        for (const TableEntry& e : table) {
            const Mono& mu = e.u.terms().begin()->first;
            const Mono& mv = e.v.terms().begin()->first;
            CHECK(e.product == oracle::reduced_torus_star(mu[0], mu[2], mv[0], mv[2], 5));
            if (e.u == fn(c, "z") && e.v == fn(c, "p")) {
                sawZP = true;
                CHECK(e.product[0] == fn(c, "z*p"));
                CHECK(e.product[1] == fn(c, "z"));
            }
        }
        CHECK(sawZP);
    }

    TEST_CASE("reduced products from the examples")
    {
        Context c = Context::from_specs("", "torus");
        auto S = [&](const char* s) { return FunSeries::constant(fn(c, s), 4); };
        CHECK(c.reduced_star(S("p"), S("z")) == S("z*p"));
        CHECK(c.reduced_star(S("z"), S("z^-1")) == S("1"));
    }

    TEST_CASE("reduced table refuses an inconsistent reduction")
    {
        Context c = Context::from_specs("", "torus-perturbed");
        CHECK_THROWS_AS(reduced_table(c, 1, 3), InvarianceError);
    }

    TEST_CASE("Vey audit")
    {
        for (const char* be : {"torus", "flat:2,1"}) {
            Context c = Context::from_specs("", be);
            VeyReport v = vey_order_audit(c, 4, 4, 5);
            CHECK(v.ok);
            REQUIRE(v.rows.size() == 5);
            CHECK(v.rows[0].orderFirst == 0);
            CHECK(v.rows[0].orderSecond == 0);
            CHECK(v.rows[1].orderFirst == 1);
            CHECK(v.rows[1].orderSecond == 1);
            CHECK(v.rows[2].orderFirst <= 2);
        }
        Context pert = Context::from_specs("", "torus-perturbed");
        CHECK_THROWS_AS(vey_order_audit(pert, 3, 2, 3), InvarianceError);
    }

    TEST_CASE("Newton differences measure polynomial degree")
    {
        auto sample = [](int dims, int G, auto&& f) {
            std::map<std::vector<int>, Scalar> m;
            std::vector<int> p(dims, 0);
            for (int x = 0; x <= G; ++x)
                for (int y = 0; y <= (dims > 1 ? G : 0); ++y) {
                    p[0] = x;
                    if (dims > 1)
                        p[1] = y;
                    m[p] = f(x, y);
                }
            return m;
        };
        CHECK(newton_degree(sample(1, 5, [](int a, int) { return Scalar(7); }), 1, 5) == 0);
        CHECK(newton_degree(sample(1, 5, [](int a, int) { return Scalar(a * a * a - a); }), 1, 5) == 3);
        CHECK(newton_degree(sample(2, 4, [](int a, int b) { return Scalar(a * b); }), 2, 4) == 2);
        CHECK(newton_degree(sample(2, 4, [](int a, int b) { return Scalar(a * a * b + 3); }), 2, 4) == 3);
        CHECK(newton_degree(sample(2, 3, [](int, int) { return Scalar(0); }), 2, 3) == -1);
        // a first-order operator probed as (i a)^2 would be flagged at r = 1
        CHECK(newton_degree(sample(1, 5, [](int a, int) { return Scalar(-a * a); }), 1, 5) > 1);
        Context c = Context::from_specs("", "torus");
        CHECK_THROWS_AS(vey_order_audit(c, 3, 3, 3), ConfigError);
    }

    TEST_CASE("alternate homotopy")
    {
        Context c = Context::from_specs("", "torus");
        AlternateReport rep = alternate_homotopy_check(c, 2, 4);
        CHECK(rep.prolongationChanged);
        CHECK(rep.augmentation);
        CHECK(rep.homomorphism);
        CHECK(rep.pairs == 15 * 15);
        CHECK(rep.witness.empty());
    }

    TEST_CASE("strong invariance probe")
    {
        Context std_ = Context::from_specs("", "torus");
        CHECK(check_strong_invariance(std_, function_probes(std_, 2), 3));
        Context pert = Context::from_specs("", "torus-perturbed");
        std::string w;
        CHECK_FALSE(check_strong_invariance(pert, function_probes(pert, 2), 3, &w));
        CHECK_FALSE(w.empty());
    }
}
