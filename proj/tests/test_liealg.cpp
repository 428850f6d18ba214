#include "brstlab/grassmann.hpp"
#include "brstlab/liealg.hpp"

#include <doctest.h>

using namespace brst;

namespace {

/// [x, y] for coordinate vectors, written out from the structure constants
std::vector<mpq_class> bracket(const LieAlgebra& L, const std::vector<mpq_class>& x, const std::vector<mpq_class>& y)
{
    const int n = L.dim();
    std::vector<mpq_class> out(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                out[c] += x[a] * y[b] * L.f(c, a, b);
    return out;
}

std::vector<mpq_class> unit(int n, int a)
{
    std::vector<mpq_class> v(n);
    v[a] = 1;
    return v;
}

} // namespace

TEST_SUITE("liealg")
{
    TEST_CASE("presets are valid Lie algebras")
    {
        for (const char* spec : {"abelian:1", "abelian:3", "su2", "aff1"})
            CHECK_FALSE(validate(LieAlgebra::from_spec(spec)).has_value());
    }

    TEST_CASE("su2 brackets are cyclic")
    {
        LieAlgebra L = LieAlgebra::su2();
        CHECK(bracket(L, unit(3, 0), unit(3, 1)) == unit(3, 2));
        CHECK(bracket(L, unit(3, 1), unit(3, 2)) == unit(3, 0));
        CHECK(bracket(L, unit(3, 2), unit(3, 0)) == unit(3, 1));
    }

    TEST_CASE("aff1 has [e1, e2] = e2 and a nonzero trace form")
    {
        LieAlgebra L = LieAlgebra::aff1();
        CHECK(bracket(L, unit(2, 0), unit(2, 1)) == unit(2, 1));
        // chi_a = 1/2 tr ad(e_a)
        auto chi = L.trace_form();
        for (int a = 0; a < 2; ++a) {
            mpq_class tr = 0;
            for (int b = 0; b < 2; ++b)
                tr += bracket(L, unit(2, a), unit(2, b))[b];
            CHECK(chi[a] == tr / 2);
        }
        CHECK(chi[0] != 0);
        CHECK(LieAlgebra::su2().trace_form() == std::vector<mpq_class>(3, 0));
    }

    TEST_CASE("validation reports antisymmetry violations")
    {
        LieAlgebra L(2, "broken");
        L.set(1, 0, 1, 1); // f^2_12 = 1 without f^2_21 = -1
        auto v = validate(L);
        REQUIRE(v.has_value());
        CHECK(v->kind == "antisymmetry");
    }

    TEST_CASE("validation reports Jacobi violations")
    {
        // [e1,e2] = e3, [e1,e3] = e1 fails Jacobi
        LieAlgebra L(3, "broken");
        L.set_bracket(2, 0, 1, 1);
        L.set_bracket(0, 0, 2, 1);
        auto v = validate(L);
        REQUIRE(v.has_value());
        CHECK(v->kind == "jacobi");
    }

    TEST_CASE("json loader")
    {
        LieAlgebra L = LieAlgebra::from_json(R"({"dim": 2, "f": [[2, 1, 2, 1]]})");
        CHECK(L.dim() == 2);
        CHECK(L.f(1, 0, 1) == 1);
        CHECK(L.f(1, 1, 0) == -1);
        CHECK_THROWS_AS(LieAlgebra::from_json(R"({"dim": 2, "f": [[2, 2, 1, 1]]})"), ConfigError);
        CHECK_THROWS_AS(LieAlgebra::from_json(R"({"dim": 2, "f": [[3, 1, 2, 1]]})"), ConfigError);
        CHECK_THROWS(LieAlgebra::from_json("{not json"));
        CHECK_THROWS_AS(LieAlgebra::from_spec("so5"), ConfigError);
    }

    TEST_CASE("change of basis keeps a Lie algebra")
    {
        std::vector<std::vector<mpq_class>> M = {{1, 2, 0}, {0, 1, 0}, {1, 0, 2}};
        std::vector<std::vector<mpq_class>> Minv = {{1, -2, 0}, {0, 1, 0}, {mpq_class(-1, 2), 1, mpq_class(1, 2)}};
        LieAlgebra R = LieAlgebra::su2().rebased(M, Minv);
        CHECK_FALSE(validate(R).has_value());
        CHECK_FALSE(R.is_abelian());
    }

    TEST_CASE("Omega squares to zero only for valid brackets")
    {
        LieAlgebra good = LieAlgebra::aff1();
        Graded<Scalar> ok(3);
        // Omega = -1/2 f^c_ab e^a e^b e_c, built here from the definition
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) {
                    if (good.f(c, a, b) == 0 || a == b)
                        continue;
                    GhostWord w{(1u << a) | (1u << b), 1u << c};
                    int sign = a < b ? 1 : -1;
                    ok.add(w, ScalarSeries::constant(Scalar(good.f(c, a, b)) * Scalar::frac(-sign, 2), 3));
                }
        CHECK(cliff_kappa(ok, ok, Scalar(0)).is_zero());

        // a non-Lie bracket gives a nonzero square
        Graded<Scalar> bad(3);
        bad.add(GhostWord{0b011u, 0b100u}, ScalarSeries::constant(Scalar(-1), 3));
        bad.add(GhostWord{0b101u, 0b001u}, ScalarSeries::constant(Scalar(-1), 3));
        CHECK_FALSE(cliff_kappa(bad, bad, Scalar(0)).is_zero());
    }
}
