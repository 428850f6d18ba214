#include "brstlab/brst.hpp"
#include "brstlab/suites.hpp"

#include <doctest.h>

using namespace brst;

namespace {

const Scalar kappas[] = {Scalar(0), Scalar::frac(1, 4), Scalar::frac(1, 2), Scalar(1)};

SuperField F(const Context& c, const char* s, int order) { return parse_field(s, c.backend(), order); }

} // namespace

TEST_SUITE("brst")
{
    TEST_CASE("charge squares to zero on every preset")
    {
        for (auto [lie, be] : std::vector<std::pair<const char*, const char*>>{{"", "torus"},
                                                                             {"", "torus-perturbed"},
                                                                             {"", "flat:2,1"},
                                                                             {"", "flat:3,2"},
                                                                             {"su2", "point"},
                                                                             {"aff1", "point"}}) {
            Context c = Context::from_specs(lie, be);
            for (const Scalar& k : kappas) {
                SuperField t = c.theta(k, 5);
                CHECK_MESSAGE(c.star(t, t, k).is_zero(), lie << " " << be << " kappa " << k);
            }
        }
    }

    TEST_CASE("kappa-ordered charge is the S_kappa image of the symmetric one")
    {
        for (const char* lie : {"su2", "aff1", "abelian:2"}) {
            Context c = Context::from_specs(lie, "point");
            SuperField half = c.theta(Scalar::frac(1, 2), 4);
            for (Scalar k : {Scalar(0), Scalar::frac(1, 4), Scalar(1)})
                CHECK_MESSAGE(c.s_kappa(half, Scalar::frac(1, 2) - k) == c.theta(k, 4), std::string(lie) << " kappa " << k);
        }
        // the correction is visible exactly when the trace form is nonzero
        Context a = Context::from_specs("aff1", "point");
        CHECK_FALSE(a.theta(Scalar(1), 4) == a.theta(Scalar(0), 4));
        Context s = Context::from_specs("su2", "point");
        CHECK(s.theta(Scalar(1), 4) == s.theta(Scalar(0), 4));
    }

    TEST_CASE("classical charge Omega on the presets")
    {
        // -1/4 sum f^c_ab e^a e^b e_c, merged by hand
        Context s = Context::from_specs("su2", "point");
        CHECK(s.omega(2) == F(s, "-1/2*(e^1^e^2^e_3 + e^2^e^3^e_1 + e^3^e^1^e_2)", 2));
        Context a = Context::from_specs("aff1", "point");
        CHECK(a.omega(2) == F(a, "-1/2*e^1^e^2^e_2", 2));
        CHECK(a.chi(2) == F(a, "1/2*e^1", 2));
        Context t = Context::from_specs("", "torus");
        CHECK(t.omega(2).is_zero());
        CHECK(t.chi(2).is_zero());
    }

    TEST_CASE("operator values on su2")
    {
        Context c = Context::from_specs("su2", "point");
        // q(e_1 e_2) = e_3
        CHECK(c.op_q(F(c, "e_1^e_2", 2)) == F(c, "e_3", 2));
        CHECK(c.op_q(F(c, "e_1^e_2", 2)) == c.op_q_def(F(c, "e_1^e_2", 2)));
        // q and c do not vanish identically
        CHECK_FALSE(c.op_c(F(c, "e^1^e_1^e_2^e_3", 2)).is_zero());
    }

    TEST_CASE("BRST operator depends on the ordering on aff1")
    {
        Context c = Context::from_specs("aff1", "point");
        SuperField a = F(c, "e_1^e_2 + e^1^e_2", 3);
        CHECK(c.brst(a, Scalar(0)) != c.brst(a, Scalar(1)));
        CHECK(c.brst(a, Scalar(0)) == c.quant_ce(a) + c.quant_koszul(a) * Scalar(2));
    }

    TEST_CASE("random sample fields are not annihilated")
    {
        for (const char* be : {"torus", "flat:2,2"}) {
            Context c = Context::from_specs("", be);
            FieldSampler rng(c, 3);
            int nonzero = 0;
            for (int t = 0; t < 20; ++t)
                nonzero += !c.brst(rng.field(3), Scalar(0)).is_zero();
            CHECK(nonzero >= 15);
        }
    }

    TEST_CASE("torus Koszul operator is right multiplication by J")
    {
        Context c = Context::from_specs("", "torus");
        CHECK(c.quant_koszul(F(c, "e_1*z*w", 3)) == F(c, "z*w*J", 3));
        // the restriction is undeformed
        CHECK(c.deformed_restriction(F(c, "J*z + p", 3)) == F(c, "p", 3));
    }

    TEST_CASE("perturbed torus Koszul operator and restriction")
    {
        Context c = Context::from_specs("", "torus-perturbed");
        SuperField k = c.quant_koszul(F(c, "e_1*z*w", 3));
        SuperField expect = F(c, "z*w*J", 3) - F(c, "z*w", 3).shifted(2);
        CHECK(k == expect);
        SuperField r = c.deformed_restriction(F(c, "J*z", 3));
        CHECK(r == F(c, "z", 3).shifted(2));
        CHECK(c.deformed_restriction(F(c, "J", 3)).is_zero());
        FunSeries lz = c.lie_c(0, FunSeries::constant(parse_function("z", c.backend()), 3));
        CHECK(lz == FunSeries::monomial(parse_function("z", c.backend()) * Scalar(0, -1), 1, 3));
    }

    TEST_CASE("flat deformed restriction sees x-derivatives")
    {
        Context c = Context::from_specs("", "flat:2,1");
        CHECK(c.deformed_restriction(F(c, "x2*p2", 3)) == SuperField::unit(3).shifted(1) * Scalar::i());
        CHECK(c.deformed_restriction(F(c, "x2^2*p2^2", 3)) == SuperField::unit(3).shifted(2) * Scalar(-2));
    }

    TEST_CASE("point backend refuses constraint operations")
    {
        Context c = Context::from_specs("su2", "point");
        CHECK_THROWS_AS(c.deformed_restriction(c.unit(2)), ConfigError);
        CHECK_THROWS_AS(Context::from_specs("su2", "torus"), ConfigError);
    }

    TEST_CASE("closedness and invariance are enforced")
    {
        Context c = Context::from_specs("", "torus");
        CHECK_THROWS_AS(c.psi_inverse(F(c, "w", 3)), ClosednessError);
        FunSeries w = FunSeries::constant(parse_function("w", c.backend()), 3);
        FunSeries z = FunSeries::constant(parse_function("z", c.backend()), 3);
        CHECK_THROWS_AS(c.reduced_star(w, z), InvarianceError);
        FunSeries p = FunSeries::constant(parse_function("p", c.backend()), 3);
        FunSeries zp = c.reduced_star(z, p);
        CHECK(zp[0] == parse_function("z*p", c.backend()));
        CHECK(zp[1] == parse_function("z", c.backend()));
    }

    TEST_CASE("cohomology product matches the reduced product")
    {
        Context c = Context::from_specs("", "torus");
        SuperField z = F(c, "z", 3), p = F(c, "p", 3);
        SuperField prod = c.cohomology_product(z, p);
        CHECK(prod == F(c, "z*p", 3) + F(c, "z", 3).shifted(1));
    }
}
