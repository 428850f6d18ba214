#include "brstlab/brst.hpp"
#include "brstlab/suites.hpp"

#include "oracles.hpp"

#include <doctest.h>
#include <random>

using namespace brst;

namespace {

Mono mono4(int z, int w, int p, int J)
{
    Mono m{};
    m[0] = z;
    m[1] = w;
    m[2] = p;
    m[3] = J;
    return m;
}

} // namespace

TEST_SUITE("backend")
{
    TEST_CASE("torus star agrees with the closed exponential on monomials")
    {
        Backend B = Backend::torus();
        std::mt19937_64 rng(4);
        std::uniform_int_distribution<int> four(-2, 2), poly(0, 3);
        for (int t = 0; t < 200; ++t) {
            Mono f = mono4(four(rng), four(rng), poly(rng), poly(rng));
            Mono g = mono4(four(rng), four(rng), poly(rng), poly(rng));
            CHECK(B.star(PhaseFunction::monomial(f), PhaseFunction::monomial(g), 4) == oracle::torus_star(f, g, 4));
        }
    }

    TEST_CASE("basic torus products")
    {
        Backend B = Backend::torus();
        auto v = [&](const char* s) { return parse_function(s, B); };
        FunSeries zp = B.star(v("z"), v("p"), 3);
        CHECK(zp[0] == v("z*p"));
        CHECK(zp[1] == v("z"));
        CHECK(zp[2].is_zero());
        CHECK(B.star(v("p"), v("z"), 3) == FunSeries::constant(v("z*p"), 3));
        FunSeries Jw = B.star(v("J"), v("w"), 3);
        CHECK(Jw[1] == v("w"));
        // right multiplication by J is undeformed
        CHECK(B.star(v("z^2*w*p*J"), v("J"), 3) == FunSeries::constant(v("z^2*w*p*J^2"), 3));
    }

    TEST_CASE("flat star pairs position with momentum")
    {
        Backend B = Backend::flat(2, 1);
        auto v = [&](const char* s) { return parse_function(s, B); };
        FunSeries xp = B.star(v("x1"), v("p1"), 2);
        CHECK(xp[1] == PhaseFunction(Scalar(0, -1)));
        FunSeries px = B.star(v("p1"), v("x1"), 2);
        CHECK(px[1].is_zero());
        Backend W = Backend::flat(2, 1, true);
        FunSeries wxp = W.star(v("x1"), v("p1"), 2), wpx = W.star(v("p1"), v("x1"), 2);
        CHECK(wxp[1] == -wpx[1]);
        CHECK(wxp[1] - wpx[1] == PhaseFunction(Scalar(0, -1)));
    }

    TEST_CASE("Poisson bracket conventions")
    {
        Backend B = Backend::torus();
        auto v = [&](const char* s) { return parse_function(s, B); };
        // {J, f} = -d/dpsi f and {p, f} = d/dphi f
        CHECK(B.poisson(v("J"), v("w^2*z")) == v("w^2*z") * Scalar(0, -2));
        CHECK(B.poisson(v("p"), v("z^3")) == v("z^3") * Scalar(0, 3));
        CHECK(B.lie_classical(0, v("w*p")) == v("w*p") * Scalar(0, -1));
    }

    TEST_CASE("perturbed torus conjugates by exp(lambda p d/dJ)")
    {
        Backend B = Backend::torus_perturbed(parse_function("p", Backend::torus()));
        auto v = [&](const char* s) { return parse_function(s, B); };
        FunSeries J = FunSeries::constant(v("J"), 3);
        FunSeries sJ = B.apply_s(J, 1);
        CHECK(sJ[0] == v("J"));
        CHECK(sJ[1] == v("p"));
        CHECK(B.apply_s(sJ, -1) == J);
        CHECK_FALSE(B.strongly_invariant());
        CHECK_THROWS_AS(Backend::torus_perturbed(parse_function("z", Backend::torus())), ConfigError);
    }

    TEST_CASE("spec strings")
    {
        CHECK(Backend::from_spec("flat:3,2", 2).momenta() == 2);
        CHECK(Backend::from_spec("point", 3).point());
        CHECK_THROWS_AS(Backend::from_spec("flat:2,3", 3), ConfigError);
        CHECK_THROWS_AS(Backend::from_spec("sphere", 1), ConfigError);
        CHECK_THROWS_AS(Context::from_specs("su2", "torus"), ConfigError);
        CHECK_THROWS_AS(Context(LieAlgebra::abelian(2), Backend::torus()), ConfigError);
    }
}

TEST_SUITE("parser")
{
    TEST_CASE("round trip through the printer")
    {
        for (const char* be : {"torus", "flat:2,1", "flat:2,2"}) {
            Context ctx = Context::from_specs("", be);
            FieldSampler rng(ctx, 9);
            for (int t = 0; t < 100; ++t) {
                SuperField x = rng.field(3, 4);
                CHECK(parse_field(ctx.str(x), ctx.backend(), 3) == x);
            }
        }
    }

    TEST_CASE("grammar")
    {
        Backend B = Backend::torus();
        CHECK(parse_function("(z + w)^2", B) == parse_function("z^2 + 2*z*w + w^2", B));
        CHECK(parse_function("z^-1*z", B) == PhaseFunction(Scalar(1)));
        CHECK(parse_function("3/4*i*p", B) == parse_function("p", B) * Scalar(mpq_class(0), mpq_class(3, 4)));
        CHECK(parse_function("-p + p", B).is_zero());
        CHECK_THROWS_AS(parse_function("p^-1", B), ParseError);
        CHECK_THROWS_AS(parse_function("q", B), ParseError);
        CHECK_THROWS_AS(parse_function("e^1*z", B), ParseError);
        CHECK_THROWS_AS(parse_field("e^2*z", B, 2), ParseError);
        CHECK_THROWS_AS(parse_field("(z", B, 2), ParseError);
        SuperField f = parse_field("e^1^e_1*z", B, 2);
        CHECK(f.coeff(GhostWord{1u, 1u}) == FunSeries::constant(parse_function("z", B), 2));
        CHECK(parse_field("e_1^e^1", B, 2) == parse_field("-e^1^e_1", B, 2));
    }

    TEST_CASE("lambda powers")
    {
        Backend B = Backend::torus();
        FunSeries s = parse_field("z + lambda^2*(p - 1) + lambda*lambda*i", B, 3).coeff(GhostWord{});
        CHECK(s[0] == parse_function("z", B));
        CHECK(s[1].is_zero());
        CHECK(s[2] == parse_function("p - 1 + i", B));
        CHECK(s[3].is_zero());
        // powers beyond the truncation order are dropped
        CHECK(parse_field("lambda^3*z + 1", B, 2) == parse_field("1", B, 2));
        CHECK_THROWS_AS(parse_function("lambda*z", B), ParseError);
        CHECK_THROWS_AS(parse_function("lambdaz", B), ParseError);
    }
}
