#include "brstlab/grassmann.hpp"

#include "oracles.hpp"

#include <doctest.h>
#include <random>

using namespace brst;

namespace {

std::vector<GhostWord> all_words(int n)
{
    std::vector<GhostWord> out;
    for (uint32_t g = 0; g < (1u << n); ++g)
        for (uint32_t a = 0; a < (1u << n); ++a)
            out.push_back(GhostWord{g, a});
    return out;
}

GrassElement word_el(GhostWord w, int order, Scalar c = Scalar(1))
{
    return GrassElement::term(w, ScalarSeries::constant(c, order));
}

GrassElement lam(int power, int order, Scalar c = Scalar(1))
{
    return GrassElement::term(GhostWord{}, ScalarSeries::monomial(c, power, order));
}

GrassElement random_grass(std::mt19937_64& rng, int n, int order)
{
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<uint32_t> bits(0, (1u << n) - 1);
    GrassElement x(order);
    for (int t = 0; t < 3; ++t)
        x.add(GhostWord{bits(rng), bits(rng)}, ScalarSeries::constant(Scalar(coef(rng), coef(rng)), order));
    return x;
}

} // namespace

TEST_SUITE("grassmann")
{
    TEST_CASE("wedge signs agree with counting inversions")
    {
        for (GhostWord x : all_words(3))
            for (GhostWord y : all_words(3)) {
                SignedWord s = wedge(x, y);
                int expect = oracle::wedge_sign(x, y);
                CHECK(s.sign == expect);
                if (expect != 0) {
                    CHECK(s.w.g == (x.g | y.g));
                    CHECK(s.w.a == (x.a | y.a));
                }
            }
    }

    TEST_CASE("left insertion removes the dual letter with the sign of its position")
    {
        for (GhostWord w : all_words(3))
            for (int a = 0; a < 3; ++a)
                for (bool gh : {true, false}) {
                    // i(e_a) removes ghost a, i(e^a) removes antighost a
                    Gen v{gh, a};
                    const int letter = gh ? 32 + a : a;
                    std::vector<int> ls = oracle::letters(w);
                    auto it = std::find(ls.begin(), ls.end(), letter);
                    SignedWord s = insert_left(v, w);
                    if (it == ls.end()) {
                        CHECK(s.sign == 0);
                        continue;
                    }
                    int pos = static_cast<int>(it - ls.begin());
                    CHECK(s.sign == ((pos % 2) ? -1 : 1));
                    int after = static_cast<int>(ls.size()) - 1 - pos;
                    CHECK(insert_right(v, w).sign == ((after % 2) ? -1 : 1));
                }
    }

    TEST_CASE("clifford relations on one generator")
    {
        // e^1 o e_1 = e^1 e_1 + 2 i kappa lambda, e_1 o e^1 = -e^1 e_1 + 2 i (1 - kappa) lambda
        const int N = 3;
        GrassElement up = word_el(GhostWord{1u, 0u}, N), down = word_el(GhostWord{0u, 1u}, N);
        GrassElement both = word_el(GhostWord{1u, 1u}, N);
        for (Scalar k : {Scalar(0), Scalar::frac(1, 4), Scalar::frac(1, 2), Scalar(1)}) {
            CHECK(cliff_kappa(up, down, k) == both + lam(1, N, Scalar(0, 2) * k));
            CHECK(cliff_kappa(down, up, k) == -both + lam(1, N, Scalar(0, 2) * (Scalar(1) - k)));
            CHECK(cliff_kappa(up, up, k).is_zero());
            CHECK(cliff_kappa(down, down, k).is_zero());
            // anticommutator is 2 i lambda for every ordering
            CHECK(cliff_kappa(up, down, k) + cliff_kappa(down, up, k) == lam(1, N, Scalar(0, 2)));
        }
    }

    TEST_CASE("super Poisson bracket of the generators is twice the pairing")
    {
        const int N = 1;
        GrassElement up = word_el(GhostWord{0b10u, 0u}, N), down = word_el(GhostWord{0u, 0b10u}, N);
        GrassElement other = word_el(GhostWord{0u, 0b01u}, N);
        CHECK(grass_poisson(up, down) == lam(0, N, Scalar(2)));
        CHECK(grass_poisson(down, up) == lam(0, N, Scalar(2)));
        CHECK(grass_poisson(up, other).is_zero());
    }

    TEST_CASE("laplacian on e^1 e_1 is -1")
    {
        GrassElement both = word_el(GhostWord{1u, 1u}, 2);
        CHECK(super_laplacian(both, 1) == lam(0, 2, Scalar(-1)));
        CHECK(s_kappa(both, Scalar::frac(1, 2), 1) == both + lam(1, 2, Scalar(0, -1)));
    }

    TEST_CASE("clifford product is associative and deforms the wedge product")
    {
        std::mt19937_64 rng(7);
        for (int n : {1, 2, 3})
            for (Scalar k : {Scalar(0), Scalar::frac(1, 4), Scalar::frac(1, 2), Scalar(1)})
                for (int t = 0; t < 30; ++t) {
                    GrassElement a = random_grass(rng, n, 4), b = random_grass(rng, n, 4), c = random_grass(rng, n, 4);
                    CHECK(cliff_kappa(cliff_kappa(a, b, k), c, k) == cliff_kappa(a, cliff_kappa(b, c, k), k));
                    GrassElement prod = cliff_kappa(a, b, k);
                    GrassElement diff = prod - wedge(a, b);
                    for (const auto& [word, s] : diff.terms())
                        CHECK(s[0].is_zero());
                }
    }

    TEST_CASE("word parser round trip")
    {
        for (GhostWord w : all_words(3)) {
            SignedWord s = parse_word(word_str(w));
            CHECK(s.sign == 1);
            CHECK(s.w == w);
        }
        SignedWord rev = parse_word("e_1^e^1");
        CHECK(rev.sign == -1);
        CHECK(parse_word("e^1^e^1").sign == 0);
    }

    TEST_CASE("gamma counts ghost number under the bracket")
    {
        std::mt19937_64 rng(2);
        const int n = 2;
        GrassElement g = gamma_element(n, 1);
        for (int t = 0; t < 20; ++t) {
            GrassElement x = random_grass(rng, n, 1);
            GrassElement expect(1);
            for (const auto& [w, s] : x.terms())
                expect.add(w, s, Scalar(w.ghost_number()));
            CHECK(grass_poisson(g, x) == expect);
        }
    }
}
