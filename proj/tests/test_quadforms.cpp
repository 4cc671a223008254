#include <random>
#include <set>

#include "doctest.h"

#include "oracles.hpp"
#include "pcube/quadforms.hpp"

using namespace pcube;
using namespace pcube::quadforms;

namespace {

QuadForm random_form(int n, std::int64_t p, std::mt19937_64& rng)
{
    Matrix3 m{};
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            m[i][j] = m[j][i] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
    return QuadForm::from_matrix(p, n, m);
}

Matrix3 random_invertible(int n, std::int64_t p, std::mt19937_64& rng)
{
    for (;;) {
        Matrix3 a{};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                a[i][j] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
        if (oracle::det(a, n, p) != 0)
            return a;
    }
}

} // namespace

TEST_CASE("polynomial and matrix forms agree")
{
    const auto q = QuadForm::from_polynomial(5, 2, {0, 0}, {1});
    CHECK(q.coefficient(0, 1) == 1);
    CHECK(q.m[0][1] == 3); // 1/2 mod 5
    CHECK(q.to_string("z") == "z1z2");
}

TEST_CASE("exactly 2n+1 invariant classes among all forms, n <= 3, p <= 13")
{
    for (int n = 1; n <= 3; ++n)
        for (std::int64_t p : {3, 5, 7, 11, 13}) {
            std::set<std::pair<int, int>> seen;
            const int k = n * (n + 1) / 2;
            std::int64_t total = 1;
            for (int i = 0; i < k; ++i)
                total *= p;
            for (std::int64_t code = 0; code < total; ++code) {
                Matrix3 m{};
                std::int64_t c = code;
                for (int i = 0; i < n; ++i)
                    for (int j = i; j < n; ++j) {
                        m[i][j] = m[j][i] = c % p;
                        c /= p;
                    }
                const auto inv = congruence_invariant(QuadForm::from_matrix(p, n, m));
                seen.insert({inv.rank, static_cast<int>(inv.disc)});
            }
            INFO("n=" << n << " p=" << p);
            CHECK(seen.size() == static_cast<std::size_t>(2 * n + 1));
            CHECK(representatives(n, p).size() == static_cast<std::size_t>(2 * n + 1));
        }
}

TEST_CASE("flooding oracle also finds 2n+1 classes")
{
    for (int n = 1; n <= 3; ++n)
        for (std::int64_t p : {3, 5, 7})
            CHECK(oracle::CongruenceOrbits(n, p).classes() == 2 * n + 1);
}

TEST_CASE("representatives are pairwise non-congruent by exhaustive search")
{
    for (std::int64_t p : {3, 5}) {
        const auto reps = representatives(2, p);
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = 0; j < reps.size(); ++j)
                CHECK(oracle::congruent_by_search(reps[i], reps[j]) == (i == j));
    }
}

TEST_CASE("invariant congruence agrees with exhaustive search on all pairs, n = 2")
{
    for (std::int64_t p : {3, 5}) {
        std::vector<QuadForm> forms;
        for (std::int64_t a = 0; a < p; ++a)
            for (std::int64_t b = 0; b < p; ++b)
                for (std::int64_t c = 0; c < p; ++c)
                    forms.push_back(QuadForm::from_matrix(p, 2, Matrix3{{{a, b, 0}, {b, c, 0}, {0, 0, 0}}}));
        std::size_t agree = 0;
        for (const auto& a : forms)
            for (const auto& b : forms) {
                REQUIRE(are_congruent(a, b) == oracle::congruent_by_search(a, b));
                ++agree;
            }
        CHECK(agree == forms.size() * forms.size());
    }
}

TEST_CASE("invariant congruence agrees with the flooding oracle on random pairs, n = 3")
{
    std::mt19937_64 rng(31337);
    for (std::int64_t p : {3, 5, 7}) {
        const oracle::CongruenceOrbits orbits(3, p);
        int congruent = 0;
        for (int t = 0; t < 1000; ++t) {
            const auto a = random_form(3, p, rng);
            // half the pairs are forced congruent so both outcomes are exercised
            const auto b = (t % 2 == 0) ? transform(a, random_invertible(3, p, rng)) : random_form(3, p, rng);
            REQUIRE(are_congruent(a, b) == orbits.congruent(a, b));
            congruent += orbits.congruent(a, b) ? 1 : 0;
        }
        CHECK(congruent >= 500);
    }
}

TEST_CASE("congruence_invariant is constant on orbits")
{
    std::mt19937_64 rng(99);
    for (std::int64_t p : {3, 5, 7, 11, 13})
        for (int n = 1; n <= 3; ++n)
            for (int t = 0; t < 200; ++t) {
                const auto q = random_form(n, p, rng);
                const auto a = random_invertible(n, p, rng);
                REQUIRE(congruence_invariant(transform(q, a)) == congruence_invariant(q));
            }
}

TEST_CASE("transform matches the oracle product")
{
    std::mt19937_64 rng(5);
    const auto q = random_form(3, 7, rng);
    const auto a = random_invertible(3, 7, rng);
    CHECK(transform(q, a).m == oracle::congruence(q, a));
}

TEST_CASE("rank-0 forms have no discriminant class")
{
    CHECK(congruence_invariant(QuadForm::from_polynomial(5, 3, {0, 0, 0})).disc == DiscClass::Undefined);
    CHECK(congruence_invariant(QuadForm::from_polynomial(5, 1, {2})).disc == DiscClass::Nonsquare);
}

TEST_CASE("select_h picks the form not congruent to z1z2")
{
    CHECK(select_h(3) == 1);
    CHECK(select_h(5) == 2);
    CHECK(select_h(7) == 1);
    for (std::int64_t p : {3, 5, 7, 11, 13}) {
        const auto h = select_h(p);
        const auto hyper = QuadForm::from_polynomial(p, 2, {0, 0}, {1});
        CHECK_FALSE(are_congruent(QuadForm::from_polynomial(p, 2, {h, 1}), hyper));
    }
}

TEST_CASE("mismatched forms are rejected")
{
    CHECK_THROWS_AS(are_congruent(QuadForm::from_polynomial(3, 2, {1, 1}), QuadForm::from_polynomial(3, 3, {1, 1, 1})),
                    std::invalid_argument);
    CHECK_THROWS_AS(are_congruent(QuadForm::from_polynomial(3, 2, {1, 1}), QuadForm::from_polynomial(5, 2, {1, 1})),
                    std::invalid_argument);
}
