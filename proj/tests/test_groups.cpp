#include <algorithm>

#include "doctest.h"

#include "oracles.hpp"
#include "pcube/groups.hpp"

using namespace pcube;
using namespace pcube::groups;

TEST_CASE("tables satisfy the group axioms and have order p^3")
{
    for (std::int64_t p : {3, 5}) {
        for (auto f : kAllFamilies) {
            const auto g = build_group(f, p);
            CHECK(g.order() == p * p * p);
            CHECK(g.check_group_axioms());
            CHECK(g.is_abelian() == (f != Family::Heisenberg && f != Family::Gp));
        }
    }
}

TEST_CASE("bad primes are rejected")
{
    CHECK_THROWS_AS(build_group(Family::Cyclic, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_group(Family::Cyclic, 9), std::invalid_argument);
    CHECK_THROWS_AS(build_group(Family::Cyclic, 17), std::invalid_argument);
    CHECK_NOTHROW(build_group(Family::Cyclic, 17, 17));
}

TEST_CASE("element orders distinguish the extraspecial groups")
{
    for (std::int64_t p : {3, 5, 7}) {
        const auto h = build_group(Family::Heisenberg, p);
        const auto g = build_group(Family::Gp, p);
        int hmax = 0, gmax = 0;
        for (int x = 0; x < h.order(); ++x) {
            hmax = std::max(hmax, h.element_order(static_cast<Element>(x)));
            gmax = std::max(gmax, g.element_order(static_cast<Element>(x)));
        }
        CHECK(hmax == p);
        CHECK(gmax == p * p);
    }
}

TEST_CASE("the five groups are pairwise non-isomorphic at p = 3")
{
    std::vector<GroupTable> gs;
    for (auto f : kAllFamilies)
        gs.push_back(build_group(f, 3));
    for (std::size_t i = 0; i < gs.size(); ++i)
        for (std::size_t j = 0; j < gs.size(); ++j)
            CHECK(are_isomorphic(gs[i], gs[j]) == (i == j));
}

TEST_CASE("automorphism counts match the closed forms")
{
    for (auto f : kAllFamilies) {
        const auto g = build_group(f, 3);
        CHECK(count_automorphisms(g) == oracle::aut_order(f, 3));
    }
    CHECK(count_automorphisms(build_group(Family::Cyclic, 3)) == 18);
    CHECK(count_automorphisms(build_group(Family::P2xP, 3)) == 108);
    CHECK(count_automorphisms(build_group(Family::ElemAbelian, 3)) == 11232);
    CHECK(count_automorphisms(build_group(Family::Heisenberg, 3)) == 432);
    CHECK(count_automorphisms(build_group(Family::Gp, 3)) == 54);
    for (auto f : {Family::Cyclic, Family::P2xP, Family::Heisenberg, Family::Gp})
        CHECK(count_automorphisms(build_group(f, 5)) == oracle::aut_order(f, 5));
}

TEST_CASE("enumerated automorphisms are bijective homomorphisms closed under composition")
{
    const auto g = build_group(Family::Gp, 3);
    const auto auts = enumerate_automorphisms(g);
    REQUIRE(auts.size() == 54);
    std::set<std::vector<Element>> images;
    for (const auto& a : auts) {
        CHECK(a.is_homomorphism());
        CHECK(a.is_bijective());
        images.insert(a.image);
    }
    CHECK(images.size() == auts.size());
    for (std::size_t i = 0; i < auts.size(); i += 7)
        for (std::size_t j = 0; j < auts.size(); j += 5) {
            CHECK(images.count(compose(auts[i], auts[j]).image) == 1);
            CHECK(images.count(inverse(auts[i]).image) == 1);
        }
}

TEST_CASE("center of the Heisenberg group is generated by C")
{
    for (std::int64_t p : {3, 5}) {
        const auto h = build_group(Family::Heisenberg, p);
        CHECK(center(h) == subgroup_closure(h, {h.gen("C")}));
        const auto g = build_group(Family::Gp, p);
        CHECK(center(g) == subgroup_closure(g, {g.pow(g.gen("b"), p)}));
    }
}

TEST_CASE("normal abelian subgroup classes match the transcribed table")
{
    for (auto f : kAllFamilies) {
        const auto g = build_group(f, 3);
        const auto classes = normal_abelian_subgroup_classes(g);
        std::multiset<std::pair<std::vector<std::int64_t>, std::size_t>> got, want;
        for (const auto& c : classes) {
            got.insert({c.isomorphism_type, c.members.size()});
            CHECK(is_normal(g, c.representative));
            CHECK(is_abelian_subset(g, c.representative));
            CHECK(abelian_invariants(g, c.representative) == c.isomorphism_type);
        }
        for (const auto& r : reference::subgroup_classes(f, 3))
            want.insert({r.type, r.members});
        INFO(family_key(f));
        CHECK(got == want);
    }
}

TEST_CASE("subgroup enumeration counts")
{
    // (Z/3)^3 has 1 + 13 + 13 + 1 subgroups.
    CHECK(all_subgroups(build_group(Family::ElemAbelian, 3)).size() == 28);
    CHECK(all_subgroups(build_group(Family::Cyclic, 3)).size() == 4);
}
