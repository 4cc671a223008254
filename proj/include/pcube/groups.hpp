#pragma once

// Explicit multiplication tables for the five groups of order p^3, with
// brute-force automorphism, isomorphism and subgroup enumeration.
//
// Elements are normal-form exponent words mapped to dense indices:
//   Cyclic      a^x                     (x mod p^3)
//   P2xP        a^x b^y                 (a of order p^2, b of order p)
//   ElemAbelian e1^x e2^y e3^z
//   Heisenberg  A^x B^y C^z             (A B A^-1 = B C, C central)
//   Gp          b^x a^y                 (a b a^-1 = b^(p+1), b of order p^2)

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pcube/family.hpp"

namespace pcube::groups {

using Element = std::uint16_t;

inline constexpr std::int64_t kDefaultPrimeBound = 13;
inline constexpr int kBruteForceOrderBound = 343;

class GroupTable {
public:
    Family family() const { return family_; }
    std::int64_t p() const { return p_; }
    int order() const { return order_; }
    Element identity() const { return 0; }

    Element mul(Element x, Element y) const { return mul_[static_cast<std::size_t>(x) * order_ + y]; }
    Element inv(Element x) const { return inv_[x]; }
    Element pow(Element x, std::int64_t e) const;
    int element_order(Element x) const { return elem_order_[x]; }

    /// Named generators ("A", "B", "C", "a", "b", "e1", ...).
    const std::map<std::string, Element>& gen_names() const { return gen_names_; }
    Element gen(const std::string& name) const;

    /// Minimal generating set, in the fixed order used by the morphism search.
    const std::vector<Element>& generators() const { return generators_; }

    /// Labels of the normal-form letters and the exponent word of each element.
    const std::vector<std::string>& word_letters() const { return letters_; }
    const std::array<int, 3>& exponents(Element x) const { return exps_[x]; }
    Element from_exponents(const std::array<int, 3>& e) const;
    std::string word(Element x) const;

    bool is_abelian() const;

    /// Full associativity/identity/inverse check; O(n^3).
    bool check_group_axioms() const;

private:
    friend GroupTable build_group(Family, std::int64_t, std::int64_t);

    Family family_{};
    std::int64_t p_ = 0;
    int order_ = 0;
    std::vector<Element> mul_;
    std::vector<Element> inv_;
    std::vector<int> elem_order_;
    std::map<std::string, Element> gen_names_;
    std::vector<Element> generators_;
    std::vector<std::string> letters_;
    std::array<int, 3> radix_{1, 1, 1};
    std::vector<std::array<int, 3>> exps_;
};

/// Homomorphism carried as the image of every source element.
/// The referenced tables must outlive the morphism.
struct GroupMorphism {
    const GroupTable* source = nullptr;
    const GroupTable* target = nullptr;
    std::vector<Element> image;

    Element operator()(Element x) const { return image[x]; }
    bool is_homomorphism() const;
    bool is_bijective() const;
};

GroupMorphism compose(const GroupMorphism& outer, const GroupMorphism& inner);
GroupMorphism inverse(const GroupMorphism& m);

/// Builds and validates the group; throws std::invalid_argument for a bad prime.
GroupTable build_group(Family family, std::int64_t p, std::int64_t prime_bound = kDefaultPrimeBound);

std::vector<Element> center(const GroupTable& g);

/// Calls visit for every isomorphism G -> H; stops early when visit returns false.
/// Returns the number of isomorphisms visited.
std::size_t for_each_isomorphism(const GroupTable& g, const GroupTable& h,
                                 const std::function<bool(const GroupMorphism&)>& visit);

/// Complete automorphism list in deterministic order. Throws if |G| > 343.
std::vector<GroupMorphism> enumerate_automorphisms(const GroupTable& g);

/// Same search without storing; returns |Aut(G)|.
std::size_t count_automorphisms(const GroupTable& g);

bool are_isomorphic(const GroupTable& g, const GroupTable& h);

/// Subgroup generated by a set of elements, as a sorted element list.
std::vector<Element> subgroup_closure(const GroupTable& g, const std::vector<Element>& gens);

/// Every subgroup of G, each as a sorted element list, in deterministic order.
std::vector<std::vector<Element>> all_subgroups(const GroupTable& g);

bool is_normal(const GroupTable& g, const std::vector<Element>& subgroup);
bool is_abelian_subset(const GroupTable& g, const std::vector<Element>& subgroup);

/// Invariant factors (ascending prime powers) of an abelian subgroup.
std::vector<std::int64_t> abelian_invariants(const GroupTable& g, const std::vector<Element>& subgroup);

std::string describe_invariants(const std::vector<std::int64_t>& inv);

struct SubgroupClass {
    std::vector<Element> representative;
    std::vector<std::vector<Element>> members;
    std::vector<std::int64_t> isomorphism_type;
    std::string generators; // e.g. "<b^3>"
};

/// Nontrivial proper normal abelian subgroups, grouped into Aut(G)-classes.
/// Classes are ordered by (order, isomorphism type, smallest representative).
std::vector<SubgroupClass> normal_abelian_subgroup_classes(const GroupTable& g);

} // namespace pcube::groups
