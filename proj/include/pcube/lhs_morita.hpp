#pragma once

// Extension cases 1 -> A -> G -> K -> 1 with A normal abelian, the spectral
// sequence pages that feed the Omega(G;A) orders, and the Morita edges that
// merge H^4 orbits across the five groups.
//
// Case ids:
//   k_zp_a_zp2_trivial    K = Z/p,       A = Z/p^2, trivial action
//   k_zp_a_zp2_twisted    K = Z/p,       A = Z/p^2, b -> b^(p+1)
//   k_zp2_a_zp            K = Z/p^2,     A = Z/p
//   k_zp_a_zpxzp_trivial  K = Z/p,       A = Z/p x Z/p, trivial action
//   k_zpxzp_a_zp          K = Z/p x Z/p, A = Z/p
//   k_zp_a_zpxzp_twisted  K = Z/p,       A = Z/p x Z/p, (1,0) -> (1,1)
//
// Edges are instantiated from the derived equivalences; the page layer only
// validates the orders and memberships they rely on.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "pcube/family.hpp"
#include "pcube/graded_ring.hpp"
#include "pcube/h4_models.hpp"
#include "pcube/orbits.hpp"
#include "pcube/report.hpp"

namespace pcube::lhs {

struct Realization {
    Family family{};
    std::string subgroup;                      ///< A inside G, e.g. "<(1,0)>", "<B,C>"
    std::string kappa;                         ///< k-invariant as text; "0" for split extensions
    std::optional<ring::GradedElement> kappa_class; ///< symbolic k-invariant when it lives in a modelled ring
};

struct ExtensionCase {
    std::string id;
    std::string K;
    std::string A;
    std::string action; ///< "trivial" or the generator action
    std::vector<Realization> realized;

    const Realization* find(Family f) const;
};

std::vector<ExtensionCase> build_cases(std::int64_t p);
/// Throws std::invalid_argument for an unknown id.
ExtensionCase find_case(std::int64_t p, const std::string& id);

struct PageCell {
    int a = 0; ///< base degree
    int b = 0; ///< fiber degree
    std::vector<std::string> generators;
    int log_order = 0; ///< log_p of the cell order
};

/// One displayed page of one realized extension, restricted to a + b <= 5.
struct PageTable {
    std::string case_id;
    Family family{};
    int page = 2;
    bool symbolic = false; ///< generators are ring expressions checked by linear algebra
    std::vector<PageCell> cells;

    /// 0 for cells that are not listed.
    int log_order(int a, int b) const;
    /// Sum over a + b = 4.
    int h4_log() const;
};

/// Final-page tables of every realized family, in case order.
std::vector<PageTable> page_tables(std::int64_t p);

struct OmegaGroup {
    std::string case_id;
    Family family{};
    std::int64_t p = 0;
    std::vector<h4::CohClass> sub_basis;  ///< E^{4,0} side
    std::vector<h4::CohClass> quot_basis; ///< lifts of the E^{2,2} side
    int sub_log = 0;
    int log_order = 0; ///< log_p |Omega|

    bool contains(const h4::CohClass& c) const;
};

/// Throws std::invalid_argument if the family is not realized in the case.
OmegaGroup omega(const std::string& case_id, Family family, std::int64_t p);

/// Differentials applied to the page generators, kernel modulo image over F_p,
/// compared with the displayed pages; plus order and Omega consistency.
std::vector<Check> verify_pages(const std::string& case_id, std::int64_t p);

struct MoritaEdge {
    h4::CohClass a;
    h4::CohClass b;
    std::string case_id;
    std::string params; ///< e.g. "k=2"
};

enum class KReading { Units_p, Units_p2 };

/// All parametrized edges of one case. For k_zp2_a_zp the parameter k of
/// k p^2 s^2 <-> uv + k v^2 runs over (Z/p)^* or, under Units_p2, over (Z/p^2)^*.
std::vector<MoritaEdge> morita_edges(const std::string& case_id, std::int64_t p,
                                     KReading reading = KReading::Units_p);
std::vector<MoritaEdge> all_morita_edges(std::int64_t p, KReading reading = KReading::Units_p);

using OrbitIndexes = std::array<orbits::OrbitIndex, 5>; ///< indexed by Family

/// `overrides` replaces the action generators of selected families.
OrbitIndexes build_indexes(std::int64_t p, const orbits::EnumerateOptions& opts = {},
                           const std::map<Family, std::vector<h4::ActionGenerator>>& overrides = {});

struct MoritaNode {
    Family family{};
    std::uint32_t orbit = 0;
    h4::CohClass canonical;
    std::string label;
};

struct MoritaGraph {
    std::int64_t p = 0;
    std::vector<MoritaNode> nodes;
    std::vector<std::size_t> parent;
    /// Node lists, each sorted; components sorted by their smallest node.
    std::vector<std::vector<std::size_t>> components;
    std::map<std::size_t, std::size_t> size_histogram;

    std::size_t component_count() const { return components.size(); }
    std::size_t node_of(Family f, std::uint32_t orbit) const;
    std::size_t find(std::size_t x) const;
    std::size_t component_of(const h4::CohClass& c, const OrbitIndexes& idx) const;
    std::vector<std::vector<std::size_t>> nontrivial() const;
};

MoritaGraph morita_components(const OrbitIndexes& idx, const std::vector<MoritaEdge>& edges);
MoritaGraph morita_components(std::int64_t p, const orbits::EnumerateOptions& opts = {});

/// Consistency checks on the merged classes (sign reconciliation, table
/// readings, parametrized merges, alternative k reading, Omega containment).
std::vector<Check> verify_morita(std::int64_t p, const OrbitIndexes& idx);

enum class TableFormat { Markdown, Csv, Json };

/// Throws std::invalid_argument for an unknown name.
TableFormat parse_table_format(const std::string& s);

/// Rows are the nontrivial components; columns Cyclic, P2xP, ElemAbelian,
/// Heisenberg, Gp; entries are orbit labels.
std::string emit_table(const MoritaGraph& g, TableFormat format);
nlohmann::json table_json(const MoritaGraph& g);

/// Component member sets read back from table_json output.
std::vector<std::vector<h4::CohClass>> components_from_json(const nlohmann::json& j);

} // namespace pcube::lhs
