#pragma once

// Finite abelian models of H^4(G, Z) for the five groups of order p^3 and the
// action of Aut(G) on them.
//
// Basis orders (fixed; canonical representatives depend on them):
//   Cyclic      [s^2]                                          moduli p^3
//   P2xP        [v^2, uv, u^2]                                 moduli p^2, p, p
//   ElemAbelian [y1^2, y2^2, y3^2, y1y2, y1y3, y2y3, b(x1x2x3)] all p
//   Heisenberg  [chi, z1^2, z2^2, z1z2], chi = t w1 w2          all p
//   Gp          [delta, gamma^2], delta = p r^2                 all p
//
// An action matrix M acts on coefficient vectors by c'_i = sum_j M_ij c_j
// (mod m_i); column j is the pullback of basis element j.

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "pcube/family.hpp"
#include "pcube/graded_ring.hpp"
#include "pcube/groups.hpp"
#include "pcube/report.hpp"

namespace pcube::h4 {

struct H4Model {
    Family family{};
    std::int64_t p = 0;
    std::vector<std::string> basis;
    std::vector<std::int64_t> moduli;

    std::size_t dim() const { return basis.size(); }
    std::uint64_t total_order() const;
};

H4Model h4_model(Family family, std::int64_t p);

/// Coefficient vector in a model, always reduced.
struct CohClass {
    Family family{};
    std::int64_t p = 0;
    std::vector<std::int64_t> coeffs;

    friend bool operator==(const CohClass&, const CohClass&) = default;
    friend auto operator<=>(const CohClass&, const CohClass&) = default;
};

CohClass make_class(const H4Model& model, std::vector<std::int64_t> coeffs);

/// Stable label grammar: terms "c*label" in basis order joined by " + ",
/// coefficient omitted when 1, "0" for the zero class. Coefficients are the
/// least non-negative residues. Example: "y1y2 + 2*b(x1x2x3)".
std::string render(const H4Model& model, const std::vector<std::int64_t>& coeffs);
std::string render(const CohClass& c);

/// Inverse of render; also accepts "-" signs, repeated labels, and the
/// aliases beta(x1x2x3), y2y1 style swaps, and t*w1*w2 for chi.
CohClass parse_class(const H4Model& model, std::string_view label);

using Matrix = std::vector<std::int64_t>; // row-major dim x dim

struct ActionGenerator {
    std::string name;                 ///< e.g. "rho(g,0,0,1)"
    std::vector<std::int64_t> params; ///< parameters of the encoded automorphism
    Matrix matrix;
};

/// Matrix of the automorphism with the given parameters, from the closed-form
/// pullback formulas:
///   Cyclic {i}; P2xP {i,j,k,l}; ElemAbelian {A00..A22} (row-major);
///   Heisenberg {a,b,c,d,e} with e the exponent of C (e = det for automorphisms); Gp {i}.
Matrix action_matrix(Family family, std::int64_t p, const std::vector<std::int64_t>& params);

std::vector<ActionGenerator> action_generators(Family family, std::int64_t p);

Matrix identity_matrix(const H4Model& model);
Matrix reduce(const H4Model& model, Matrix m);
Matrix compose(const H4Model& model, const Matrix& a, const Matrix& b); ///< a after b
std::vector<std::int64_t> apply(const H4Model& model, const Matrix& m, const std::vector<std::int64_t>& c);

/// Entries mapping a mod-m_j coordinate into a coordinate with m_i > m_j are multiples of m_i / m_j.
bool is_well_defined(const H4Model& model, const Matrix& m);
/// Invertible modulo the moduli (determinant of the reduction mod p is nonzero).
bool is_invertible(const H4Model& model, const Matrix& m);

/// Matrix group generated by `gens`; throws if it exceeds `limit` elements.
std::set<Matrix> generated_group(const H4Model& model, const std::vector<Matrix>& gens, std::size_t limit = 200000);

/// Model matrix of a brute-force automorphism (pullback on H^4).
Matrix pushforward(const groups::GroupMorphism& phi);

/// Ring presentation, basis representatives, and the symbolic pullback map of
/// an action generator, used to re-derive matrix columns.
struct SymbolicModel {
    ring::Ring ring;
    std::vector<ring::GradedElement> basis;
};
SymbolicModel symbolic_model(Family family, std::int64_t p);
ring::GeneratorMap symbolic_pullback(const SymbolicModel& sm, Family family, std::int64_t p,
                                     const std::vector<std::int64_t>& params);

/// Coordinates of a ring element in the basis of `sm`; throws std::domain_error
/// if it is not in the span.
std::vector<std::int64_t> coordinates(const SymbolicModel& sm, const H4Model& model, const ring::GradedElement& x);

/// Symbolic column-by-column comparison for every action generator.
std::vector<Check> cross_check_actions(Family family, std::int64_t p);
std::vector<Check> cross_check_actions(Family family, std::int64_t p, const std::vector<ActionGenerator>& gens);

/// Brute-force Aut(G) pushed to the model must lie in the group generated by
/// action_generators; for Heisenberg and Gp the two groups must coincide.
std::vector<Check> check_automorphism_images(Family family, std::int64_t p);

/// Perturbs entry (row, col) by the smallest step that keeps the matrix well defined.
Matrix corrupt_entry(const H4Model& model, Matrix m, std::size_t row, std::size_t col);

void to_json(nlohmann::json& j, const H4Model& m);
void to_json(nlohmann::json& j, const CohClass& c);
/// Reads {family, p, coeffs} (basis/moduli are validated when present).
CohClass class_from_json(const nlohmann::json& j);

} // namespace pcube::h4
