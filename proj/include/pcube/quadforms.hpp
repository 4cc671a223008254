#pragma once

// Quadratic forms in at most three variables over F_p, p odd, up to congruence
// Q -> A^T Q A. Forms are stored as symmetric matrices; the cross term
// y_i y_j contributes 1/2 to entries (i,j) and (j,i).

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace pcube::quadforms {

using Matrix3 = std::array<std::array<std::int64_t, 3>, 3>;

enum class DiscClass { Undefined, Square, Nonsquare };

struct QuadForm {
    int n = 0;
    std::int64_t p = 0;
    Matrix3 m{}; ///< only the leading n x n block is used; entries reduced mod p

    /// sq[i] is the coefficient of y_i^2, cross[(i,j)] of y_i y_j (i < j), in the
    /// order (0,1), (0,2), (1,2).
    static QuadForm from_polynomial(std::int64_t p, int n, const std::vector<std::int64_t>& sq,
                                    const std::vector<std::int64_t>& cross = {});
    static QuadForm from_matrix(std::int64_t p, int n, const Matrix3& m);

    /// Coefficient of y_i y_j in the polynomial (i <= j).
    std::int64_t coefficient(int i, int j) const;

    /// "y1^2 + 2*y1y2", with a configurable variable stem.
    std::string to_string(const std::string& var = "y") const;

    friend bool operator==(const QuadForm& a, const QuadForm& b);
};

struct CongruenceInvariant {
    int rank = 0;
    DiscClass disc = DiscClass::Undefined;
    friend bool operator==(const CongruenceInvariant&, const CongruenceInvariant&) = default;
};

std::string to_string(DiscClass d);

/// A^T Q A for an n x n matrix A.
QuadForm transform(const QuadForm& q, const Matrix3& a);

/// Diagonal entries after symmetric Gaussian elimination (length n, zeros last).
std::vector<std::int64_t> diagonalize(const QuadForm& q);

CongruenceInvariant congruence_invariant(const QuadForm& q);

/// Throws std::invalid_argument on a dimension or prime mismatch.
bool are_congruent(const QuadForm& a, const QuadForm& b);

/// 0, y1^2, g y1^2, y1^2 + y2^2, g y1^2 + y2^2, ... (2n + 1 forms).
std::vector<QuadForm> representatives(int n, std::int64_t p);

/// The h in {1, g} for which h z1^2 + z2^2 is not congruent to z1 z2.
std::int64_t select_h(std::int64_t p);

} // namespace pcube::quadforms
