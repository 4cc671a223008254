#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pcube {

/// The five isomorphism classes of groups of order p^3 (p odd).
enum class Family : int {
    Cyclic = 0,      // Z/p^3
    P2xP = 1,        // Z/p^2 x Z/p
    ElemAbelian = 2, // (Z/p)^3
    Heisenberg = 3,  // extraspecial, exponent p
    Gp = 4,          // extraspecial, exponent p^2
};

inline constexpr std::array<Family, 5> kAllFamilies = {
    Family::Cyclic, Family::P2xP, Family::ElemAbelian, Family::Heisenberg, Family::Gp};

/// Stable machine name used in CLI flags, CSV and JSON.
std::string_view family_key(Family f);

/// Human-readable group name, e.g. "Z/p^2 x Z/p".
std::string_view family_display(Family f);

/// Group name at a concrete prime, e.g. "Z/9 x Z/3" for p = 3.
std::string family_display(Family f, std::int64_t p);

/// Accepts the machine name and a few aliases ("elem", "h", "g").
std::optional<Family> parse_family(std::string_view s);

} // namespace pcube
