#include "pcube/family.hpp"

#include <algorithm>
#include <cctype>

namespace pcube {

std::string_view family_key(Family f)
{
    switch (f) {
    case Family::Cyclic: return "cyclic";
    case Family::P2xP: return "p2xp";
    case Family::ElemAbelian: return "elementary";
    case Family::Heisenberg: return "heisenberg";
    case Family::Gp: return "gp";
    }
    return "?";
}

std::string_view family_display(Family f)
{
    switch (f) {
    case Family::Cyclic: return "Z/p^3";
    case Family::P2xP: return "Z/p^2 x Z/p";
    case Family::ElemAbelian: return "(Z/p)^3";
    case Family::Heisenberg: return "H_p";
    case Family::Gp: return "G_p";
    }
    return "?";
}

std::string family_display(Family f, std::int64_t p)
{
    const std::string ps = std::to_string(p);
    switch (f) {
    case Family::Cyclic: return "Z/" + std::to_string(p * p * p);
    case Family::P2xP: return "Z/" + std::to_string(p * p) + " x Z/" + ps;
    case Family::ElemAbelian: return "(Z/" + ps + ")^3";
    case Family::Heisenberg: return "H_" + ps;
    case Family::Gp: return "G_" + ps;
    }
    return "?";
}

std::optional<Family> parse_family(std::string_view s)
{
    std::string k(s);
    std::transform(k.begin(), k.end(), k.begin(), [](unsigned char c) { return std::tolower(c); });
    if (k == "cyclic" || k == "zp3")
        return Family::Cyclic;
    if (k == "p2xp" || k == "zp2xzp")
        return Family::P2xP;
    if (k == "elementary" || k == "elem" || k == "elemabelian" || k == "zp^3")
        return Family::ElemAbelian;
    if (k == "heisenberg" || k == "h" || k == "hp")
        return Family::Heisenberg;
    if (k == "gp" || k == "g")
        return Family::Gp;
    return std::nullopt;
}

} // namespace pcube
