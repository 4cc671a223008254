#pragma once

// Orbits of a matrix-generated group acting on an H4 model, by BFS over the
// mixed-radix encoding of all classes. Coordinate 0 is the most significant
// digit, so the numerically smallest code of an orbit is its lexicographically
// smallest coefficient vector; scanning codes in increasing order makes the
// first unvisited code of each orbit its canonical representative.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "json.hpp"

#include "pcube/h4_models.hpp"
#include "pcube/orbit_kernel.hpp"

namespace pcube::orbits {

inline constexpr std::uint64_t kDefaultMaxStates = 100'000'000;

struct Orbit {
    std::vector<std::int64_t> representative;
    std::uint64_t size = 0;
};

struct EnumerateOptions {
    std::uint64_t max_states = kDefaultMaxStates;
    kernel::Backend backend = kernel::Backend::Auto;
};

class OrbitIndex {
public:
    const h4::H4Model& model() const { return model_; }
    const std::vector<Orbit>& orbits() const { return orbits_; }
    std::size_t size() const { return orbits_.size(); }

    std::uint64_t encode(const std::vector<std::int64_t>& coeffs) const;
    std::vector<std::int64_t> decode(std::uint64_t code) const;

    std::uint32_t orbit_id(std::uint64_t code) const { return ids_.at(code); }
    /// Orbit id of a class; throws std::invalid_argument for a class of another model.
    std::uint32_t id_of(const h4::CohClass& c) const;
    const Orbit& orbit_of(const h4::CohClass& c) const { return orbits_[id_of(c)]; }
    h4::CohClass canonical(const h4::CohClass& c) const;
    h4::CohClass representative(std::uint32_t id) const;

    /// Orbit label: "{label}" for a fixed class, otherwise "O(label)".
    std::string label(std::uint32_t id) const;

private:
    friend OrbitIndex enumerate_orbits(const h4::H4Model&, const std::vector<h4::ActionGenerator>&,
                                       const EnumerateOptions&);
    h4::H4Model model_;
    std::vector<std::uint64_t> radix_;
    std::vector<std::uint32_t> ids_;
    std::vector<Orbit> orbits_;
};

/// Throws std::length_error when the model has more than opts.max_states classes.
OrbitIndex enumerate_orbits(const h4::H4Model& model, const std::vector<h4::ActionGenerator>& gens,
                            const EnumerateOptions& opts = {});

/// Cyclic 7, P2xP 16, ElemAbelian p+11, Heisenberg 2p+9, Gp 3p.
std::size_t expected_orbit_count(Family f, std::int64_t p);

struct OrbitCounts {
    std::int64_t p = 0;
    std::array<std::size_t, 5> counts{}; ///< indexed by Family
    std::size_t total() const;
};

OrbitCounts orbit_counts(std::int64_t p, const EnumerateOptions& opts = {});

/// One row per orbit: family,p,representative,label,size.
void write_csv(std::ostream& os, const OrbitIndex& idx, bool header = true);
nlohmann::json to_json(const OrbitIndex& idx);

} // namespace pcube::orbits
