#include "pcube/orbits.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace pcube::orbits {

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
constexpr std::size_t kBatch = 512;

} // namespace

std::uint64_t OrbitIndex::encode(const std::vector<std::int64_t>& coeffs) const
{
    if (coeffs.size() != model_.dim())
        throw std::invalid_argument("encode: wrong number of coefficients");
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] < 0 || coeffs[i] >= model_.moduli[i])
            throw std::invalid_argument("encode: coefficient not reduced");
        code += static_cast<std::uint64_t>(coeffs[i]) * radix_[i];
    }
    return code;
}

std::vector<std::int64_t> OrbitIndex::decode(std::uint64_t code) const
{
    std::vector<std::int64_t> c(model_.dim());
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = static_cast<std::int64_t>(code / radix_[i]);
        code %= radix_[i];
    }
    return c;
}

std::uint32_t OrbitIndex::id_of(const h4::CohClass& c) const
{
    if (c.family != model_.family || c.p != model_.p)
        throw std::invalid_argument("orbit_of: class belongs to " + family_display(c.family, c.p) + ", index is for " +
                                    family_display(model_.family, model_.p));
    return ids_.at(encode(c.coeffs));
}

h4::CohClass OrbitIndex::canonical(const h4::CohClass& c) const { return representative(id_of(c)); }

h4::CohClass OrbitIndex::representative(std::uint32_t id) const
{
    return {model_.family, model_.p, orbits_.at(id).representative};
}

std::string OrbitIndex::label(std::uint32_t id) const
{
    const auto& o = orbits_.at(id);
    const std::string s = h4::render(model_, o.representative);
    return o.size == 1 ? "{" + s + "}" : "O(" + s + ")";
}

OrbitIndex enumerate_orbits(const h4::H4Model& model, const std::vector<h4::ActionGenerator>& gens,
                            const EnumerateOptions& opts)
{
    const std::uint64_t total = model.total_order();
    if (total > opts.max_states)
        throw std::length_error("enumerate_orbits: " + std::to_string(total) + " states exceed the bound " +
                                std::to_string(opts.max_states));
    if (total >= kUnset)
        throw std::length_error("enumerate_orbits: state space does not fit 32-bit codes");

    OrbitIndex idx;
    idx.model_ = model;
    idx.radix_.assign(model.dim(), 1);
    for (std::size_t i = model.dim(); i-- > 1;)
        idx.radix_[i - 1] = idx.radix_[i] * static_cast<std::uint64_t>(model.moduli[i]);
    idx.ids_.assign(total, kUnset);

    std::vector<kernel::Plan> plans;
    for (const auto& g : gens) {
        if (!h4::is_well_defined(model, g.matrix))
            throw std::invalid_argument("enumerate_orbits: generator " + g.name + " is not well defined");
        plans.push_back(kernel::make_plan(model, g.matrix));
    }
    const kernel::ImageFn image = kernel::select(opts.backend);

    const std::size_t d = model.dim();
    std::vector<std::uint32_t> queue;
    std::vector<std::int32_t> coords(d * kBatch);
    std::vector<std::uint32_t> images(kBatch);

    for (std::uint64_t start = 0; start < total; ++start) {
        if (idx.ids_[start] != kUnset)
            continue;
        const auto id = static_cast<std::uint32_t>(idx.orbits_.size());
        std::uint64_t size = 1;
        idx.ids_[start] = id;
        queue.assign(1, static_cast<std::uint32_t>(start));
        std::size_t head = 0;
        while (head < queue.size()) {
            const std::size_t n = std::min(kBatch, queue.size() - head);
            for (std::size_t k = 0; k < n; ++k) {
                std::uint64_t code = queue[head + k];
                for (std::size_t i = 0; i < d; ++i) {
                    coords[i * kBatch + k] = static_cast<std::int32_t>(code / idx.radix_[i]);
                    code %= idx.radix_[i];
                }
            }
            head += n;
            for (const auto& plan : plans) {
                image(plan, coords.data(), kBatch, n, images.data());
                for (std::size_t k = 0; k < n; ++k) {
                    const std::uint32_t y = images[k];
                    if (idx.ids_[y] == kUnset) {
                        idx.ids_[y] = id;
                        queue.push_back(y);
                        ++size;
                    }
                }
            }
            // keep the queue from growing without bound on large orbits
            if (head > (1u << 20) && head * 2 > queue.size()) {
                queue.erase(queue.begin(), queue.begin() + static_cast<std::ptrdiff_t>(head));
                head = 0;
            }
        }
        idx.orbits_.push_back({idx.decode(start), size});
    }
    return idx;
}

std::size_t expected_orbit_count(Family f, std::int64_t p)
{
    switch (f) {
    case Family::Cyclic: return 7;
    case Family::P2xP: return 16;
    case Family::ElemAbelian: return static_cast<std::size_t>(p + 11);
    case Family::Heisenberg: return static_cast<std::size_t>(2 * p + 9);
    case Family::Gp: return static_cast<std::size_t>(3 * p);
    }
    return 0;
}

std::size_t OrbitCounts::total() const
{
    std::size_t t = 0;
    for (auto c : counts)
        t += c;
    return t;
}

OrbitCounts orbit_counts(std::int64_t p, const EnumerateOptions& opts)
{
    OrbitCounts out;
    out.p = p;
    for (Family f : kAllFamilies)
        out.counts[static_cast<std::size_t>(f)] =
            enumerate_orbits(h4::h4_model(f, p), h4::action_generators(f, p), opts).size();
    return out;
}

namespace {

std::string join_coeffs(const std::vector<std::int64_t>& c)
{
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i)
        s += (i ? " " : "") + std::to_string(c[i]);
    return s;
}

} // namespace

void write_csv(std::ostream& os, const OrbitIndex& idx, bool header)
{
    if (header)
        os << "family,p,representative,label,size\n";
    for (std::uint32_t i = 0; i < idx.size(); ++i) {
        const auto& o = idx.orbits()[i];
        os << family_key(idx.model().family) << ',' << idx.model().p << ",\"" << join_coeffs(o.representative)
           << "\",\"" << h4::render(idx.model(), o.representative) << "\"," << o.size << '\n';
    }
}

nlohmann::json to_json(const OrbitIndex& idx)
{
    nlohmann::json model;
    h4::to_json(model, idx.model());
    nlohmann::json rows = nlohmann::json::array();
    for (std::uint32_t i = 0; i < idx.size(); ++i) {
        const auto& o = idx.orbits()[i];
        rows.push_back({{"family", std::string(family_key(idx.model().family))},
                        {"p", idx.model().p},
                        {"representative", o.representative},
                        {"label", h4::render(idx.model(), o.representative)},
                        {"size", o.size}});
    }
    return {{"model", model}, {"orbits", rows}};
}

} // namespace pcube::orbits
