// Acceptance harness: one PASS/FAIL line per criterion. Exit status 1 if any
// criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "pcube/graded_ring.hpp"
#include "pcube/groups.hpp"
#include "pcube/h4_models.hpp"
#include "pcube/lhs_morita.hpp"
#include "pcube/orbits.hpp"
#include "pcube/quadforms.hpp"

using namespace pcube;

namespace {

// Tolerances. Everything is exact; only the runtime bounds are soft limits.
constexpr double kCountsSeconds = 60.0;
constexpr double kGroupsSeconds = 30.0;
constexpr int kRandomPairs = 1000;
constexpr std::int64_t kNegativeControlPrime = 3;

struct Outcome {
    bool passed = true;
    std::string detail;
    std::vector<std::string> notes;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double x)
{
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << x;
    return os.str();
}

// ---------------------------------------------------------------- 1

bool counts_ok(std::int64_t p, const lhs::OrbitIndexes& idx, std::string* why)
{
    std::size_t total = 0;
    for (auto f : kAllFamilies) {
        const auto n = idx[static_cast<int>(f)].size();
        total += n;
        if (n != oracle::orbit_count(f, p)) {
            if (why)
                *why = std::string(family_key(f)) + " p=" + std::to_string(p) + ": " + std::to_string(n) +
                       " orbits, expected " + std::to_string(oracle::orbit_count(f, p));
            return false;
        }
    }
    if (total != static_cast<std::size_t>(6 * p + 43)) {
        if (why)
            *why = "total " + std::to_string(total);
        return false;
    }
    return true;
}

Outcome criterion1()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream totals;
    for (std::int64_t p : {3, 5, 7, 11}) {
        const auto idx = lhs::build_indexes(p);
        std::string why;
        if (!counts_ok(p, idx, &why)) {
            o.passed = false;
            o.detail = why;
            return o;
        }
        std::size_t total = 0;
        for (const auto& ix : idx)
            total += ix.size();
        totals << (p == 3 ? "" : ", ") << total;
    }
    const double s = seconds_since(t0);
    o.passed = s < kCountsSeconds;
    o.detail = "totals " + totals.str() + " in " + fixed(s) + " s";
    return o;
}

// ---------------------------------------------------------------- 2

bool morita_ok(std::int64_t p, const lhs::MoritaGraph& g, std::string* why)
{
    const auto hist = g.size_histogram;
    auto at = [&](std::size_t k) { return hist.count(k) ? hist.at(k) : 0; };
    const bool ok = g.component_count() == static_cast<std::size_t>(5 * p + 32) &&
                    g.nontrivial().size() == static_cast<std::size_t>(p + 10) &&
                    at(2) == static_cast<std::size_t>(p + 9) && at(3) == 1 && hist.rbegin()->first <= 3;
    if (!ok && why)
        *why = "p=" + std::to_string(p) + ": " + std::to_string(g.component_count()) + " components, " +
               std::to_string(g.nontrivial().size()) + " nontrivial";
    return ok;
}

Outcome criterion2()
{
    Outcome o;
    std::ostringstream os;
    for (std::int64_t p : {3, 5, 7}) {
        const auto g = lhs::morita_components(p);
        std::string why;
        if (!morita_ok(p, g, &why)) {
            o.passed = false;
            o.detail = why;
            return o;
        }
        os << (p == 3 ? "" : ", ") << g.component_count();
    }
    o.detail = "components " + os.str();
    return o;
}

// ---------------------------------------------------------------- 3

bool emitted_table_ok(std::int64_t p, const lhs::OrbitIndexes& idx, const lhs::MoritaGraph& g, std::string* why)
{
    try {
        const auto emitted = nlohmann::json::parse(lhs::emit_table(g, lhs::TableFormat::Json));
        const auto comps = lhs::components_from_json(emitted);
        return oracle::same_tables(oracle::reference_node_sets(p, idx), oracle::node_sets(comps, idx), idx, why);
    } catch (const std::exception& e) {
        if (why)
            *why = e.what();
        return false;
    }
}

Outcome criterion3()
{
    Outcome o;
    for (std::int64_t p : {3, 5}) {
        const auto idx = lhs::build_indexes(p);
        const auto g = lhs::morita_components(idx, lhs::all_morita_edges(p));
        std::string why;
        if (!emitted_table_ok(p, idx, g, &why)) {
            o.passed = false;
            o.detail = "p=" + std::to_string(p) + ": " + why;
            return o;
        }
    }
    o.detail = "13 and 15 rows";
    return o;
}

// ---------------------------------------------------------------- 4

Outcome criterion4()
{
    Outcome o;
    for (std::int64_t p : {3, 5, 7}) {
        const auto idx = orbits::enumerate_orbits(h4::h4_model(Family::P2xP, p), h4::action_generators(Family::P2xP, p));
        std::multiset<std::uint64_t> got, want;
        std::uint64_t sum = 0, listed = 0;
        for (const auto& orb : idx.orbits()) {
            got.insert(orb.size);
            sum += orb.size;
        }
        for (const auto& [mult, size] : reference::p2xp_orbit_sizes(p))
            for (int i = 0; i < mult; ++i) {
                want.insert(size);
                listed += size;
            }
        const auto p4 = static_cast<std::uint64_t>(p * p * p * p);
        if (got != want || sum != p4 || listed != p4) {
            o.passed = false;
            o.detail = "p=" + std::to_string(p) + ": multiset differs or sum " + std::to_string(sum) + " != p^4";
            return o;
        }
    }
    o.detail = "p = 3, 5, 7";
    return o;
}

// ---------------------------------------------------------------- 5

Outcome criterion5()
{
    using namespace quadforms;
    Outcome o;
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
            if (seen.size() != static_cast<std::size_t>(2 * n + 1) ||
                representatives(n, p).size() != static_cast<std::size_t>(2 * n + 1)) {
                o.passed = false;
                o.detail = "n=" + std::to_string(n) + " p=" + std::to_string(p) + ": " + std::to_string(seen.size()) +
                           " classes";
                return o;
            }
        }

    std::size_t pairs = 0;
    for (std::int64_t p : {3, 5}) {
        std::vector<QuadForm> forms;
        for (std::int64_t a = 0; a < p; ++a)
            for (std::int64_t b = 0; b < p; ++b)
                for (std::int64_t c = 0; c < p; ++c)
                    forms.push_back(QuadForm::from_matrix(p, 2, Matrix3{{{a, b, 0}, {b, c, 0}, {0, 0, 0}}}));
        for (const auto& a : forms)
            for (const auto& b : forms) {
                ++pairs;
                if (are_congruent(a, b) != oracle::congruent_by_search(a, b)) {
                    o.passed = false;
                    o.detail = "n=2 p=" + std::to_string(p) + ": " + a.to_string() + " vs " + b.to_string();
                    return o;
                }
            }
    }

    std::mt19937_64 rng(20261015);
    for (std::int64_t p : {3, 5, 7}) {
        const oracle::CongruenceOrbits flood(3, p);
        const auto states = static_cast<std::uint64_t>(p * p * p * p * p * p);
        for (int t = 0; t < kRandomPairs; ++t) {
            const auto a = flood.decode(rng() % states);
            const auto b = flood.decode(rng() % states);
            if (are_congruent(a, b) != flood.congruent(a, b)) {
                o.passed = false;
                o.detail = "n=3 p=" + std::to_string(p) + ": " + a.to_string() + " vs " + b.to_string();
                return o;
            }
        }
    }

    if (select_h(3) != 1 || select_h(5) != 2) {
        o.passed = false;
        o.detail = "select_h(3) = " + std::to_string(select_h(3)) + ", select_h(5) = " + std::to_string(select_h(5));
        return o;
    }
    o.detail = std::to_string(pairs) + " exhaustive pairs, " + std::to_string(3 * kRandomPairs) + " sampled pairs, h = 1, 2";
    return o;
}

// ---------------------------------------------------------------- 6

Outcome criterion6()
{
    Outcome o;
    const auto checks = ring::verify_identity_suite(3);
    std::size_t failed = 0;
    for (const auto& c : checks)
        if (!c.passed) {
            ++failed;
            o.notes.push_back(c.section + ": " + c.name + " [" + c.detail + "]");
        }
    o.passed = failed == 0 && checks.size() >= 12;
    o.detail = std::to_string(checks.size()) + " identities, " + std::to_string(failed) + " failed";
    return o;
}

// ---------------------------------------------------------------- 7

Outcome criterion7()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<groups::GroupTable> gs;
    for (auto f : kAllFamilies)
        gs.push_back(groups::build_group(f, 3));

    for (std::size_t i = 0; i < gs.size(); ++i)
        for (std::size_t j = i + 1; j < gs.size(); ++j)
            if (groups::are_isomorphic(gs[i], gs[j])) {
                o.passed = false;
                o.notes.push_back(std::string(family_key(gs[i].family())) + " ~ " + std::string(family_key(gs[j].family())));
            }

    const std::size_t expected_aut[] = {18, 108, 11232, 432, 54};
    std::ostringstream auts;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        const auto n = groups::count_automorphisms(gs[i]);
        auts << (i ? "/" : "") << n;
        if (n != expected_aut[i])
            o.passed = false;
    }

    const auto& h = gs[static_cast<int>(Family::Heisenberg)];
    if (groups::center(h) != groups::subgroup_closure(h, {h.gen("C")})) {
        o.passed = false;
        o.notes.push_back("center of H_3 is not <C>");
    }

    for (auto f : kAllFamilies) {
        std::multiset<std::pair<std::vector<std::int64_t>, std::size_t>> got, want;
        for (const auto& c : groups::normal_abelian_subgroup_classes(gs[static_cast<int>(f)]))
            got.insert({c.isomorphism_type, c.members.size()});
        for (const auto& r : reference::subgroup_classes(f, 3))
            want.insert({r.type, r.members});
        if (got != want) {
            o.passed = false;
            o.notes.push_back(std::string(family_key(f)) + ": subgroup classes differ");
        }
    }
    const double s = seconds_since(t0);
    if (s >= kGroupsSeconds)
        o.passed = false;
    o.detail = "|Aut| " + auts.str() + ", " + fixed(s) + " s";
    return o;
}

// ---------------------------------------------------------------- 8

Outcome criterion8()
{
    Outcome o;
    std::size_t n = 0;
    for (auto f : kAllFamilies)
        for (const auto& c : h4::check_automorphism_images(f, 3)) {
            ++n;
            if (!c.passed) {
                o.passed = false;
                o.notes.push_back(c.section + ": " + c.name + " [" + c.detail + "]");
            }
        }
    o.detail = std::to_string(n) + " containment checks";
    return o;
}

// ---------------------------------------------------------------- 9

// Every single-entry corruption of every generator at p = 3, each judged by
// criteria 1-3 at that prime.
Outcome criterion9()
{
    Outcome o;
    const std::int64_t p = kNegativeControlPrime;
    const auto edges = lhs::all_morita_edges(p);
    std::size_t total = 0, detected = 0, in_group = 0, same_partition = 0;
    for (auto f : kAllFamilies) {
        const auto model = h4::h4_model(f, p);
        const auto gens = h4::action_generators(f, p);
        std::vector<h4::Matrix> mats;
        for (const auto& g : gens)
            mats.push_back(g.matrix);
        const auto group = h4::generated_group(model, mats, 5'000'000);
        const auto clean = orbits::enumerate_orbits(model, gens);
        for (std::size_t gi = 0; gi < gens.size(); ++gi)
            for (std::size_t r = 0; r < model.dim(); ++r)
                for (std::size_t c = 0; c < model.dim(); ++c) {
                    ++total;
                    auto bad = gens;
                    bad[gi].matrix = h4::corrupt_entry(model, bad[gi].matrix, r, c);
                    const auto idx = lhs::build_indexes(p, {}, {{f, bad}});
                    const auto g = lhs::morita_components(idx, edges);
                    const bool fails = !counts_ok(p, idx, nullptr) || !morita_ok(p, g, nullptr) ||
                                       !emitted_table_ok(p, idx, g, nullptr);
                    if (fails) {
                        ++detected;
                        continue;
                    }
                    const auto& ix = idx[static_cast<int>(f)];
                    bool partition = ix.size() == clean.size();
                    for (std::uint64_t k = 0; partition && k < model.total_order(); ++k)
                        partition = ix.orbit_id(k) == clean.orbit_id(k);
                    const bool member = group.count(h4::reduce(model, bad[gi].matrix)) > 0;
                    in_group += member ? 1 : 0;
                    same_partition += partition ? 1 : 0;
                    o.notes.push_back(std::string(family_key(f)) + " " + gens[gi].name + " entry (" + std::to_string(r) +
                                      "," + std::to_string(c) + "): " +
                                      (member      ? "corrupted matrix lies in the generated group"
                                       : partition ? "orbit partition unchanged"
                                                   : "partition changed, criteria 1-3 unchanged"));
                }
    }
    o.passed = detected == total;
    o.detail = std::to_string(detected) + " of " + std::to_string(total) + " corruptions at p=" + std::to_string(p) +
               " detected; undetected: " + std::to_string(in_group) + " inside the generated group, " +
               std::to_string(same_partition) + " with the same orbit partition";
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"orbit counts p = 3, 5, 7, 11", criterion1},
        {"Morita component counts p = 3, 5, 7", criterion2},
        {"merged tables p = 3, 5", criterion3},
        {"P2xP orbit-size multiset", criterion4},
        {"quadratic forms", criterion5},
        {"symbolic identity suite", criterion6},
        {"group oracles p = 3", criterion7},
        {"Aut(G) images in the generated group", criterion8},
        {"negative control", criterion9},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += o.passed ? 0 : 1;
        std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ["
                  << o.detail << "]\n";
        for (const auto& n : o.notes)
            std::cout << "    " << n << "\n";
        std::cout.flush();
    }
    std::cout << criteria.size() - static_cast<std::size_t>(failed) << " of " << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
