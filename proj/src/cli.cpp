#include "pcube/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "pcube/groups.hpp"
#include "pcube/h4_models.hpp"
#include "pcube/lhs_morita.hpp"
#include "pcube/modular.hpp"
#include "pcube/orbits.hpp"
#include "pcube/quadforms.hpp"

namespace pcube::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::vector<std::int64_t> primes{3};
    std::string family;
    std::string format = "md";
    std::string output;
    bool check = false;
    std::uint64_t max_states = 0; // 0: default bound
    std::string backend = "auto";
    int n = 3;
    bool which_h = false;
    std::vector<std::string> corrupt;
};

constexpr std::int64_t kPrimeBound = 13;

orbits::EnumerateOptions enumerate_options(const RunConfig& cfg)
{
    orbits::EnumerateOptions o;
    if (cfg.max_states)
        o.max_states = cfg.max_states;
    if (cfg.backend == "scalar")
        o.backend = orbits::kernel::Backend::Scalar;
    else if (cfg.backend == "avx2")
        o.backend = orbits::kernel::Backend::Avx2;
    else if (cfg.backend != "auto")
        throw UsageError("--backend must be auto, scalar or avx2");
    return o;
}

void validate_primes(const RunConfig& cfg)
{
    if (cfg.primes.empty())
        throw UsageError("no primes given");
    for (auto p : cfg.primes) {
        if (!is_odd_prime(p))
            throw UsageError("p = " + std::to_string(p) + " is not an odd prime");
        if (p > kPrimeBound && cfg.max_states == 0)
            throw UsageError("p = " + std::to_string(p) + " exceeds " + std::to_string(kPrimeBound) +
                             "; pass --max-states to raise the bound");
    }
}

std::vector<Family> families(const RunConfig& cfg)
{
    if (cfg.family.empty() || cfg.family == "all")
        return {kAllFamilies.begin(), kAllFamilies.end()};
    auto f = parse_family(cfg.family);
    if (!f)
        throw UsageError("unknown family '" + cfg.family + "'");
    return {*f};
}

// "family:gen:row:col"
std::map<Family, std::vector<h4::ActionGenerator>> corruptions(const RunConfig& cfg, std::int64_t p)
{
    std::map<Family, std::vector<h4::ActionGenerator>> out;
    for (const auto& spec : cfg.corrupt) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        for (std::string t; std::getline(ss, t, ':');)
            parts.push_back(t);
        if (parts.size() != 4)
            throw UsageError("--corrupt-action expects family:generator:row:col");
        const auto f = parse_family(parts[0]);
        if (!f)
            throw UsageError("unknown family '" + parts[0] + "'");
        std::size_t gi = 0, row = 0, col = 0;
        try {
            gi = std::stoul(parts[1]);
            row = std::stoul(parts[2]);
            col = std::stoul(parts[3]);
        } catch (const std::exception&) {
            throw UsageError("--corrupt-action: indices must be non-negative integers");
        }
        auto& gens = out.try_emplace(*f, h4::action_generators(*f, p)).first->second;
        if (gi >= gens.size())
            throw UsageError("--corrupt-action: generator index out of range");
        try {
            gens[gi].matrix = h4::corrupt_entry(h4::h4_model(*f, p), gens[gi].matrix, row, col);
        } catch (const std::out_of_range& e) {
            throw UsageError(e.what());
        }
        gens[gi].name += " (corrupted at " + parts[2] + "," + parts[3] + ")";
    }
    return out;
}

class Output {
public:
    Output(const RunConfig& cfg, std::ostream& out) : out_(out)
    {
        if (!cfg.output.empty()) {
            file_.open(cfg.output);
            if (!file_)
                throw UsageError("cannot open " + cfg.output + " for writing");
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : out_; }

private:
    std::ostream& out_;
    std::ofstream file_;
};

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed)
{
    for (const char* a : allowed)
        if (cfg.format == a)
            return;
    throw UsageError("unsupported --format '" + cfg.format + "' for " + cfg.command);
}

std::string expected_total(std::int64_t p) { return "6*" + std::to_string(p) + "+43"; }

// ---------------------------------------------------------------------------

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err, bool dump)
{
    require_format(cfg, {"md", "csv", "json"});
    const auto opts = enumerate_options(cfg);
    const auto fams = families(cfg);
    Output o(cfg, out);
    bool ok = true;
    nlohmann::json doc = nlohmann::json::array();
    bool header = true;
    for (auto p : cfg.primes) {
        const auto over = corruptions(cfg, p);
        std::size_t total = 0;
        nlohmann::json per_prime = {{"p", p}, {"families", nlohmann::json::array()}};
        for (Family f : fams) {
            const auto it = over.find(f);
            const auto idx = orbits::enumerate_orbits(h4::h4_model(f, p),
                                                      it != over.end() ? it->second : h4::action_generators(f, p), opts);
            const std::size_t want = orbits::expected_orbit_count(f, p);
            total += idx.size();
            if (idx.size() != want) {
                ok = false;
                if (cfg.check)
                    err << "check failed: " << family_key(f) << " p=" << p << ": " << idx.size() << " orbits, expected "
                        << want << '\n';
            }
            if (cfg.format == "csv") {
                orbits::write_csv(o.os(), idx, header);
                header = false;
            } else if (cfg.format == "json") {
                per_prime["families"].push_back(orbits::to_json(idx));
            } else {
                o.os() << "## " << family_display(f, p) << " (" << family_key(f) << "), p = " << p << ": " << idx.size()
                       << " orbits\n\n| # | orbit | size |\n|---|---|---|\n";
                for (std::uint32_t i = 0; i < idx.size(); ++i)
                    o.os() << "| " << i << " | " << idx.label(i) << " | " << idx.orbits()[i].size << " |\n";
                o.os() << '\n';
            }
        }
        const bool all = fams.size() == kAllFamilies.size();
        const auto want_total = static_cast<std::size_t>(6 * p + 43);
        if (all && total != want_total) {
            ok = false;
            if (cfg.check)
                err << "check failed: p=" << p << ": " << total << " orbits, expected " << want_total << '\n';
        }
        if (cfg.format == "json") {
            per_prime["total"] = total;
            doc.push_back(per_prime);
        } else if (cfg.format == "md" && all && !dump) {
            o.os() << "total orbits: " << total << (total == want_total ? " = " : " != ") << expected_total(p) << "\n\n";
        }
    }
    if (cfg.format == "json")
        o.os() << doc.dump(2) << '\n';
    return cfg.check && !ok ? kExitCheckFailed : kExitOk;
}

int cmd_morita(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const auto format = lhs::parse_table_format(cfg.format);
    const auto opts = enumerate_options(cfg);
    Output o(cfg, out);
    bool ok = true;
    nlohmann::json doc = nlohmann::json::array();
    for (auto p : cfg.primes) {
        const auto idx = lhs::build_indexes(p, opts, corruptions(cfg, p));
        const auto g = lhs::morita_components(idx, lhs::all_morita_edges(p));
        if (format == lhs::TableFormat::Json)
            doc.push_back(lhs::table_json(g));
        else
            o.os() << lhs::emit_table(g, format) << (format == lhs::TableFormat::Markdown ? "\n" : "");
        if (cfg.check) {
            for (const auto& c : lhs::verify_morita(p, idx))
                if (!c.passed) {
                    ok = false;
                    err << "check failed: p=" << p << ": " << c.name << (c.detail.empty() ? "" : " [" + c.detail + "]")
                        << '\n';
                }
        }
    }
    if (format == lhs::TableFormat::Json)
        o.os() << doc.dump(2) << '\n';
    return ok ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// verify

struct SubgroupRow {
    std::vector<std::int64_t> type;
    std::size_t members;
    auto operator<=>(const SubgroupRow&) const = default;
};

std::vector<SubgroupRow> expected_subgroup_rows(Family f, std::int64_t p)
{
    const auto q = static_cast<std::size_t>(p);
    switch (f) {
    case Family::Cyclic: return {{{p}, 1}, {{p * p}, 1}};
    case Family::P2xP: return {{{p}, 1}, {{p}, q}, {{p, p}, 1}, {{p * p}, q}};
    case Family::ElemAbelian: return {{{p}, q * q + q + 1}, {{p, p}, q * q + q + 1}};
    case Family::Heisenberg: return {{{p}, 1}, {{p, p}, q + 1}};
    case Family::Gp: return {{{p}, 1}, {{p, p}, 1}, {{p * p}, q}};
    }
    return {};
}

std::size_t expected_aut_order(Family f, std::int64_t p)
{
    const std::int64_t p3 = p * p * p;
    switch (f) {
    case Family::Cyclic: return static_cast<std::size_t>(p * p * (p - 1));
    case Family::P2xP: return static_cast<std::size_t>(p3 * (p - 1) * (p - 1));
    case Family::ElemAbelian: return static_cast<std::size_t>((p3 - 1) * (p3 - p) * (p3 - p * p));
    case Family::Heisenberg: return static_cast<std::size_t>(p3 * (p - 1) * (p - 1) * (p + 1));
    case Family::Gp: return static_cast<std::size_t>(p3 * (p - 1));
    }
    return 0;
}

void groups_section(std::int64_t p, Report& rep)
{
    const std::string sec = "groups";
    std::vector<groups::GroupTable> gs;
    for (Family f : kAllFamilies)
        gs.push_back(groups::build_group(f, p));
    for (std::size_t i = 0; i < gs.size(); ++i)
        for (std::size_t j = i + 1; j < gs.size(); ++j)
            rep.add(sec, std::string(family_key(gs[i].family())) + " and " + std::string(family_key(gs[j].family())) +
                             " are not isomorphic",
                    !groups::are_isomorphic(gs[i], gs[j]));
    for (const auto& g : gs) {
        const std::size_t n = groups::count_automorphisms(g);
        const std::size_t want = expected_aut_order(g.family(), p);
        rep.add(sec, "|Aut(" + family_display(g.family(), p) + ")| = " + std::to_string(want), n == want,
                std::to_string(n));
    }
    {
        const auto& h = gs[static_cast<std::size_t>(Family::Heisenberg)];
        const auto z = groups::center(h);
        rep.add(sec, "center of the Heisenberg group is <C>", z == groups::subgroup_closure(h, {h.gen("C")}),
                std::to_string(z.size()) + " elements");
    }
    for (const auto& g : gs) {
        std::vector<SubgroupRow> got;
        for (const auto& c : groups::normal_abelian_subgroup_classes(g))
            got.push_back({c.isomorphism_type, c.members.size()});
        auto want = expected_subgroup_rows(g.family(), p);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        std::string detail;
        for (const auto& r : got)
            detail += (detail.empty() ? "" : "; ") + groups::describe_invariants(r.type) + " x" + std::to_string(r.members);
        rep.add(sec, "normal abelian subgroup classes of " + family_display(g.family(), p), got == want, detail);
    }
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    require_format(cfg, {"md", "json"});
    const auto opts = enumerate_options(cfg);
    Report rep;
    for (auto p : cfg.primes) {
        Report r;
        const auto over = corruptions(cfg, p);
        r.append(ring::verify_identity_suite(p));
        for (Family f : kAllFamilies) {
            const auto it = over.find(f);
            r.append(it != over.end() ? h4::cross_check_actions(f, p, it->second) : h4::cross_check_actions(f, p));
        }
        if (p == 3) {
            groups_section(p, r);
            if (over.empty())
                for (Family f : kAllFamilies)
                    r.append(h4::check_automorphism_images(f, p));
        }
        for (const auto& c : lhs::build_cases(p))
            r.append(lhs::verify_pages(c.id, p));
        const auto idx = lhs::build_indexes(p, opts, over);
        std::size_t total = 0;
        for (Family f : kAllFamilies) {
            const std::size_t n = idx[static_cast<std::size_t>(f)].size();
            const std::size_t want = orbits::expected_orbit_count(f, p);
            total += n;
            r.add("counts", family_display(f, p) + ": " + std::to_string(want) + " orbits", n == want, std::to_string(n));
        }
        r.add("counts", "total = " + expected_total(p), total == static_cast<std::size_t>(6 * p + 43),
              std::to_string(total));
        r.append(lhs::verify_morita(p, idx));
        for (const auto& c : r.checks())
            rep.add("p=" + std::to_string(p) + " " + c.section, c.name, c.passed, c.detail);
    }

    Output o(cfg, out);
    if (cfg.format == "json") {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : rep.checks())
            checks.push_back({{"section", c.section}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        o.os() << nlohmann::json{{"checks", checks}, {"failures", rep.failures()}}.dump(2) << '\n';
    } else {
        for (const auto& c : rep.checks())
            o.os() << (c.passed ? "PASS " : "FAIL ") << c.section << ": " << c.name
                   << (c.detail.empty() ? "" : " [" + c.detail + "]") << '\n';
        o.os() << rep.size() << " checks, " << rep.failures() << " failed\n";
    }
    for (const auto& c : rep.checks())
        if (!c.passed)
            err << "check failed: " << c.section << ": " << c.name << '\n';
    return rep.all_passed() ? kExitOk : kExitCheckFailed;
}

int cmd_quadforms(const RunConfig& cfg, std::ostream& out)
{
    require_format(cfg, {"md", "csv", "json"});
    if (cfg.n < 1 || cfg.n > 3)
        throw UsageError("-n must be 1, 2 or 3");
    Output o(cfg, out);
    nlohmann::json doc = nlohmann::json::array();
    for (auto p : cfg.primes) {
        if (cfg.which_h) {
            const auto h = quadforms::select_h(p);
            if (cfg.format == "json")
                doc.push_back({{"p", p}, {"h", h}});
            else
                o.os() << "p = " << p << ": h = " << h << '\n';
            continue;
        }
        const auto reps = quadforms::representatives(cfg.n, p);
        if (cfg.format == "md")
            o.os() << "## n = " << cfg.n << ", p = " << p << ": " << reps.size()
                   << " congruence classes\n\n| form | rank | discriminant |\n|---|---|---|\n";
        else if (cfg.format == "csv")
            o.os() << "n,p,form,rank,discriminant\n";
        for (const auto& q : reps) {
            const auto inv = quadforms::congruence_invariant(q);
            const std::string form = q.to_string();
            if (cfg.format == "md")
                o.os() << "| " << form << " | " << inv.rank << " | " << quadforms::to_string(inv.disc) << " |\n";
            else if (cfg.format == "csv")
                o.os() << cfg.n << ',' << p << ",\"" << form << "\"," << inv.rank << ','
                       << quadforms::to_string(inv.disc) << '\n';
            else
                doc.push_back({{"n", cfg.n},
                               {"p", p},
                               {"form", form},
                               {"rank", inv.rank},
                               {"discriminant", quadforms::to_string(inv.disc)}});
        }
        if (cfg.format == "md")
            o.os() << '\n';
    }
    if (cfg.format == "json")
        o.os() << doc.dump(2) << '\n';
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Orbits and Morita classes of H^4(G, Z) for the groups of order p^3", "pcube"};
    app.require_subcommand(1);

    auto add_primes = [&](CLI::App* c) {
        c->add_option("-p,--primes", cfg.primes, "comma-separated odd primes")->delimiter(',');
    };
    auto add_common = [&](CLI::App* c) {
        add_primes(c);
        c->add_option("--format", cfg.format, "md, csv or json");
        c->add_option("-o,--output", cfg.output, "write to a file instead of stdout");
        c->add_option("--max-states", cfg.max_states, "orbit enumeration bound (also allows p > 13)");
        c->add_option("--backend", cfg.backend, "orbit kernel: auto, scalar or avx2");
        c->add_option("--corrupt-action", cfg.corrupt, "perturb an action matrix entry: family:generator:row:col");
    };

    auto* classify = app.add_subcommand("classify", "orbit tables and counts");
    add_common(classify);
    classify->add_option("--family", cfg.family, "restrict to one family");
    classify->add_flag("--check", cfg.check, "exit 1 on a count mismatch");

    auto* dump = app.add_subcommand("orbits-dump", "every orbit with representative and size");
    add_common(dump);
    dump->add_option("--family", cfg.family, "restrict to one family");

    auto* morita = app.add_subcommand("morita", "merged Morita tables");
    add_common(morita);
    morita->add_flag("--check", cfg.check, "exit 1 when a consistency check fails");

    auto* verify = app.add_subcommand("verify", "full verification report");
    add_common(verify);
    verify->add_flag("--check", cfg.check, "accepted for symmetry; verify always checks");

    auto* quad = app.add_subcommand("quadforms", "congruence classes of quadratic forms");
    add_primes(quad);
    quad->add_option("-n", cfg.n, "number of variables (1-3)");
    quad->add_option("--format", cfg.format, "md, csv or json");
    quad->add_option("-o,--output", cfg.output, "write to a file instead of stdout");
    quad->add_flag("--which-h", cfg.which_h, "print h with h z1^2 + z2^2 not congruent to z1 z2");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (dump->parsed() && cfg.format == "md")
            cfg.format = "csv";
        for (auto* c : {classify, dump, morita, verify, quad})
            if (c->parsed())
                cfg.command = c->get_name();
        validate_primes(cfg);
        if (cfg.command == "classify")
            return cmd_classify(cfg, out, err, false);
        if (cfg.command == "orbits-dump")
            return cmd_classify(cfg, out, err, true);
        if (cfg.command == "morita")
            return cmd_morita(cfg, out, err);
        if (cfg.command == "verify")
            return cmd_verify(cfg, out, err);
        return cmd_quadforms(cfg, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace pcube::cli
