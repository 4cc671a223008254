#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "pcube/cli.hpp"
#include "pcube/lhs_morita.hpp"

using namespace pcube;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("usage errors exit 2")
{
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"bogus"}).code == cli::kExitUsage);
    CHECK(run({"classify", "-p", "4"}).code == cli::kExitUsage);
    CHECK(run({"classify", "-p", "2"}).code == cli::kExitUsage);
    CHECK(run({"classify", "-p", "17"}).code == cli::kExitUsage);
    CHECK(run({"classify", "-p", "3", "--format", "xml"}).code == cli::kExitUsage);
    CHECK(run({"classify", "-p", "3", "--family", "nope"}).code == cli::kExitUsage);
    CHECK(run({"verify", "-p", "3", "--corrupt-action", "cyclic:9:0:0"}).code == cli::kExitUsage);
    CHECK(run({"classify", "-p", "3", "--max-states", "10"}).code == cli::kExitUsage);
}

TEST_CASE("classify reports the total")
{
    const auto r = run({"classify", "-p", "3"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("total orbits: 61 = 6*3+43") != std::string::npos);
    const auto multi = run({"classify", "-p", "3,5", "--check"});
    CHECK(multi.code == cli::kExitOk);
    CHECK(multi.out.find("total orbits: 73 = 6*5+43") != std::string::npos);
}

TEST_CASE("classify json carries every family")
{
    const auto r = run({"classify", "-p", "3", "--format", "json"});
    REQUIRE(r.code == cli::kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(j[0]["families"].size() == 5);
}

TEST_CASE("check mode fails on a corrupted action")
{
    CHECK(run({"classify", "-p", "3", "--check", "--corrupt-action", "cyclic:0:0:0"}).code == cli::kExitCheckFailed);
    CHECK(run({"classify", "-p", "3", "--corrupt-action", "cyclic:0:0:0"}).code == cli::kExitOk);
}

TEST_CASE("verify passes at p = 3 and fails when corrupted")
{
    const auto r = run({"verify", "-p", "3"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find(" 0 failed") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(run({"verify", "-p", "3", "--corrupt-action", "gp:0:1:1"}).code == cli::kExitCheckFailed);
}

TEST_CASE("morita json round-trips")
{
    const auto r = run({"morita", "-p", "3", "--format", "json"});
    REQUIRE(r.code == cli::kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    const auto comps = lhs::components_from_json(j.is_array() ? j[0] : j);
    CHECK(comps.size() == 13);
    std::size_t three = 0;
    for (const auto& c : comps)
        three += c.size() == 3 ? 1 : 0;
    CHECK(three == 1);
}

TEST_CASE("morita markdown header")
{
    const auto r = run({"morita", "-p", "5", "--format", "md", "--check"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("p = 5: 57 Morita classes, 15 nontrivial (h = 2)") != std::string::npos);
}

TEST_CASE("quadforms")
{
    const auto h = run({"quadforms", "-n", "2", "-p", "5", "--which-h"});
    CHECK(h.code == cli::kExitOk);
    CHECK(h.out.find("h = 2") != std::string::npos);
    const auto reps = run({"quadforms", "-n", "3", "-p", "3"});
    CHECK(reps.out.find("7 congruence classes") != std::string::npos);
}

TEST_CASE("orbits-dump writes csv to a file")
{
    const auto path = std::filesystem::temp_directory_path() / "pcube_orbits_dump_test.csv";
    const auto r = run({"orbits-dump", "-p", "3", "--family", "gp", "-o", path.string()});
    REQUIRE(r.code == cli::kExitOk);
    std::ifstream in(path);
    std::string header, line;
    std::getline(in, header);
    CHECK(header == "family,p,representative,label,size");
    int rows = 0;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == 9);
    std::filesystem::remove(path);
}

TEST_CASE("backends give the same classification")
{
    const auto s = run({"classify", "-p", "5", "--backend", "scalar", "--format", "csv"});
    const auto a = run({"classify", "-p", "5", "--backend", "auto", "--format", "csv"});
    CHECK(s.code == cli::kExitOk);
    CHECK(s.out == a.out);
}
