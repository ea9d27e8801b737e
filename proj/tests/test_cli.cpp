#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "commucount/cli/app.hpp"
#include "commucount/cli/cache.hpp"
#include "commucount/cli/result.hpp"

using namespace commucount::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

/// Points the result cache at a fresh directory for the lifetime of the object.
struct ScratchCache {
    fs::path dir;
    explicit ScratchCache(const std::string& name) {
        dir = fs::temp_directory_path() / ("commucount_test_" + name + "_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        ::setenv("COMMUCOUNT_CACHE_DIR", dir.c_str(), 1);
    }
    ~ScratchCache() { fs::remove_all(dir); }
    fs::path file() const { return dir / "results.jsonl"; }
};

nlohmann::ordered_json first_json(const std::string& text) {
    return nlohmann::ordered_json::parse(text.substr(0, text.find('\n')));
}

}  // namespace

TEST_CASE("count2 and padic values") {
    ScratchCache cache("values");
    const Run r = run_cli({"count2", "--n", "1", "--split"});
    REQUIRE(r.code == kExitOk);
    const auto j = first_json(r.out);
    CHECK(j["value"] == "817");
    CHECK(j["command"] == "count2");
    const Run p = run_cli({"padic", "--p", "2", "--n", "2", "--method", "fast"});
    REQUIRE(p.code == kExitOk);
    CHECK(first_json(p.out)["value"] == "6400");
    const Run b = run_cli({"--no-cache", "padic", "--p", "2", "--n", "2", "--method", "brute"});
    CHECK(first_json(b.out)["value"] == "6400");
}

TEST_CASE("exit codes") {
    ScratchCache cache("exit");
    CHECK(run_cli({"count2", "--n", "-1"}).code == kExitUsage);
    CHECK(run_cli({"count2"}).code == kExitUsage);
    CHECK(run_cli({"frobnicate"}).code == kExitUsage);
    CHECK(run_cli({"--budget", "1000", "count3", "--n", "3"}).code == kExitBudget);
    CHECK(run_cli({"padic", "--p", "4", "--n", "1", "--method", "fast"}).code == kExitNotPrime);
    CHECK(run_cli({"lowerbound", "--d", "5", "--n", "1"}).code == kExitUsage);
    CHECK(run_cli({"--help"}).code == kExitOk);
}

TEST_CASE("csv and json carry the same data") {
    ScratchCache cache("formats");
    const Run j = run_cli({"--no-cache", "divisor", "--n", "10", "--h", "6"});
    const Run c = run_cli({"--no-cache", "--format", "csv", "divisor", "--n", "10", "--h", "6"});
    REQUIRE(j.code == kExitOk);
    REQUIRE(c.code == kExitOk);
    const auto obj = first_json(j.out);
    std::istringstream lines(c.out);
    std::string header, row;
    std::getline(lines, header);
    CHECK(header == csv_header());
    std::size_t rows = 0;
    while (std::getline(lines, row)) {
        const auto cells = split_csv_line(row);
        REQUIRE(cells.size() >= 4);
        CHECK(cells[0] == "divisor");
        CHECK(cells[2] == obj["value"].get<std::string>());
        ++rows;
    }
    CHECK(rows == std::max<std::size_t>(1, obj["diagnostics"].size()));
}

TEST_CASE("result round trip") {
    CommandResult r{"count2", {{"n", "1"}, {"split", "false"}}, "817", {}, 12};
    r.add("b", "2");
    r.add("a", "1");
    const CommandResult back = from_json(to_json(r));
    CHECK(back.command == r.command);
    CHECK(back.params == r.params);
    CHECK(back.value == r.value);
    CHECK(back.diagnostics == r.diagnostics);
    CHECK(param_string(r.params) == "n=1;split=false");
    CHECK(split_csv_line("a,\"b,c\",\"d\"\"e\"") == std::vector<std::string>{"a", "b,c", "d\"e"});
}

TEST_CASE("cache hits, corruption and version mismatch") {
    ScratchCache cache("cache");
    const Run first = run_cli({"count2", "--n", "2"});
    REQUIRE(first.code == kExitOk);
    REQUIRE(fs::exists(cache.file()));
    const Run second = run_cli({"count2", "--n", "2"});
    auto a = first_json(first.out), b = first_json(second.out);
    a.erase("runtime_ms");
    b.erase("runtime_ms");
    CHECK(a == b);

    // A planted value under the current version is served from the cache.
    std::ostringstream sink;
    ResultCache store(cache.dir, kVersion, sink);
    CommandResult planted{"count2", {{"n", "3"}, {"split", "false"}}, "planted", {}, 0};
    store.store(ResultCache::key_for("count2", planted.params), planted);
    CHECK(first_json(run_cli({"count2", "--n", "3"}).out)["value"] == "planted");
    CHECK(first_json(run_cli({"--no-cache", "count2", "--n", "3"}).out)["value"] != "planted");

    // Entries written by another version are ignored.
    ResultCache old(cache.dir, "0.0.1", sink);
    CommandResult stale{"count2", {{"n", "4"}, {"split", "false"}}, "stale", {}, 0};
    old.store(ResultCache::key_for("count2", stale.params), stale);
    CHECK(first_json(run_cli({"count2", "--n", "4"}).out)["value"] != "stale");

    // Corrupt lines produce a warning and are skipped.
    {
        std::ofstream f(cache.file(), std::ios::app);
        f << "{not json\n";
    }
    const Run warned = run_cli({"count2", "--n", "2"});
    CHECK(warned.code == kExitOk);
    CHECK(warned.err.find("corrupt") != std::string::npos);
    CHECK(first_json(warned.out)["value"] == first_json(first.out)["value"]);
}
