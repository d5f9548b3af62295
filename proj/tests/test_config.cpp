#include <doctest.h>

#include "config.hpp"

#include "bh/errors.hpp"

#include <fstream>
#include <sstream>

using namespace bh;
using namespace bh::cli;

namespace {
ExperimentConfig parse(const std::string& s) {
    std::istringstream is(s);
    return parse_config(is);
}
}  // namespace

TEST_CASE("FNV-1a reference values") {
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("shipped default config") {
    const ExperimentConfig c = load_config(BH_SOURCE_DIR "/config/default.ini");
    CHECK(c.lambda == 1.0);
    CHECK(c.function == "indicator");
    CHECK(c.max_level == 8);
    CHECK(c.grid("x").values().size() == 150);
    CHECK(c.grid("kernel").kind == "log");
    CHECK(c.hash_hex().size() == 16);
}

TEST_CASE("config hash follows the content") {
    const std::string base = "[run]\nlambda = 1\nseed = 7\n[grid.x]\nkind = log\nstart = 0.1\nstop = 2\ncount = 5\n";
    const ExperimentConfig a = parse(base);
    CHECK(parse(base).hash_hex() == a.hash_hex());
    CHECK(parse("[run]\nlambda = 2\nseed = 7\n[grid.x]\nkind = log\nstart = 0.1\nstop = 2\ncount = 5\n").hash_hex() !=
          a.hash_hex());
    CHECK(parse(base + "[run2]\n").hash_hex() == a.hash_hex());  // empty sections are dropped by the reader
    ExperimentConfig b = a;
    b.output_dir = "elsewhere";
    CHECK(b.hash_hex() == a.hash_hex());
    CHECK(a.grid("x").values().front() == 0.1);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse("[run]\nlambda = 0\n"), UsageError);
    CHECK_THROWS_AS(parse("[run]\nlambda = abc\n"), UsageError);
    CHECK_THROWS_AS(parse("[run]\nunknown = 1\n"), UsageError);
    CHECK_THROWS_AS(parse("[nope]\nx = 1\n"), UsageError);
    CHECK_THROWS_AS(parse("[grid.x]\nkind = log\nstart = 0\nstop = 1\ncount = 3\n"), UsageError);
    CHECK_THROWS_AS(parse("[decomposition]\nmax_level = 4\nn = 5\n"), UsageError);
    CHECK_THROWS_AS(parse("[run]\nseed = -3\n"), UsageError);
    CHECK_THROWS_AS(parse("[run\n"), UsageError);
    CHECK_THROWS_AS(ExperimentConfig{}.grid("missing"), UsageError);
}
