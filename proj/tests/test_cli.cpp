#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hatlab/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace hatlab;
using hatlab::cli::Json;

namespace {

struct Outcome
{
    int code = 0;
    std::string out, err;
    Json doc;
};

Outcome invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "hatlab");
    std::vector<const char *> argv;
    for (const auto & a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    Outcome o;
    o.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    o.out = out.str();
    o.err = err.str();
    if (o.code == 0 && ! o.out.empty() && o.out.front() == '{')
        o.doc = Json::parse(o.out);
    return o;
}

std::string temp_path(const std::string & name)
{
    return (std::filesystem::temp_directory_path() / ("hatlab_test_" + name)).string();
}

} // namespace

TEST_CASE("solve")
{
    auto o = invoke({"solve", "--t", "1", "--n", "5", "--family", "dict", "--mode", "exact"});
    REQUIRE(o.code == 0);
    CHECK(o.doc["result"]["value"]["exact"] == "1/2");
    CHECK(o.doc["command"] == "solve");
    CHECK(o.doc["version"] == "0.1.0");

    o = invoke({"solve", "--t", "2", "--n", "1", "--family", "dict"});
    CHECK(o.doc["result"]["value"]["exact"] == "1/4");

    o = invoke({"solve", "--t", "2", "--n", "2", "--family", "dict"});
    CHECK(o.doc["result"]["value"]["exact"] == "5/16");
    CHECK(o.doc["result"]["value"]["decimal"] == 0.3125);
    const auto witness = cli::strategy_from_json(o.doc["result"]["witness"]);
    const auto fam = game::enumerate_family(game::FamilyKind::dictator, 2);
    CHECK(fraction_string(game::success_probability(witness, fam)) == "5/16");

    o = invoke({"solve", "--t", "3", "--n", "2", "--mode", "search", "--seed", "1", "--restarts", "32"});
    REQUIRE(o.code == 0);
    CHECK(o.doc["result"]["lower_bound"] == true);
    CHECK(o.doc["seed"] == 1);
    CHECK(parse_fraction(o.doc["result"]["value"]["exact"].get<std::string>()) <= Rational(5, 16));
}

TEST_CASE("exit codes")
{
    CHECK(invoke({"solve", "--t", "2"}).code == cli::exit_usage);
    CHECK(invoke({"solve", "--t", "2", "--n", "2", "--family", "majority"}).code == cli::exit_usage);
    CHECK(invoke({"nonsense"}).code == cli::exit_usage);
    CHECK(invoke({"solve", "--t", "2", "--n", "5"}).code == cli::exit_unsupported);
    CHECK(invoke({"alpha", "--graph", "kneser:14"}).code == cli::exit_unsupported);
    CHECK(invoke({"alpha", "--graph", "wheel:4"}).code == cli::exit_usage);
    CHECK(invoke({"--help"}).code == cli::exit_ok);
    CHECK(invoke({"--version"}).code == cli::exit_ok);
}

TEST_CASE("alpha")
{
    CHECK(invoke({"alpha", "--graph", "kneser:3"}).doc["result"]["alpha_bar"]["exact"] == "1/2");
    CHECK(invoke({"alpha", "--graph", "shift:4"}).doc["result"]["alpha_bar"]["exact"] == "1/4");
    const auto power = invoke({"alpha", "--graph", "kneser:2", "--power", "2"});
    const auto game = invoke({"solve", "--t", "2", "--n", "2", "--family", "intersecting"});
    CHECK(power.doc["result"]["alpha_bar"]["exact"] == game.doc["result"]["value"]["exact"]);
    CHECK(invoke({"alpha", "--graph", "gnp:10:0.5:3"}).code == 0);
}

TEST_CASE("blocker commands")
{
    CHECK(invoke({"blocker", "bound", "--k", "2", "--beta", "1"}).doc["result"]["value"]["exact"] == "1/128");
    const auto b12 = invoke({"blocker", "bound", "--k", "12", "--beta", "1/6"});
    CHECK(b12.doc["result"]["value"]["exact"] == "1/4831838208");
    CHECK(b12.doc["result"]["beta_is_2_over_k"] == true);
    CHECK(b12.doc["result"]["value"]["exact"] == b12.doc["result"]["corollary"]["exact"]);
    CHECK(invoke({"blocker", "kseq", "--d", "3"}).doc["result"]["k"] == "32449872");

    const std::string path = temp_path("family.json");
    const auto built = invoke({"blocker", "build", "--n", "8", "--seed", "3", "--delta", "0.5", "--out", path});
    REQUIRE(built.code == 0);
    CHECK(built.doc["result"]["certified"] == true);
    CHECK(built.doc["result"]["k"] == 12);
    CHECK(built.doc["result"]["truncated"] == false);
    CHECK(built.doc["result"]["blockers"].size() == built.doc["result"]["count"]);

    const auto verified = invoke({"blocker", "verify", "--file", path});
    REQUIRE(verified.code == 0);
    CHECK(verified.doc["result"]["certified"] == true);
    CHECK(verified.doc["result"]["certificates"].size() == built.doc["result"]["count"]);

    // a listed family without factors
    Json listed = built.doc["result"];
    listed.erase("factors");
    std::ofstream(path) << listed.dump();
    CHECK(invoke({"blocker", "verify", "--file", path}).doc["result"]["certified"] == true);

    // a broken family is reported
    listed["blockers"][0] = Json::array({5});
    listed["k"] = 12;
    std::ofstream(path) << listed.dump();
    const auto broken = invoke({"blocker", "verify", "--file", path});
    CHECK(broken.doc["result"]["certified"] == false);
    CHECK(broken.doc["result"]["first_failure"] == 0);
    std::filesystem::remove(path);

    const auto single = invoke({"blocker", "verify", "--points", "5", "--t", "1", "--n", "3"});
    CHECK(single.doc["result"]["certified"] == false);
    CHECK(single.doc["result"]["counterexample_winning_measure"]["exact"] == "1/2");

    const auto k4 = invoke({"blocker", "graph", "--graph", "complete:4"});
    CHECK(k4.doc["result"]["size"] == 4);
    CHECK(invoke({"blocker", "base", "--n", "4"}).doc["result"]["certified"] == true);
}

TEST_CASE("alphastar, family, rv")
{
    CHECK(invoke({"alphastar", "--graph", "complete:4", "--mode", "exact"}).doc["result"]["value"]["exact"] == "15/64");
    CHECK(invoke({"alphastar", "--graph", "edgeless:8", "--mode", "exact"}).doc["result"]["value"]["exact"] == "1/2");
    const auto mc = invoke({"alphastar", "--graph", "shift:4", "--mode", "mc", "--samples", "2000", "--seed", "1"});
    REQUIRE(mc.code == 0);
    CHECK(mc.doc["result"]["samples"] == 2000);

    const auto fam = invoke({"family", "--kind", "dictator", "--n", "2"});
    CHECK(fam.doc["result"]["sets"] == Json::array({"0xa", "0xc"}));

    const auto rv = invoke({"rv", "--family", "intersecting", "--n", "3", "--v", "111"});
    CHECK(rv.doc["result"]["marginals_half"] == true);
    CHECK(rv.doc["result"]["sample"]["R"] == Json::array({0, 1, 2, 3}));
}

TEST_CASE("graph export round-trips through file specs")
{
    for (const char * encoding : {"adj", "hlg"}) {
        const std::string path = temp_path(std::string("graph.") + encoding);
        REQUIRE(invoke({"graph", "export", "--graph", "shift:5", "--as", encoding, "--out", path}).code == 0);
        CHECK(cli::parse_graph_spec("file:" + path) == graph::shift_graph(5));
        std::filesystem::remove(path);
    }
}

TEST_CASE("csv output")
{
    const auto o = invoke({"--format", "csv", "solve", "--t", "2", "--n", "2"});
    REQUIRE(o.code == 0);
    CHECK(o.out.rfind("value.exact,value.decimal,method,lower_bound,work", 0) == 0);
    CHECK(o.out.find("5/16,0.3125") != std::string::npos);
}

TEST_CASE("exact parsing")
{
    CHECK(cli::parse_exact("0.15") == Rational(3, 20));
    CHECK(cli::parse_exact("3/8") == Rational(3, 8));
    CHECK(cli::parse_exact("2") == 2);
    CHECK_THROWS(cli::parse_exact("0.1x"));
    CHECK(cli::bitset_hex(Bitset(2)) == "0x0");
}

TEST_CASE("seeded output is byte-identical across threads")
{
    const std::vector<std::vector<std::string>> commands{
        {"solve", "--t", "2", "--n", "3"},
        {"solve", "--t", "3", "--n", "2", "--mode", "search", "--seed", "4"},
        {"alphastar", "--graph", "gnp:12:0.5:2", "--mode", "mc", "--samples", "3000", "--seed", "9"},
        {"blocker", "build", "--n", "9", "--seed", "2", "--delta", "0.4"},
    };
    for (auto args : commands) {
        auto one = args, many = args;
        one.insert(one.begin(), {"--threads", "1"});
        many.insert(many.begin(), {"--threads", "8"});
        const auto a = invoke(one), b = invoke(many), c = invoke(one);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out == c.out);
    }
}

TEST_CASE("installed binary")
{
    FILE * pipe = popen((std::string(HATLAB_TOOL_PATH) + " solve --t 2 --n 5 2>/dev/null").c_str(), "r");
    REQUIRE(pipe);
    char buffer[256];
    while (fgets(buffer, sizeof buffer, pipe)) {
    }
    const int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == cli::exit_unsupported);
}
