#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"
#include "generators.hpp"
#include "tsat/engine.hpp"
#include "tsat/parser.hpp"

namespace tsat {
namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, std::string_view needle) {
    return haystack.find(needle) != std::string::npos;
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"p & ~p"}).code, cli::kUnsat);
    EXPECT_EQ(run({"p"}).code, cli::kSat);
    EXPECT_EQ(run({"(("}).code, cli::kUsage);
    EXPECT_EQ(run({}).code, cli::kUsage);
    EXPECT_EQ(run({"p", "--mode", "sideways"}).code, cli::kUsage);
    EXPECT_EQ(run({"r1 & p"}).code, cli::kUsage);
    EXPECT_EQ(run({"next next p", "--mode", "finite", "--max-iters", "1"}).code, cli::kInconclusive);
    EXPECT_EQ(run({"p", "--max-iters", "0"}).code, cli::kUsage);
}

TEST(Cli, RunningExampleLasso) {
    Outcome r = run({"[]<>p & []<>~p", "--mode", "infinite", "--model"});
    EXPECT_EQ(r.code, cli::kSat);
    EXPECT_EQ(r.out, "verdict: SAT (infinite)\nprefix:\nperiod:\nS0: p=1\nS1: p=0\n");
    EXPECT_EQ(run({"[]<>p & []<>~p", "--mode", "finite"}).out, "verdict: UNSAT\n");
}

TEST(Cli, ParseErrorShowsSpan) {
    Outcome r = run({"(("});
    EXPECT_EQ(r.code, cli::kUsage);
    EXPECT_TRUE(contains(r.err, "at 1-2")) << r.err;
    EXPECT_TRUE(contains(r.err, "  ((\n   ^\n")) << r.err;
}

TEST(Cli, ModelProjectionAndInternalVariables) {
    Outcome plain = run({"p U q", "--model"});
    EXPECT_TRUE(contains(plain.out, "S0: p=1 q=1\n")) << plain.out;
    Outcome internal = run({"p U q", "--model", "--show-internal"});
    EXPECT_TRUE(contains(internal.out, "S0: p=1 q=1 r1=1\n")) << internal.out;
    Outcome finite = run({"p & next ~p & next next p", "--model"});
    EXPECT_TRUE(contains(finite.out, "S0: p=1\nS1: p=0\nS2: p=1\n")) << finite.out;
}

TEST(Cli, Dumps) {
    Outcome r = run({"[]<>p & []<>~p", "--dump-invariant", "--dump-config", "--dump-bdd", "dot"});
    EXPECT_TRUE(contains(r.out, "  r1 <-> <> p\n")) << r.out;
    EXPECT_TRUE(contains(r.out, "  r4 <-> ~r3 | next r4\n")) << r.out;
    EXPECT_TRUE(contains(r.out, "  r2 -> dm ~r1\n")) << r.out;
    EXPECT_TRUE(contains(r.out, "init: ~r2 & ~r4\n")) << r.out;
    EXPECT_TRUE(contains(r.out, "config finite-time:\n")) << r.out;
    EXPECT_TRUE(contains(r.out, "config infinite-time:\n")) << r.out;
    EXPECT_TRUE(contains(r.out, "  vars: p r1 r2 r3 r4\n")) << r.out;
    EXPECT_TRUE(contains(r.out, "finite route: ")) << r.out;
    EXPECT_TRUE(contains(r.out, "bdd finite-time gamma2 root ")) << r.out;
    EXPECT_TRUE(contains(r.out, "bound: length <= 31\n")) << r.out;
    EXPECT_EQ(run({"p", "--dump-bdd", "svg"}).code, cli::kUsage);
}

TEST(Cli, Stats) {
    Outcome r = run({"[]<>p & []<>~p", "--stats"});
    EXPECT_TRUE(contains(r.out, "stats: iterations=")) << r.out;
    EXPECT_TRUE(contains(r.out, "candidates_tried=")) << r.out;
}

TEST(Cli, Json) {
    Outcome r = run({"[]<>p & []<>~p", "--json", "--model", "--stats", "--mode", "infinite"});
    ASSERT_EQ(r.code, cli::kSat);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["verdict"], "SAT (infinite)");
    EXPECT_EQ(j["exit_code"], 0);
    EXPECT_EQ(j["mode"], "infinite");
    EXPECT_EQ(j["model"]["kind"], "lasso");
    EXPECT_EQ(j["model"]["period"].size(), 2U);
    EXPECT_EQ(j["model"]["period"][0]["p"], 1);
    EXPECT_TRUE(j["stats"].contains("peak_nodes"));

    auto u = nlohmann::json::parse(run({"p & ~p", "--json"}).out);
    EXPECT_EQ(u["verdict"], "UNSAT");
    EXPECT_EQ(u["exit_code"], 1);
}

TEST(Cli, FileInput) {
    auto path = std::filesystem::temp_directory_path() / "tsat_cli_formula.txt";
    {
        std::ofstream f(path);
        f << "[]<>p & []<>~p\n";
    }
    EXPECT_EQ(run({"--file", path.string(), "--mode", "finite"}).code, cli::kUnsat);
    EXPECT_EQ(run({"--file", path.string()}).code, cli::kSat);
    EXPECT_EQ(run({"p", "--file", path.string()}).code, cli::kUsage);
    EXPECT_EQ(run({"--file", (path.string() + ".missing")}).code, cli::kUsage);
    std::filesystem::remove(path);
}

TEST(Cli, NodeLimitFromEnvironment) {
    ::setenv("TSAT_NODE_LIMIT", "20", 1);
    Outcome r = run({"[]<>a & []<>b & []<>c & []~(a & b)"});
    ::unsetenv("TSAT_NODE_LIMIT");
    EXPECT_EQ(r.code, cli::kNodeLimit);
    EXPECT_FALSE(r.err.empty());
    ::setenv("TSAT_NODE_LIMIT", "many", 1);
    EXPECT_EQ(run({"p"}).code, cli::kUsage);
    ::unsetenv("TSAT_NODE_LIMIT");
}

TEST(Cli, OracleFlag) {
    Outcome sat = run({"[]<>p & []<>~p", "--oracle"});
    EXPECT_TRUE(contains(sat.out, "oracle: model confirmed\n")) << sat.out;
    Outcome unsat = run({"p & ~p", "--oracle", "3,1,2"});
    EXPECT_TRUE(contains(unsat.out, "oracle: bounded-confirmed (finite length <= 3, lasso prefix <= 1 period <= 2)"))
        << unsat.out;
    EXPECT_EQ(run({"--oracle", "p"}).code, cli::kSat);
    EXPECT_EQ(run({"a & b & c & d & e & f", "--oracle"}).code, cli::kUsage);
    EXPECT_EQ(run({"p", "--oracle", "0"}).code, cli::kUsage);
    EXPECT_EQ(run({"p", "--oracle", "2,x,1"}).code, cli::kUsage);
}

// Exit codes match the library verdict on every corpus formula, and the
// oracle never disagrees on those with at most two variables.
TEST(Cli, CorpusExitCodesAndOracle) {
    for (const auto& text : testing::load_corpus(TSAT_CORPUS)) {
        Decision d = decide(text);
        const int expected = d.verdict.is_sat() ? cli::kSat : d.verdict.is_unsat() ? cli::kUnsat : cli::kInconclusive;
        std::vector<std::string> args{text};
        if (vars(parse(text)).size() <= 2) args.push_back("--oracle");
        Outcome r = run(args);
        EXPECT_EQ(r.code, expected) << text;
        if (args.size() == 2) {
            EXPECT_TRUE(contains(r.out, "oracle: model confirmed") || contains(r.out, "oracle: bounded-confirmed"))
                << text << "\n" << r.out;
        }
    }
}

TEST(Cli, Binary) {
    auto status = [](const std::string& args) {
        int s = std::system((std::string(TSAT_BINARY) + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    EXPECT_EQ(status("'p & ~p'"), 1);
    EXPECT_EQ(status("'[]<>p & []<>~p' --mode infinite --model"), 0);
    EXPECT_EQ(status("'(('"), 64);
}

}  // namespace
}  // namespace tsat
