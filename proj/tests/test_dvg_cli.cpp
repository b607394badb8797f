#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "curvelike/cli.hpp"
#include "curvelike/dvg.hpp"
#include "support/fixtures.hpp"

using namespace curvelike;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
    const auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << text;
    return p.string();
}

bool has_line(const std::string& text, const std::string& line) {
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) {
        if (l == line) return true;
    }
    return false;
}

}  // namespace

TEST(Dvg, RoundTripsEveryFixture) {
    for (const auto& entry : std::filesystem::directory_iterator(CURVELIKE_FIXTURES)) {
        if (entry.path().extension() != ".dvg") continue;
        const auto doc = fixtures::load(entry.path().stem().string());
        const std::string text = serialize_dvg(doc);
        const auto again = parse_dvg(text);
        EXPECT_EQ(serialize_dvg(again), text) << entry.path();
        EXPECT_EQ(*again.config, *doc.config) << entry.path();
        EXPECT_EQ(again.divisors.size(), doc.divisors.size());
    }
}

TEST(Dvg, DefaultsAndNamedDivisors) {
    const auto doc = parse_dvg("curve A w=-2\ncurve B w=-3 g=1 m=2\npair A B 1\ndivisor x B=3\n");
    EXPECT_EQ(doc.config->genus(1), 1);
    EXPECT_EQ(doc.default_divisor().to_string(), "A=1 B=2");
    EXPECT_EQ(doc.divisor("x")[1], 3);
    EXPECT_EQ(doc.divisor("x")[0], 0);
    EXPECT_THROW(doc.divisor("nope"), InvalidInput);
}

TEST(Dvg, ErrorsNameTheLine) {
    const std::vector<std::pair<std::string, std::size_t>> bad{
        {"curve A\n", 1},
        {"curve A w=-2\ncurve A w=-1\n", 2},
        {"curve A w=x\n", 1},
        {"curve A w=-2 q=1\n", 1},
        {"curve A w=-2\npair A B 1\n", 2},
        {"curve A w=-2\npair A A 1\n", 2},
        {"curve A w=-2\ncurve B w=-2\npair A B -1\n", 3},
        {"curve A w=-2\ncurve B w=-2\npair A B 1\npair B A 2\n", 4},
        {"curve A w=-2 m=-1\n", 1},
        {"curve A w=-2\ndivisor d A=1 A=2\n", 2},
        {"frobnicate\n", 1},
    };
    for (const auto& [text, line] : bad) {
        try {
            parse_dvg(text);
            ADD_FAILURE() << "accepted: " << text;
        } catch (const ParseError& e) {
            EXPECT_EQ(e.line(), line) << text;
        }
    }
}

TEST(Dvg, DotHasParallelEdges) {
    const auto doc = fixtures::load("negative-definite_not_tree");
    const Divisor d = doc.default_divisor();
    const std::string dot = to_dot(d.config(), d.mult());
    std::size_t edges = 0;
    for (std::size_t p = dot.find(" -- "); p != std::string::npos; p = dot.find(" -- ", p + 1)) ++edges;
    EXPECT_EQ(edges, 2u);
    EXPECT_NE(dot.find("w=-2"), std::string::npos);
}

TEST(Cli, CheckSph2) {
    const CliResult r = invoke({"check", fixtures::path("sph-2-321")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(has_line(r.out, "curvelike: n=2")) << r.out;
    EXPECT_TRUE(has_line(r.out, "minimal: no")) << r.out;
    EXPECT_TRUE(has_line(r.out, "D.K: 0")) << r.out;
}

TEST(Cli, CheckSph3ReportsDegrees) {
    const CliResult r = invoke({"check", fixtures::path("sph-3-2211")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(has_line(r.out, "minimal: yes"));
    EXPECT_TRUE(has_line(r.out, "  E w=-1 D.C=1"));
    EXPECT_TRUE(has_line(r.out, "  E' w=-1 D.C=1"));
    EXPECT_TRUE(has_line(r.out, "  C w=-2 D.C=0"));
    EXPECT_TRUE(has_line(r.out, "  C' w=-2 D.C=0"));
}

TEST(Cli, LauferEllipticReportsBothQuantities) {
    const CliResult r = invoke({"laufer", fixtures::path("elliptic-sing")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(has_line(r.out, "chi: 0"));
    EXPECT_TRUE(has_line(r.out, "1-decomposition: absent"));
    EXPECT_TRUE(has_line(r.out, "  M Z.C=-1 C.(Z-C)=2"));
}

TEST(Cli, RealizeTwelveChain) {
    const CliResult r = invoke({"realize", fixtures::path("hodge-chain-12")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(has_line(r.out, "verdict: obstructed"));
    const CliResult p = invoke({"realize", fixtures::path("hodge-chain-12"), "--protect", "C6,C7"});
    EXPECT_TRUE(has_line(p.out, "terminal: C6(2) C7(2)")) << p.out;
}

TEST(Cli, EnumerateFive) {
    const CliResult r = invoke({"enumerate", "--vertices", "5", "--n", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("# 5 classes"), std::string::npos);
}

TEST(Cli, ReduceAndReplayAgree) {
    const CliResult r = invoke({"reduce", fixtures::path("sph-2-321"), "--divisor", ""});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto script_at = r.out.find("script:\n");
    const auto config_at = r.out.find("configuration:\n");
    ASSERT_NE(script_at, std::string::npos);
    const std::string script = r.out.substr(script_at + 8, config_at - script_at - 8);
    const CliResult p = invoke({"replay", fixtures::path("sph-2-321"), "--script", temp_file("sph2.moves", script)});
    ASSERT_EQ(p.code, 0) << p.err;
    EXPECT_EQ(p.out, r.out.substr(config_at + 15));
}

TEST(Cli, DecomposeAndChi) {
    const CliResult d = invoke({"decompose", fixtures::path("sph-3-2211"), "--divisor", ""});
    ASSERT_EQ(d.code, 0) << d.err;
    EXPECT_NE(d.out.find("part 2:"), std::string::npos);
    const CliResult c = invoke({"chi", fixtures::path("sph-3-2211"), "--divisor", "first", "--twist", "second"});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_TRUE(has_line(c.out, "chi: 1"));
    EXPECT_TRUE(has_line(c.out, "D.L: 1"));
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(invoke({}).code, cli::kExitInvalid);
    EXPECT_EQ(invoke({"bogus"}).code, cli::kExitInvalid);
    EXPECT_EQ(invoke({"check", "/nonexistent.dvg"}).code, cli::kExitInvalid);
    EXPECT_EQ(invoke({"check", temp_file("bad.dvg", "curve A\n")}).code, cli::kExitInvalid);
    EXPECT_EQ(invoke({"reduce", fixtures::path("negatively-filtered"), "--divisor", ""}).code, cli::kExitInvalid);
    EXPECT_EQ(invoke({"laufer", fixtures::path("sph-3-2211")}).code, cli::kExitInvalid);
    EXPECT_EQ(invoke({"enumerate", "--vertices", "6", "--n", "2", "--max-states", "5"}).code, cli::kExitCap);
    EXPECT_EQ(invoke({"enumerate", "--vertices", "9", "--n", "2"}).code, cli::kExitInvalid);
    EXPECT_EQ(invoke({"--help"}).code, cli::kExitOk);
}
