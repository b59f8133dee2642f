#include "cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace {

struct result {
    int code;
    std::string out;
    std::string err;
};

result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = hrw::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST(Cli, Derivative)
{
    auto r = run({"diff", "x^3", "--at", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "12\n");
}

TEST(Cli, SequenceLimit)
{
    auto r = run({"limit-seq", "(1/n)^3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "0 (method: field-evaluation)\n");
}

TEST(Cli, ParseErrorExitsTwoWithOffset)
{
    auto r = run({"diff", "2*", "--at", "1"});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.out, "");
    EXPECT_EQ(r.err.rfind("error: ParseError: offset 2:", 0), 0u) << r.err;
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(Cli, DomainErrorExitsOne)
{
    auto r = run({"jet", "1/x", "--at", "0"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.err.rfind("error: DomainError:", 0), 0u) << r.err;
    auto w = run({"measure", "area", "--lower", "1", "--upper", "x", "--interval", "0,2", "--mesh", "1/2"});
    EXPECT_EQ(w.code, 1);
    EXPECT_EQ(w.err.rfind("error: OrderViolation:", 0), 0u) << w.err;
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"diff", "x", "--bogus", "1"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"integrate", "x", "--method", "simpson"}).code, 2);
}

TEST(Cli, JsonEnvelope)
{
    auto r = run({"diff", "x^3", "--at", "2", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["operation"], "diff");
    EXPECT_TRUE(j.contains("result"));
}

TEST(Cli, ConvergenceStudyJson)
{
    auto r = run({"integrate", "x^2", "--interval", "0,1", "--meshes", "1/8,1/16,1/32", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["label"], "finite-scale emulation");
    EXPECT_EQ(j["rows"].size(), 3u);
    EXPECT_EQ(j["rows"][0]["mesh"], "1/8");
}

TEST(Cli, ByteIdenticalRuns)
{
    std::vector<std::string> args{"integrate", "x*y", "--box", "0,1;0,1", "--mesh", "1/4",
                                  "--tags", "seeded-random", "--seed", "17", "--format", "json"};
    auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ExactRationalsInFlags)
{
    auto a = run({"eval", "x^2", "--at", "x=0.5"});
    auto b = run({"eval", "x^2", "--at", "x=1/2"});
    EXPECT_EQ(a.out, "1/4\n");
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, PrecisionFromEnvironment)
{
    ::setenv("HRW_PRECISION", "12", 1);
    auto r = run({"eval", "pi"});
    ::unsetenv("HRW_PRECISION");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "3.141592653590\n");
}
