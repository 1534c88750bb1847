#include "acp/cli.hpp"
#include "acp/source_model.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

#include <unistd.h>

namespace acp {
namespace {

namespace fs = std::filesystem;
using testing::fixture;
using testing::read_fixture;

struct CliRun {
    int code{0};
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    CliRun r;
    r.code = run_command(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string fx(const std::string& relative)
{
    return fixture(relative).string();
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"bogus"}).code, kExitUsage);
    CliRun r = run({"analyze", fx("project6"), "--no-such-flag"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_FALSE(r.err.empty());
    EXPECT_EQ(run({"check", fx("corpus/case01"), "--fragment", fx("corpus/case01/fragment.txt"), "--at", "nocolon"})
                  .code,
              kExitUsage);
    EXPECT_EQ(run({"thresholds", fx("project6"), "--sensitivity", "size"}).code, kExitUsage);
    EXPECT_EQ(run({"thresholds", fx("project6"), "--sensitivity", "shape=10"}).code, kExitUsage);
    EXPECT_EQ(run({"simulate", fx("scenarios/edited.json"), "--mode", "random"}).code, kExitUsage);
    EXPECT_EQ(run({"extract", fx("extract/two_sites")}).code, kExitUsage);
}

TEST(Cli, HelpIsSuccess)
{
    CliRun r = run({"--help"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("check"), std::string::npos);
}

TEST(Cli, AnalysisErrors)
{
    EXPECT_EQ(run({"analyze", fx("missing_root")}).code, kExitAnalysisError);
    EXPECT_EQ(run({"check", fx("corpus/case01"), "--fragment", fx("corpus/case01/absent.txt"), "--at",
                   "src/Inventory.java:31"})
                  .code,
              kExitAnalysisError);
    EXPECT_EQ(run({"extract", fx("extract/two_sites"), "--fragment", fx("extract/two_sites/fragment.txt"), "--at",
                   "src/shop/Pricing.java:12", "--name", "quote"})
                  .code,
              kExitAnalysisError);
}

TEST(Cli, AnalyzeJson)
{
    CliRun r = run({"analyze", fx("project6"), "--json"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["methodCount"], 6);
    EXPECT_EQ(j["distribution"].size(), 18u);
    EXPECT_EQ(j["thresholds"].size(), 18u);
    EXPECT_EQ(run({"analyze", fx("project6"), "--json"}).out, r.out);
}

TEST(Cli, AnalyzeText)
{
    CliRun r = run({"analyze", fx("project6")});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("size.lines.segment"), std::string::npos);
}

TEST(Cli, CheckTriggersOnTwoDuplicates)
{
    std::vector<std::string> args{"check", fx("corpus/case01"), "--fragment", fx("corpus/case01/fragment.txt"),
                                  "--at", "src/Inventory.java:31", "--json"};
    CliRun r = run(args);
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["triggered"].get<bool>());
    EXPECT_EQ(j["report"]["duplicateMethodCount"], 2);
    EXPECT_EQ(j["report"]["minDuplicateMethods"], 2);
    EXPECT_EQ(run(args).out, r.out);

    args.pop_back();
    CliRun text = run(args);
    EXPECT_EQ(text.code, kExitOk);
    EXPECT_NE(text.out.find("TRIGGERED"), std::string::npos);
}

TEST(Cli, CheckNearCaseIsNotTriggered)
{
    CliRun r = run({"check", fx("corpus/case08"), "--fragment", fx("corpus/case08/fragment.txt"), "--at",
                 "src/Orders.java:11", "--json"});
    EXPECT_EQ(r.code, kExitNotTriggered) << r.err;
    EXPECT_FALSE(nlohmann::json::parse(r.out)["triggered"].get<bool>());
}

TEST(Cli, CheckOutsideMethodIsNotTriggered)
{
    CliRun r = run({"check", fx("corpus/case01"), "--fragment", fx("corpus/case01/fragment.txt"), "--at",
                 "src/Inventory.java:1", "--json"});
    EXPECT_EQ(r.code, kExitNotTriggered);
    EXPECT_EQ(nlohmann::json::parse(r.out)["dropped"], "NoEnclosingMethod");
}

TEST(Cli, SimulateEditedScenario)
{
    CliRun r = run({"simulate", fx("scenarios/edited.json"), "--json"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["projects"].size(), 1u);
    EXPECT_EQ(j["projects"][0]["recommendations"], 0);
    bool edited = false;
    for (const auto& e : j["projects"][0]["log"]) {
        edited = edited || (e["type"] == "dropped" && e["reason"] == "Edited");
    }
    EXPECT_TRUE(edited);

    CliRun text = run({"simulate", fx("scenarios/edited.json")});
    EXPECT_EQ(text.code, kExitOk);
    EXPECT_NE(text.out.find("Edited"), std::string::npos);
}

TEST(Cli, ExtractGoldenDiff)
{
    CliRun r = run({"extract", fx("extract/two_sites"), "--fragment", fx("extract/two_sites/fragment.txt"), "--at",
                 "src/shop/Pricing.java:12", "--name", "computeTotal"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out, read_fixture("extract/two_sites/expected.diff"));
}

TEST(Cli, ExtractWrite)
{
    fs::path dir = fs::temp_directory_path() / ("acp_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::copy(fixture("extract/two_sites"), dir, fs::copy_options::recursive);
    const fs::path file = dir / "src/shop/Pricing.java";
    const std::size_t methods_before = index_file(*read_file(file), "Pricing.java").methods.size();

    CliRun r = run({"extract", dir.string(), "--fragment", (dir / "fragment.txt").string(), "--at",
                 "src/shop/Pricing.java:12", "--name", "computeTotal", "--write"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    const std::string after = *read_file(file);
    EXPECT_NE(after.find("private double computeTotal(double gross, double discount)"), std::string::npos);
    EXPECT_EQ(index_file(after, "Pricing.java").methods.size(), methods_before + 1);
    fs::remove_all(dir);
}

TEST(Cli, ThresholdsAtFullSensitivityAreMaxima)
{
    CliRun r = run({"thresholds", fx("project6"), "--sensitivity", "size=100", "--sensitivity", "keyword=1", "--json"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["thresholds"]["size.lines.segment"], 8.0);
    EXPECT_EQ(j["sensitivity"]["keyword"], 1);
    EXPECT_EQ(j["sensitivity"]["coupling"], 50);
}

TEST(Cli, ExitCodesStayInRange)
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"analyze"}, {"check", fx("project6")}, {"simulate", fx("nothing.json")}, {"thresholds", fx("x")},
             {"extract", fx("project6"), "--fragment", fx("project6/none"), "--at", "a:1", "--name", "n"}}) {
        int code = run(args).code;
        EXPECT_TRUE(code >= 0 && code <= 3) << args[0];
    }
}

} // namespace
} // namespace acp
