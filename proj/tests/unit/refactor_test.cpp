#include "acp/error.hpp"
#include "acp/refactor.hpp"
#include "acp/unified_diff.hpp"
#include "acp/workspace.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

namespace acp {
namespace {

using testing::fixture;
using testing::fragment_at;
using testing::read_fixture;
using testing::sources_for;

class FlowTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        auto file = std::make_shared<const FileIndex>(testing::index_fixture("extract/flow/src/Flow.java", "Flow.java"));
        index_ = ProjectIndex({{"Flow.java", file}});
    }

    DataFlowSummary analyze(const std::string& text, int line)
    {
        Fragment f = fragment_at(text, "Flow.java", line);
        const MethodUnit* host = index_.enclosing_method("Flow.java", line);
        EXPECT_NE(host, nullptr);
        return analyze_extractability(f, *host);
    }

    ErrorCode failure(const std::string& text, int line)
    {
        try {
            analyze(text, line);
        } catch (const Error& e) {
            return e.code();
        }
        ADD_FAILURE() << "no error for " << text;
        return ErrorCode::LexError;
    }

    ExtractionPlan plan(const std::string& text, int line, const std::string& name)
    {
        const MethodUnit* host = index_.enclosing_method("Flow.java", line);
        return plan_extraction(analyze(text, line), name, *host, *host->owner);
    }

    ProjectIndex index_;
};

TEST_F(FlowTest, ReadsEarlierAssignsLater)
{
    DataFlowSummary s = analyze("y = x * 3;", 37);
    EXPECT_EQ(s.inputs, (std::vector<Variable>{{"x", "int"}}));
    EXPECT_EQ(s.outputs, (std::vector<Variable>{{"y", "int"}}));
    EXPECT_EQ(s.locals_to_declare, (std::vector<Variable>{{"y", "int"}}));
    EXPECT_FALSE(s.output_declared_in_span);
    EXPECT_TRUE(s.feasible());

    ExtractionPlan p = plan("y = x * 3;", 37, "triple");
    EXPECT_EQ(p.signature, "private int triple(int x)");
    EXPECT_EQ(p.call_template, "y = triple(x);");
}

TEST_F(FlowTest, DeclaredOutputIsDeclaredAtCallSite)
{
    DataFlowSummary s = analyze("int a = x + 1;", 12);
    EXPECT_EQ(s.inputs, (std::vector<Variable>{{"x", "int"}}));
    EXPECT_EQ(s.outputs, (std::vector<Variable>{{"a", "int"}}));
    EXPECT_TRUE(s.output_declared_in_span);

    ExtractionPlan p = plan("int a = x + 1;", 12, "compute");
    EXPECT_EQ(p.signature, "private int compute(int x)");
    EXPECT_EQ(p.call_template, "int a = compute(x);");
    EXPECT_EQ(p.return_type, "int");
}

TEST_F(FlowTest, InOutVariable)
{
    DataFlowSummary s = analyze("sum += x;", 6);
    EXPECT_EQ(s.inputs, (std::vector<Variable>{{"sum", "int"}, {"x", "int"}}));
    EXPECT_EQ(s.outputs, (std::vector<Variable>{{"sum", "int"}}));
    EXPECT_EQ(plan("sum += x;", 6, "accumulate").call_template, "sum = accumulate(sum, x);");
}

TEST_F(FlowTest, TwoOutputs)
{
    EXPECT_EQ(failure("int a = x + 1;\nint b = x + 2;", 12), ErrorCode::TooManyOutputs);
}

TEST_F(FlowTest, IllegalControlFlow)
{
    EXPECT_EQ(failure("if (x < 0) {\n    return -1;\n}", 18), ErrorCode::IllegalFlow);
    EXPECT_EQ(failure("if (v < 0) {\n    break;\n}", 27), ErrorCode::IllegalFlow);
}

TEST_F(FlowTest, WholeLoopOwnsItsBreak)
{
    DataFlowSummary s = analyze("for (int v : xs) {\n    if (v < 0) {\n        break;\n    }\n    n += v;\n}", 26);
    EXPECT_TRUE(s.illegal_flow.empty());
    EXPECT_EQ(s.outputs, (std::vector<Variable>{{"n", "int"}}));
    EXPECT_EQ(s.inputs, (std::vector<Variable>{{"xs", "int[]"}, {"n", "int"}}));
}

TEST_F(FlowTest, ClosedFragmentIsVoid)
{
    DataFlowSummary s = analyze("int t = x * 2;\nSystem.out.println(t);", 43);
    EXPECT_EQ(s.inputs, (std::vector<Variable>{{"x", "int"}}));
    EXPECT_TRUE(s.outputs.empty());

    ExtractionPlan p = plan("int t = x * 2;\nSystem.out.println(t);", 43, "show");
    EXPECT_EQ(p.return_type, "void");
    EXPECT_EQ(p.signature, "private void show(int x)");
    EXPECT_EQ(p.call_template, "show(x);");
}

TEST_F(FlowTest, InferredOutputTypeIsUnresolved)
{
    EXPECT_EQ(failure("var t = x * 2;", 49), ErrorCode::UnresolvedType);
}

TEST_F(FlowTest, LoopBackEdgeMakesOutput)
{
    DataFlowSummary s = analyze("last = v;", 58);
    EXPECT_EQ(s.inputs, (std::vector<Variable>{{"v", "int"}}));
    EXPECT_EQ(s.outputs, (std::vector<Variable>{{"last", "int"}}));
}

TEST_F(FlowTest, PartialStatementIsRejected)
{
    const MethodUnit* host = index_.enclosing_method("Flow.java", 6);
    std::size_t first = 0;
    while (host->body_tokens[first].line != 6) {
        ++first;
    }
    EXPECT_THROW(data_flow_at(*host, first + 1, 2), Error);
}

TEST_F(FlowTest, PlanErrors)
{
    const MethodUnit* host = index_.enclosing_method("Flow.java", 43);
    DataFlowSummary s = analyze("int t = x * 2;\nSystem.out.println(t);", 43);
    auto code = [&](const std::string& name) {
        try {
            plan_extraction(s, name, *host, *host->owner);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::LexError;
    };
    EXPECT_EQ(code("inOut"), ErrorCode::NameCollision);
    EXPECT_EQ(code("1abc"), ErrorCode::InvalidIdentifier);
    EXPECT_EQ(code("class"), ErrorCode::InvalidIdentifier);
}

struct Prepared {
    std::unique_ptr<ProjectSession> session;
    ExtractionPlan plan;
    SourceMap before;
};

Prepared prepare(const std::string& dir, const std::string& file, int line, const std::string& name)
{
    Prepared p;
    p.session = ProjectSession::open(fixture(dir));
    Fragment f = fragment_at(read_fixture(dir + "/fragment.txt"), file, line);
    p.plan = prepare_extraction(f, name, p.session->index(), p.session->settings().near_match_threshold);
    p.before = sources_for(p.plan, *p.session);
    return p;
}

TEST(Extraction, TwoSitesGoldenDiff)
{
    Prepared p = prepare("extract/two_sites", "src/shop/Pricing.java", 12, "computeTotal");
    ASSERT_EQ(p.plan.target_sites.size(), 2u);
    EXPECT_EQ(p.plan.signature, "private double computeTotal(double gross, double discount)");

    ExtractionResult r = apply_extraction(p.plan, p.before);
    EXPECT_EQ(r.diff, read_fixture("extract/two_sites/expected.diff"));
    EXPECT_EQ(count_hunks(r.diff), 3u);

    Verification v = verify_by_inlining(p.plan, p.before, r.sources);
    EXPECT_TRUE(v.passed);
    EXPECT_EQ(v.sites.size(), 2u);

    const std::string path = "src/shop/Pricing.java";
    EXPECT_EQ(index_file(r.sources.at(path), path).methods.size(),
              index_file(p.before.at(path), path).methods.size() + 1);
}

TEST(Extraction, HunksAreSitesPlusOneWithoutContext)
{
    for (auto [dir, file, line, name] :
         {std::tuple{"extract/two_sites", "src/shop/Pricing.java", 12, "computeTotal"},
          std::tuple{"extract/void_site", "src/Greeter.java", 5, "printBanner"}}) {
        Prepared p = prepare(dir, file, line, name);
        ExtractionResult r = apply_extraction(p.plan, p.before, 0);
        EXPECT_EQ(count_hunks(r.diff), p.plan.target_sites.size() + 1) << dir;
    }
}

TEST(Extraction, VoidSites)
{
    Prepared p = prepare("extract/void_site", "src/Greeter.java", 5, "printBanner");
    EXPECT_EQ(p.plan.return_type, "void");
    ASSERT_EQ(p.plan.target_sites.size(), 2u);
    ExtractionResult r = apply_extraction(p.plan, p.before);
    EXPECT_TRUE(verify_by_inlining(p.plan, p.before, r.sources).passed);
    EXPECT_NE(r.diff.find("+        printBanner(name);"), std::string::npos);
}

TEST(Extraction, SwappedArgumentsFailAtEverySite)
{
    Prepared p = prepare("extract/two_sites", "src/shop/Pricing.java", 12, "computeTotal");
    ExtractionPlan corrupted = p.plan;
    for (auto& site : corrupted.target_sites) {
        ASSERT_EQ(site.call_arguments.size(), 2u);
        std::swap(site.call_arguments[0], site.call_arguments[1]);
    }
    ExtractionResult r = apply_extraction(corrupted, p.before);
    Verification v = verify_by_inlining(corrupted, p.before, r.sources);
    EXPECT_FALSE(v.passed);
    ASSERT_EQ(v.sites.size(), 2u);
    for (const auto& s : v.sites) {
        EXPECT_FALSE(s.equivalent) << s.file_path << ":" << s.line;
    }
}

TEST(Extraction, StaleSiteIsAllOrNothing)
{
    Prepared p = prepare("extract/two_sites", "src/shop/Pricing.java", 12, "computeTotal");
    SourceMap changed = p.before;
    std::string& text = changed.begin()->second;
    const auto last = text.rfind("net * rate");
    ASSERT_NE(last, std::string::npos);
    text.replace(last, 10, "net * 0.5");
    const SourceMap snapshot = changed;
    try {
        apply_extraction(p.plan, changed);
        FAIL() << "expected StaleSite";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::StaleSite);
    }
    EXPECT_EQ(changed, snapshot);
}

TEST(UnifiedDiff, Format)
{
    std::vector<std::string> lines{"a", "b", "c"};
    std::vector<LineEdit> edits{{1, 1, {"B"}}};
    EXPECT_EQ(unified_diff("f.txt", lines, edits, 0), "--- a/f.txt\n+++ b/f.txt\n@@ -2 +2 @@\n-b\n+B\n");
    EXPECT_EQ(unified_diff("f.txt", lines, edits, 3),
              "--- a/f.txt\n+++ b/f.txt\n@@ -1,3 +1,3 @@\n a\n-b\n+B\n c\n");
    std::vector<LineEdit> insert{{3, 0, {"d"}}};
    EXPECT_EQ(unified_diff("f.txt", lines, insert, 1), "--- a/f.txt\n+++ b/f.txt\n@@ -3 +3,2 @@\n c\n+d\n");
    std::vector<LineEdit> last{{2, 1, {"C"}}};
    EXPECT_EQ(unified_diff("f.txt", lines, last, 0, true, false),
              "--- a/f.txt\n+++ b/f.txt\n@@ -3 +3 @@\n-c\n+C\n\\ No newline at end of file\n");
    EXPECT_EQ(apply_line_edits(lines, edits), (std::vector<std::string>{"a", "B", "c"}));
    EXPECT_EQ(split_lines("x\ny\n"), (std::vector<std::string>{"x", "y"}));
}

} // namespace
} // namespace acp
