#include "acp/error.hpp"
#include "acp/metrics.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

namespace acp {
namespace {

using testing::index_fixture;

constexpr double kTol = 1e-9;
const char* const kIfFragment = "if (x > 0) {\n    sum += x;\n}";

const MethodUnit& method_named(const FileIndex& file, const std::string& name)
{
    for (const auto& m : file.methods) {
        if (m.name == name) {
            return m;
        }
    }
    throw std::runtime_error("no method " + name);
}

TEST(KeywordMetrics, Examples)
{
    auto k = keyword_metrics(validate_fragment(kIfFragment), KeywordSet::all());
    EXPECT_EQ(k.total, 1u);
    EXPECT_NEAR(k.density, 1.0 / 3.0, kTol);

    std::vector<std::string> only_for{"for"};
    k = keyword_metrics(validate_fragment(kIfFragment), KeywordSet::of(only_for));
    EXPECT_EQ(k.total, 0u);
    EXPECT_EQ(k.density, 0.0);

    k = keyword_metrics(validate_fragment("return x;\nreturn y;"), KeywordSet::all());
    EXPECT_EQ(k.total, 2u);
    EXPECT_NEAR(k.density, 1.0, kTol);

    k = keyword_metrics(validate_fragment(kIfFragment), KeywordSet::none());
    EXPECT_EQ(k.total, 0u);
}

TEST(KeywordSet, CatalogueAndUnknownWords)
{
    EXPECT_EQ(KeywordSet::catalogue().size(), 31u);
    EXPECT_EQ(KeywordSet::all().size(), 31u);
    EXPECT_FALSE(KeywordSet::all().contains("public"));
    std::vector<std::string> bad{"public"};
    try {
        KeywordSet::of(bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownKeyword);
    }
}

TEST(CouplingMetrics, FixtureResolution)
{
    FileIndex file = index_fixture("metrics/Accumulator.java");
    const ClassContext* owner = file.classes[0].get();

    Fragment f = validate_fragment(kIfFragment);
    EXPECT_EQ(coupling_metrics(f, owner, Connectivity::Field).count, 1u);
    EXPECT_EQ(coupling_metrics(f, owner, Connectivity::Method).count, 0u);
    auto total = coupling_metrics(f, owner, Connectivity::Total);
    EXPECT_EQ(total.count, 1u);
    EXPECT_NEAR(total.density, 1.0 / 3.0, kTol);

    Fragment shadowed = validate_fragment("int sum = 0;\nsum++;");
    EXPECT_EQ(coupling_metrics(shadowed, owner, Connectivity::Field).count, 0u);

    Fragment call = validate_fragment("helper();");
    EXPECT_EQ(coupling_metrics(call, owner, Connectivity::Method).count, 1u);
    EXPECT_EQ(coupling_metrics(call, owner, Connectivity::Total).count, 1u);

    Fragment before_decl = validate_fragment("sum++;\nint sum = 0;\nsum++;");
    EXPECT_EQ(coupling_metrics(before_decl, owner, Connectivity::Field).count, 1u);
}

TEST(CouplingMetrics, MissingOwner)
{
    try {
        coupling_metrics(validate_fragment("x();"), nullptr, Connectivity::Total);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingContext);
    }
}

TEST(ComplexityMetrics, Examples)
{
    FileIndex file = index_fixture("metrics/Accumulator.java");
    const MethodUnit& add_positive = method_named(file, "addPositive");
    const MethodUnit& helper = method_named(file, "helper");

    auto c = complexity_metrics(validate_fragment(kIfFragment), add_positive);
    EXPECT_NEAR(c.total_area, 4.0, kTol);
    EXPECT_NEAR(c.area_density, 4.0 / 3.0, kTol);
    EXPECT_NEAR(c.method_area, 4.0, kTol);
    EXPECT_NEAR(c.method_depth_density, 4.0 / 3.0, kTol);

    c = complexity_metrics(validate_fragment("sum = 0;"), helper);
    EXPECT_NEAR(c.method_area, 1.0, kTol);
    EXPECT_NEAR(c.method_depth_density, 1.0, kTol);

    c = complexity_metrics(validate_fragment("a();\nb();"), helper);
    EXPECT_NEAR(c.total_area, 2.0, kTol);
    EXPECT_NEAR(c.area_density, 1.0, kTol);
}

TEST(SizeMetrics, Examples)
{
    FileIndex file = index_fixture("metrics/Accumulator.java");
    const MethodUnit& add_positive = method_named(file, "addPositive");

    auto s = size_metrics(validate_fragment(kIfFragment), nullptr, SizeScope::Segment);
    EXPECT_EQ(s.lines, 3u);
    EXPECT_EQ(s.symbols, 16u);
    EXPECT_NEAR(s.symbol_density, 16.0 / 3.0, kTol);

    s = size_metrics(validate_fragment("x = 1;"), nullptr, SizeScope::Segment);
    EXPECT_EQ(s.lines, 1u);
    EXPECT_EQ(s.symbols, 4u);
    EXPECT_NEAR(s.symbol_density, 4.0, kTol);

    // `void addPositive(int x) {` .. `}` spans five lines and 39 non-blank characters.
    s = size_metrics(validate_fragment("x = 1;"), &add_positive, SizeScope::MethodDeclaration);
    EXPECT_EQ(s.lines, 5u);
    EXPECT_EQ(s.symbols, 39u);
    EXPECT_NEAR(s.symbol_density, 39.0 / 5.0, kTol);

    try {
        size_metrics(validate_fragment("x = 1;"), nullptr, SizeScope::MethodDeclaration);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingContext);
    }
}

TEST(MetricVector, DensityTimesLinesEqualsTotal)
{
    FileIndex file = index_fixture("metrics/Accumulator.java");
    for (const auto& m : file.methods) {
        MetricVector v = method_metric_vector(m, KeywordSet::all());
        double lines = v[SubmetricId::SizeLinesSegment];
        EXPECT_NEAR(v[SubmetricId::KeywordDensity] * lines, v[SubmetricId::KeywordTotal], kTol);
        EXPECT_NEAR(v[SubmetricId::CouplingDensityTotal] * lines, v[SubmetricId::CouplingTotalTotal], kTol);
        EXPECT_NEAR(v[SubmetricId::ComplexityAreaDensity] * lines, v[SubmetricId::ComplexityTotalArea], kTol);
        EXPECT_NEAR(v[SubmetricId::SizeSymbolDensitySegment] * lines, v[SubmetricId::SizeSymbolsSegment], kTol);
        EXPECT_NEAR(v[SubmetricId::SizeSymbolDensityMethod] * v[SubmetricId::SizeLinesMethod],
                    v[SubmetricId::SizeSymbolsMethod], kTol);
    }
}

TEST(MetricVector, ScaledMethodHandValues)
{
    FileIndex file = index_fixture("metrics/Accumulator.java");
    MetricVector v = method_metric_vector(method_named(file, "scaled"), KeywordSet::all());
    EXPECT_EQ(v[SubmetricId::KeywordTotal], 2.0);
    EXPECT_EQ(v[SubmetricId::CouplingTotalField], 0.0);
    EXPECT_EQ(v[SubmetricId::CouplingTotalMethod], 1.0);
    EXPECT_EQ(v[SubmetricId::SizeLinesSegment], 4.0);
    EXPECT_EQ(v[SubmetricId::ComplexityTotalArea], 4.0);
}

TEST(MetricVector, BlankLineAppendKeepsTotalsAndDensities)
{
    FileIndex file = index_fixture("metrics/Accumulator.java");
    const MethodUnit& host = method_named(file, "addPositive");
    MetricVector a = compute_metric_vector(validate_fragment(kIfFragment), host, KeywordSet::all());
    MetricVector b = compute_metric_vector(validate_fragment(std::string(kIfFragment) + "\n\n"), host,
                                           KeywordSet::all());
    for (SubmetricId id : all_submetrics()) {
        EXPECT_LE(b[id], a[id] + kTol) << submetric_name(id);
    }
    EXPECT_EQ(a[SubmetricId::SizeSymbolsSegment], b[SubmetricId::SizeSymbolsSegment]);
    EXPECT_EQ(a[SubmetricId::KeywordTotal], b[SubmetricId::KeywordTotal]);
}

TEST(MetricVector, KeywordTotalMonotoneInKeywordSet)
{
    Fragment f = validate_fragment("for (int i = 0; i < n; i++) {\n  if (i > 2) {\n    break;\n  }\n}\nreturn n;");
    KeywordSet set = KeywordSet::none();
    std::size_t previous = 0;
    for (auto word : KeywordSet::catalogue()) {
        set.insert(word);
        std::size_t now = keyword_metrics(f, set).total;
        EXPECT_GE(now, previous);
        previous = now;
    }
    EXPECT_EQ(previous, 5u);
}

TEST(SubmetricNames, RoundTrip)
{
    for (SubmetricId id : all_submetrics()) {
        EXPECT_EQ(parse_submetric(submetric_name(id)), id);
    }
    EXPECT_EQ(submetric_name(SubmetricId::ComplexityTotalArea), "complexity.total_area");
    EXPECT_EQ(submetric_name(SubmetricId::SizeLinesSegment), "size.lines.segment");
    EXPECT_FALSE(parse_submetric("size.lines"));
}

TEST(Distributions, SortedSamples)
{
    MetricVector a, b, c;
    a.set(SubmetricId::SizeLinesSegment, 5);
    b.set(SubmetricId::SizeLinesSegment, 2);
    c.set(SubmetricId::SizeLinesSegment, 9);
    std::vector<MetricVector> vectors{a, b, c};
    ProjectDistribution d(vectors);
    EXPECT_EQ(d.sample(SubmetricId::SizeLinesSegment), (std::vector<double>{2, 5, 9}));
    EXPECT_EQ(d.sample_size(), 3u);
}

TEST(Distributions, EmptyProject)
{
    std::vector<const MethodUnit*> none;
    try {
        build_distributions(none, KeywordSet::all());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyDistribution);
    }
}

TEST(Percentile, Examples)
{
    std::vector<double> s{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    EXPECT_EQ(percentile_threshold(s, 50), 5);
    EXPECT_EQ(percentile_threshold(s, 100), 10);
    EXPECT_EQ(percentile_threshold(s, 1), 1);
    EXPECT_EQ(percentile_threshold(s, 51), 6);
}

TEST(Percentile, Errors)
{
    std::vector<double> empty;
    std::vector<double> one{3};
    EXPECT_THROW(percentile_threshold(empty, 50), Error);
    for (int bad : {0, 101, -5}) {
        try {
            percentile_threshold(one, bad);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::InvalidSensitivity);
        }
    }
}

} // namespace
} // namespace acp
