#include "acp/metrics.hpp"

#include "acp/error.hpp"
#include "acp/statements.hpp"

#include <algorithm>

namespace acp {

namespace {

constexpr std::array<std::string_view, 31> kKeywordCatalogue = {
    "continue", "for", "new", "switch", "assert", "synchronized", "boolean", "do",
    "if", "this", "break", "double", "throw", "byte", "else", "case", "instanceof",
    "return", "transient", "catch", "int", "short", "try", "char", "final",
    "finally", "long", "float", "super", "while", "strictfp",
};

constexpr std::array<SubmetricId, kSubmetricCount> kAll = {
    SubmetricId::KeywordTotal,
    SubmetricId::KeywordDensity,
    SubmetricId::CouplingTotalTotal,
    SubmetricId::CouplingTotalField,
    SubmetricId::CouplingTotalMethod,
    SubmetricId::CouplingDensityTotal,
    SubmetricId::CouplingDensityField,
    SubmetricId::CouplingDensityMethod,
    SubmetricId::ComplexityTotalArea,
    SubmetricId::ComplexityAreaDensity,
    SubmetricId::ComplexityMethodArea,
    SubmetricId::ComplexityMethodDepthDensity,
    SubmetricId::SizeLinesSegment,
    SubmetricId::SizeLinesMethod,
    SubmetricId::SizeSymbolsSegment,
    SubmetricId::SizeSymbolsMethod,
    SubmetricId::SizeSymbolDensitySegment,
    SubmetricId::SizeSymbolDensityMethod,
};

constexpr std::array<std::string_view, kSubmetricCount> kNames = {
    "keyword.total",
    "keyword.density",
    "coupling.total.total",
    "coupling.total.field",
    "coupling.total.method",
    "coupling.density.total",
    "coupling.density.field",
    "coupling.density.method",
    "complexity.total_area",
    "complexity.area_density",
    "complexity.method_area",
    "complexity.method_depth_density",
    "size.lines.segment",
    "size.lines.method_declaration",
    "size.symbols.segment",
    "size.symbols.method_declaration",
    "size.symbol_density.segment",
    "size.symbol_density.method_declaration",
};

struct CouplingCounts {
    std::size_t field{0};
    std::size_t method{0};
};

CouplingCounts count_coupling(const Fragment& fragment, const ClassContext& owner)
{
    const auto& t = fragment.tokens;
    std::vector<Declaration> locals;
    try {
        locals = collect_declarations(parse_block_statements(t));
    } catch (const Error&) {
        // unparsable scope: no shadowing information
    }
    auto shadowed = [&](const std::string& name, std::size_t at) {
        return std::any_of(locals.begin(), locals.end(),
                           [&](const Declaration& d) { return d.name == name && d.token <= at; });
    };

    CouplingCounts counts;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!t[i].is_identifier()) {
            continue;
        }
        const bool qualified = i > 0 && t[i - 1].is(".");
        const bool via_this = qualified && i > 1 && t[i - 2].is("this");
        if (qualified && !via_this) {
            continue;
        }
        const bool call = i + 1 < t.size() && t[i + 1].is("(");
        if (call) {
            const bool constructor = i > 0 && t[i - 1].is("new");
            if (!constructor && owner.method_names.count(t[i].text) > 0) {
                ++counts.method;
            }
            continue;
        }
        if (owner.field_names.count(t[i].text) == 0) {
            continue;
        }
        if (!via_this && shadowed(t[i].text, i)) {
            continue;
        }
        ++counts.field;
    }
    return counts;
}

double per_line(double value, int lines)
{
    return lines > 0 ? value / static_cast<double>(lines) : 0.0;
}

double sum(const std::vector<int>& v)
{
    double s = 0.0;
    for (int x : v) {
        s += x;
    }
    return s;
}

} // namespace

std::string_view to_string(MetricCategory category) noexcept
{
    switch (category) {
    case MetricCategory::Keyword: return "keyword";
    case MetricCategory::Coupling: return "coupling";
    case MetricCategory::Complexity: return "complexity";
    case MetricCategory::Size: return "size";
    }
    return "unknown";
}

std::optional<MetricCategory> parse_category(std::string_view name) noexcept
{
    for (auto c : {MetricCategory::Keyword, MetricCategory::Coupling, MetricCategory::Complexity,
                   MetricCategory::Size}) {
        if (to_string(c) == name) {
            return c;
        }
    }
    return std::nullopt;
}

const std::array<SubmetricId, kSubmetricCount>& all_submetrics() noexcept
{
    return kAll;
}

std::string_view submetric_name(SubmetricId id) noexcept
{
    return kNames[static_cast<std::size_t>(id)];
}

std::optional<SubmetricId> parse_submetric(std::string_view name) noexcept
{
    for (std::size_t i = 0; i < kSubmetricCount; ++i) {
        if (kNames[i] == name) {
            return kAll[i];
        }
    }
    return std::nullopt;
}

const std::array<SubmetricId, kSubmetricCount>& submetrics_by_name() noexcept
{
    static const auto sorted = [] {
        auto ids = kAll;
        std::sort(ids.begin(), ids.end(),
                  [](SubmetricId a, SubmetricId b) { return submetric_name(a) < submetric_name(b); });
        return ids;
    }();
    return sorted;
}

MetricCategory category_of(SubmetricId id) noexcept
{
    const auto i = static_cast<std::size_t>(id);
    if (i <= static_cast<std::size_t>(SubmetricId::KeywordDensity)) {
        return MetricCategory::Keyword;
    }
    if (i <= static_cast<std::size_t>(SubmetricId::CouplingDensityMethod)) {
        return MetricCategory::Coupling;
    }
    if (i <= static_cast<std::size_t>(SubmetricId::ComplexityMethodDepthDensity)) {
        return MetricCategory::Complexity;
    }
    return MetricCategory::Size;
}

const std::array<std::string_view, 31>& KeywordSet::catalogue() noexcept
{
    return kKeywordCatalogue;
}

KeywordSet KeywordSet::all()
{
    KeywordSet s;
    for (auto w : kKeywordCatalogue) {
        s.words_.emplace(w);
    }
    return s;
}

KeywordSet KeywordSet::of(std::span<const std::string> words)
{
    KeywordSet s;
    for (const auto& w : words) {
        s.insert(w);
    }
    return s;
}

void KeywordSet::insert(std::string_view word)
{
    if (std::find(kKeywordCatalogue.begin(), kKeywordCatalogue.end(), word) == kKeywordCatalogue.end()) {
        throw Error(ErrorCode::UnknownKeyword, "'" + std::string(word) + "' is not a configurable keyword");
    }
    words_.emplace(word);
}

KeywordMetrics keyword_metrics(const Fragment& fragment, const KeywordSet& enabled)
{
    KeywordMetrics m;
    for (const auto& t : fragment.tokens) {
        if (t.kind == TokenKind::Keyword && enabled.contains(t.text)) {
            ++m.total;
        }
    }
    m.density = per_line(static_cast<double>(m.total), fragment.line_count);
    return m;
}

CouplingMetrics coupling_metrics(const Fragment& fragment, const ClassContext* owner, Connectivity connectivity)
{
    if (owner == nullptr) {
        throw Error(ErrorCode::MissingContext, "coupling needs the enclosing class");
    }
    const CouplingCounts counts = count_coupling(fragment, *owner);
    CouplingMetrics m;
    switch (connectivity) {
    case Connectivity::Total: m.count = counts.field + counts.method; break;
    case Connectivity::Field: m.count = counts.field; break;
    case Connectivity::Method: m.count = counts.method; break;
    }
    m.density = per_line(static_cast<double>(m.count), fragment.line_count);
    return m;
}

ComplexityMetrics complexity_metrics(const Fragment& fragment, const MethodUnit& enclosing)
{
    ComplexityMetrics m;
    m.total_area = sum(nesting_profile(fragment));
    m.area_density = per_line(m.total_area, fragment.line_count);
    m.method_area = sum(nesting_profile(enclosing));
    m.method_depth_density = per_line(m.method_area, enclosing.line_count());
    return m;
}

SizeMetrics size_metrics(const Fragment& fragment, const MethodUnit* enclosing, SizeScope scope)
{
    SizeMetrics m;
    if (scope == SizeScope::Segment) {
        m.lines = static_cast<std::size_t>(fragment.line_count);
        m.symbols = fragment.symbol_count;
    } else {
        if (enclosing == nullptr) {
            throw Error(ErrorCode::MissingContext, "method-declaration size needs the enclosing method");
        }
        m.lines = static_cast<std::size_t>(enclosing->declaration_end_line - enclosing->declaration_start_line + 1);
        m.symbols = count_symbols(enclosing->declaration_text);
    }
    m.symbol_density = per_line(static_cast<double>(m.symbols), static_cast<int>(m.lines));
    return m;
}

MetricVector compute_metric_vector(const Fragment& fragment, const MethodUnit& enclosing, const KeywordSet& keywords)
{
    MetricVector v;
    const auto kw = keyword_metrics(fragment, keywords);
    v.set(SubmetricId::KeywordTotal, static_cast<double>(kw.total));
    v.set(SubmetricId::KeywordDensity, kw.density);

    if (!enclosing.owner) {
        throw Error(ErrorCode::MissingContext, "method " + enclosing.id.str() + " has no owning class");
    }
    const CouplingCounts counts = count_coupling(fragment, *enclosing.owner);
    const auto total = static_cast<double>(counts.field + counts.method);
    const auto field = static_cast<double>(counts.field);
    const auto method = static_cast<double>(counts.method);
    v.set(SubmetricId::CouplingTotalTotal, total);
    v.set(SubmetricId::CouplingTotalField, field);
    v.set(SubmetricId::CouplingTotalMethod, method);
    v.set(SubmetricId::CouplingDensityTotal, per_line(total, fragment.line_count));
    v.set(SubmetricId::CouplingDensityField, per_line(field, fragment.line_count));
    v.set(SubmetricId::CouplingDensityMethod, per_line(method, fragment.line_count));

    const auto cx = complexity_metrics(fragment, enclosing);
    v.set(SubmetricId::ComplexityTotalArea, cx.total_area);
    v.set(SubmetricId::ComplexityAreaDensity, cx.area_density);
    v.set(SubmetricId::ComplexityMethodArea, cx.method_area);
    v.set(SubmetricId::ComplexityMethodDepthDensity, cx.method_depth_density);

    const auto seg = size_metrics(fragment, &enclosing, SizeScope::Segment);
    const auto decl = size_metrics(fragment, &enclosing, SizeScope::MethodDeclaration);
    v.set(SubmetricId::SizeLinesSegment, static_cast<double>(seg.lines));
    v.set(SubmetricId::SizeLinesMethod, static_cast<double>(decl.lines));
    v.set(SubmetricId::SizeSymbolsSegment, static_cast<double>(seg.symbols));
    v.set(SubmetricId::SizeSymbolsMethod, static_cast<double>(decl.symbols));
    v.set(SubmetricId::SizeSymbolDensitySegment, seg.symbol_density);
    v.set(SubmetricId::SizeSymbolDensityMethod, decl.symbol_density);
    return v;
}

MetricVector method_metric_vector(const MethodUnit& method, const KeywordSet& keywords)
{
    return compute_metric_vector(fragment_from_method(method), method, keywords);
}

ProjectDistribution::ProjectDistribution(std::span<const MetricVector> per_method)
    : sample_size_(per_method.size())
{
    for (std::size_t k = 0; k < kSubmetricCount; ++k) {
        auto& column = samples_[k];
        column.reserve(per_method.size());
        for (const auto& v : per_method) {
            column.push_back(v[kAll[k]]);
        }
        std::sort(column.begin(), column.end());
    }
}

ProjectDistribution build_distributions(std::span<const MethodUnit* const> methods, const KeywordSet& keywords)
{
    if (methods.empty()) {
        throw Error(ErrorCode::EmptyDistribution, "no indexed methods");
    }
    std::vector<MetricVector> vectors;
    vectors.reserve(methods.size());
    for (const MethodUnit* m : methods) {
        vectors.push_back(method_metric_vector(*m, keywords));
    }
    return ProjectDistribution(vectors);
}

double percentile_threshold(std::span<const double> sorted_sample, int sensitivity)
{
    if (sorted_sample.empty()) {
        throw Error(ErrorCode::EmptyDistribution, "empty sample");
    }
    if (sensitivity < 1 || sensitivity > 100) {
        throw Error(ErrorCode::InvalidSensitivity,
                    "sensitivity " + std::to_string(sensitivity) + " outside 1..100");
    }
    const std::size_t n = sorted_sample.size();
    std::size_t rank = (static_cast<std::size_t>(sensitivity) * n + 99) / 100;
    rank = std::clamp<std::size_t>(rank, 1, n);
    return sorted_sample[rank - 1];
}

ThresholdMap thresholds_for(const ProjectDistribution& distribution, const Sensitivities& sensitivities)
{
    if (distribution.empty()) {
        throw Error(ErrorCode::EmptyDistribution, "no indexed methods");
    }
    ThresholdMap out;
    for (SubmetricId id : kAll) {
        out[id] = percentile_threshold(distribution.sample(id), sensitivities[category_of(id)]);
    }
    return out;
}

} // namespace acp
