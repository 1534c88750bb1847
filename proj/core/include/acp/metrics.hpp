#pragma once

#include "acp/source_model.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace acp {

enum class MetricCategory : std::uint8_t { Keyword, Coupling, Complexity, Size };

inline constexpr std::size_t kCategoryCount = 4;

std::string_view to_string(MetricCategory category) noexcept;
std::optional<MetricCategory> parse_category(std::string_view name) noexcept;

/**
 * Every concrete submetric, one per measurement option and qualifier.
 *
 * Coupling ids carry a connectivity (total | field | method), size ids a
 * scope (segment | method declaration). Stable names are listed in
 * submetric_name() and used in configuration files and JSON output.
 */
enum class SubmetricId : std::uint8_t {
    KeywordTotal,
    KeywordDensity,
    CouplingTotalTotal,
    CouplingTotalField,
    CouplingTotalMethod,
    CouplingDensityTotal,
    CouplingDensityField,
    CouplingDensityMethod,
    ComplexityTotalArea,
    ComplexityAreaDensity,
    ComplexityMethodArea,
    ComplexityMethodDepthDensity,
    SizeLinesSegment,
    SizeLinesMethod,
    SizeSymbolsSegment,
    SizeSymbolsMethod,
    SizeSymbolDensitySegment,
    SizeSymbolDensityMethod,
};

inline constexpr std::size_t kSubmetricCount = 18;

const std::array<SubmetricId, kSubmetricCount>& all_submetrics() noexcept;
std::string_view submetric_name(SubmetricId id) noexcept;
std::optional<SubmetricId> parse_submetric(std::string_view name) noexcept;
MetricCategory category_of(SubmetricId id) noexcept;

/// Submetric ids in ascending order of their stable names.
const std::array<SubmetricId, kSubmetricCount>& submetrics_by_name() noexcept;

enum class Connectivity : std::uint8_t { Total, Field, Method };
enum class SizeScope : std::uint8_t { Segment, MethodDeclaration };

/// Subset of the fixed 31-word keyword catalogue.
class KeywordSet {
public:
    static const std::array<std::string_view, 31>& catalogue() noexcept;

    /// All 31 catalogue keywords.
    static KeywordSet all();
    static KeywordSet none() { return KeywordSet{}; }

    /// Throws Error(UnknownKeyword) for words outside the catalogue.
    static KeywordSet of(std::span<const std::string> words);

    void insert(std::string_view word);
    bool contains(std::string_view word) const { return words_.count(std::string(word)) > 0; }
    std::size_t size() const noexcept { return words_.size(); }
    const std::set<std::string>& words() const noexcept { return words_; }

    friend bool operator==(const KeywordSet&, const KeywordSet&) = default;

private:
    std::set<std::string> words_;
};

struct KeywordMetrics {
    std::size_t total{0};
    double density{0.0};
};

struct CouplingMetrics {
    std::size_t count{0};
    double density{0.0};
};

struct ComplexityMetrics {
    double total_area{0.0};
    double area_density{0.0};
    double method_area{0.0};
    double method_depth_density{0.0};
};

struct SizeMetrics {
    std::size_t lines{0};
    std::size_t symbols{0};
    double symbol_density{0.0};
};

KeywordMetrics keyword_metrics(const Fragment& fragment, const KeywordSet& enabled);

/// Throws Error(MissingContext) when `owner` is null.
CouplingMetrics coupling_metrics(const Fragment& fragment, const ClassContext* owner, Connectivity connectivity);

ComplexityMetrics complexity_metrics(const Fragment& fragment, const MethodUnit& enclosing);

/// Throws Error(MissingContext) for the method-declaration scope without an enclosing method.
SizeMetrics size_metrics(const Fragment& fragment, const MethodUnit* enclosing, SizeScope scope);

class MetricVector {
public:
    double operator[](SubmetricId id) const noexcept { return values_[static_cast<std::size_t>(id)]; }
    void set(SubmetricId id, double value) noexcept { values_[static_cast<std::size_t>(id)] = value; }

    friend bool operator==(const MetricVector&, const MetricVector&) = default;

private:
    std::array<double, kSubmetricCount> values_{};
};

/// All submetrics of a fragment pasted inside `enclosing` (its owner supplies coupling context).
MetricVector compute_metric_vector(const Fragment& fragment, const MethodUnit& enclosing, const KeywordSet& keywords);

/// All submetrics of a method body taken as its own segment.
MetricVector method_metric_vector(const MethodUnit& method, const KeywordSet& keywords);

/// Per-submetric ascending samples, one value per indexed method.
class ProjectDistribution {
public:
    ProjectDistribution() = default;

    /// Sorts each submetric column of the given per-method vectors.
    explicit ProjectDistribution(std::span<const MetricVector> per_method);

    const std::vector<double>& sample(SubmetricId id) const noexcept { return samples_[static_cast<std::size_t>(id)]; }
    std::size_t sample_size() const noexcept { return sample_size_; }
    bool empty() const noexcept { return sample_size_ == 0; }

    friend bool operator==(const ProjectDistribution&, const ProjectDistribution&) = default;

private:
    std::array<std::vector<double>, kSubmetricCount> samples_{};
    std::size_t sample_size_{0};
};

/// Throws Error(EmptyDistribution) for an empty method list.
ProjectDistribution build_distributions(std::span<const MethodUnit* const> methods, const KeywordSet& keywords);

/**
 * Nearest-rank percentile: sample[ceil(sensitivity / 100 * n)] (1-based).
 *
 * Throws Error(EmptyDistribution) or Error(InvalidSensitivity).
 */
double percentile_threshold(std::span<const double> sorted_sample, int sensitivity);

struct Sensitivities {
    std::array<int, kCategoryCount> values{50, 50, 50, 50};

    int operator[](MetricCategory c) const noexcept { return values[static_cast<std::size_t>(c)]; }
    int& operator[](MetricCategory c) noexcept { return values[static_cast<std::size_t>(c)]; }

    friend bool operator==(const Sensitivities&, const Sensitivities&) = default;
};

using ThresholdMap = std::map<SubmetricId, double>;

/// Thresholds for every submetric. Throws Error(EmptyDistribution).
ThresholdMap thresholds_for(const ProjectDistribution& distribution, const Sensitivities& sensitivities);

} // namespace acp
