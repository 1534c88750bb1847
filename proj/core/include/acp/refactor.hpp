#pragma once

#include "acp/clone_detect.hpp"
#include "acp/source_model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace acp {

struct Variable {
    std::string name;
    std::string type;
    friend bool operator==(const Variable&, const Variable&) = default;
};

/**
 * Data flow of a statement span relative to its enclosing method.
 *
 * `inputs` are variables declared before the span (locals or parameters)
 * whose value the span may read, in first-use order. `outputs` are variables
 * the span declares or assigns that are read after it, including reads
 * reached through an enclosing loop. An in-out variable appears in both.
 * `locals_to_declare` are pre-declared variables whose first use in the span
 * is an unconditional plain assignment; the extracted method declares them
 * itself instead of taking them as parameters.
 */
struct DataFlowSummary {
    std::vector<Variable> inputs;
    std::vector<Variable> outputs;
    std::vector<Variable> locals_to_declare;
    bool output_declared_in_span{false};
    std::vector<std::string> illegal_flow;

    bool feasible() const noexcept { return outputs.size() <= 1 && illegal_flow.empty(); }
    friend bool operator==(const DataFlowSummary&, const DataFlowSummary&) = default;
};

/**
 * Data flow of body_tokens[first, first + count) of `method`, without
 * feasibility checks. Throws Error(NotStatementSpan) when the range is not a
 * run of sibling statements and Error(SyntaxError) when the body does not parse.
 */
DataFlowSummary data_flow_at(const MethodUnit& method, std::size_t first, std::size_t count);

/**
 * Data flow of a fragment at its paste site (or its first occurrence when it
 * has none) inside `enclosing`.
 *
 * Throws Error(TooManyOutputs), Error(IllegalFlow), Error(UnresolvedType),
 * Error(NotStatementSpan).
 */
DataFlowSummary analyze_extractability(const Fragment& fragment, const MethodUnit& enclosing);

/// One exact copy to be replaced by a call.
struct ExtractionSite {
    MethodId method;
    std::string file_path;
    MatchSpan span;
    std::size_t begin_offset{0};   ///< file offset of the first replaced token
    std::size_t end_offset{0};     ///< one past the last replaced character
    std::vector<std::string> token_texts;
    std::vector<std::string> call_arguments;
    friend bool operator==(const ExtractionSite&, const ExtractionSite&) = default;
};

struct ExtractionPlan {
    std::string method_name;
    std::vector<Parameter> parameters;
    std::string return_type{"void"};
    std::optional<Variable> output;
    bool output_declared_in_span{false};
    std::vector<Variable> locals_to_declare;
    bool is_static{false};
    std::string signature;       ///< e.g. `private static int compute(int x)`
    std::string call_template;   ///< e.g. `int y = compute(x);`
    std::string body_text;       ///< body lines, dedented, without braces
    std::vector<ExtractionSite> target_sites;
    std::string insertion_file;
    int insertion_line{0};       ///< new method goes after this line
    MethodId host;
};

/**
 * Builds the signature, call template and insertion point.
 *
 * Throws Error(InvalidIdentifier), Error(NameCollision), or
 * Error(TooManyOutputs)/Error(IllegalFlow) for an infeasible summary.
 */
ExtractionPlan plan_extraction(const DataFlowSummary& summary, const std::string& name,
                               const MethodUnit& enclosing, const ClassContext& owner);

/// Call statement for one site, e.g. `y = compute(a, b);`.
std::string instantiate_call(const ExtractionPlan& plan, const std::vector<std::string>& arguments);

/**
 * Fills `plan.target_sites` and `plan.body_text` from the exact matches.
 *
 * The paste-site copy is always a site. Another exact copy becomes a site
 * when it lies in a method of the same class, can call the new method
 * (static context compatible), and has the same data flow as the paste site.
 * Near matches are never sites.
 */
void select_sites(ExtractionPlan& plan, const Fragment& fragment, const std::vector<CloneMatch>& matches,
                  const ProjectIndex& index);

/// Full pipeline for a paste: analysis, plan and site selection.
ExtractionPlan prepare_extraction(const Fragment& fragment, const std::string& name, const ProjectIndex& index,
                                  double near_threshold);

using SourceMap = std::map<std::string, std::string>;

struct ExtractionResult {
    SourceMap sources;
    std::string diff;
};

/**
 * Replaces every site with its call and inserts the new method.
 *
 * All-or-nothing: throws Error(StaleSite) if any site no longer matches.
 */
ExtractionResult apply_extraction(const ExtractionPlan& plan, const SourceMap& sources, std::size_t context = 3);

/// Text of the generated method, one entry per line.
std::vector<std::string> render_method(const ExtractionPlan& plan, const std::string& indent,
                                       const std::string& unit);

struct SiteVerdict {
    std::string file_path;
    int line{0};
    bool equivalent{false};
    std::string detail;
};

struct Verification {
    bool passed{false};
    std::vector<SiteVerdict> sites;
};

/**
 * Inlines the generated method at each call in `after` and compares the
 * resulting tokens with each site's tokens in `before`.
 */
Verification verify_by_inlining(const ExtractionPlan& plan, const SourceMap& before, const SourceMap& after);

} // namespace acp
