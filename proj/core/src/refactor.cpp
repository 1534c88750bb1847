#include "acp/refactor.hpp"

#include "acp/error.hpp"
#include "acp/statements.hpp"
#include "acp/unified_diff.hpp"

#include <algorithm>
#include <set>

namespace acp {

namespace {

struct ScopedDecl {
    std::string name;
    std::string type;
    std::ptrdiff_t token{-1};   ///< -1 for parameters
    std::size_t scope_end{0};
    bool initialized{true};
};

void gather_declarations(std::span<const Token> t, const std::vector<Statement>& list, std::size_t parent_end,
                         std::vector<ScopedDecl>& out)
{
    for (const Statement& s : list) {
        if (s.kind == StatementKind::LambdaBody) {
            continue;
        }
        for (const Declaration& d : s.declarations) {
            const bool local = s.kind == StatementKind::LocalVariable;
            const bool initialized = !local || (d.token + 1 < t.size() && t[d.token + 1].is("="));
            out.push_back(ScopedDecl{d.name, d.type, static_cast<std::ptrdiff_t>(d.token), local ? parent_end : s.end,
                                     initialized});
        }
        gather_declarations(t, s.children, s.end, out);
    }
}

struct SiblingRun {
    const std::vector<Statement>* list{nullptr};
    std::size_t first{0};
    std::size_t last{0};
    std::vector<const Statement*> ancestors;
};

bool find_run(const std::vector<Statement>& list, std::size_t begin, std::size_t end, SiblingRun& run)
{
    for (std::size_t i = 0; i < list.size(); ++i) {
        const Statement& s = list[i];
        if (s.begin == begin) {
            for (std::size_t j = i; j < list.size(); ++j) {
                if (list[j].end == end) {
                    run.list = &list;
                    run.first = i;
                    run.last = j;
                    return true;
                }
                if (list[j].end > end) {
                    break;
                }
            }
        }
        if (s.kind != StatementKind::LambdaBody && s.begin <= begin && end <= s.end) {
            run.ancestors.push_back(&s);
            if (find_run(s.children, begin, end, run)) {
                return true;
            }
            run.ancestors.pop_back();
        }
    }
    return false;
}

bool is_assignment_operator(std::string_view op)
{
    static const std::set<std::string_view> ops{"=",  "+=", "-=",  "*=",  "/=", "%=",
                                                "&=", "|=", "^=", "<<=", ">>=", ">>>="};
    return ops.count(op) != 0;
}

enum class Use { Definition, Read, PlainWrite, ReadWrite };

struct Reference {
    std::size_t token{0};
    std::size_t decl{0};
    Use use{Use::Read};
};

class FlowAnalysis {
public:
    explicit FlowAnalysis(const MethodUnit& method) : t_(method.body_tokens)
    {
        statements_ = parse_block_statements(t_);
        for (const Parameter& p : method.parameters) {
            decls_.push_back(ScopedDecl{p.name, p.type, -1, t_.size(), true});
        }
        gather_declarations(t_, statements_, t_.size(), decls_);
        for (std::size_t k = 0; k < t_.size(); ++k) {
            if (auto r = reference_at(k)) {
                refs_.push_back(*r);
            }
        }
    }

    DataFlowSummary run(std::size_t first, std::size_t count) const
    {
        const std::size_t begin = first;
        const std::size_t end = first + count;
        SiblingRun run;
        if (count == 0 || !find_run(statements_, begin, end, run)) {
            throw Error(ErrorCode::NotStatementSpan, "selected tokens are not a run of whole sibling statements",
                        count == 0 ? 0 : t_[first].line);
        }

        DataFlowSummary summary;
        check_flow(run, summary.illegal_flow);

        std::set<std::size_t> run_starts;
        for (std::size_t i = run.first; i <= run.last; ++i) {
            run_starts.insert((*run.list)[i].begin);
        }

        struct Usage {
            std::size_t first_ref{0};
            bool first_is_unconditional_write{false};
            bool written{false};
            bool used_after{false};
            bool used_before_in_loop{false};
            bool touched_before{false};
        };
        std::map<std::size_t, Usage> used;
        for (const Reference& r : refs_) {
            if (r.token < begin || r.token >= end) {
                continue;
            }
            auto [it, inserted] = used.try_emplace(r.decl);
            Usage& u = it->second;
            if (inserted) {
                u.first_ref = r.token;
                u.first_is_unconditional_write = r.use == Use::PlainWrite && run_starts.count(r.token) != 0;
            }
            u.written = u.written || r.use == Use::PlainWrite || r.use == Use::ReadWrite;
        }
        for (auto& [d, u] : used) {
            const ScopedDecl& decl = decls_[d];
            const Statement* loop = outermost_loop_after(run, decl.token);
            for (const Reference& r : refs_) {
                if (r.decl != d) {
                    continue;
                }
                if (r.token < begin && static_cast<std::ptrdiff_t>(r.token) > decl.token) {
                    u.touched_before = true;
                }
                if (r.token >= end) {
                    u.used_after = true;
                } else if (loop != nullptr && r.token >= loop->begin && r.token < begin) {
                    u.used_before_in_loop = true;
                }
            }
        }

        std::vector<std::pair<std::size_t, Variable>> inputs;
        std::vector<std::pair<std::ptrdiff_t, Variable>> outputs;
        for (const auto& [d, u] : used) {
            const ScopedDecl& decl = decls_[d];
            Variable v{decl.name, decl.type};
            const bool inside = decl.token >= static_cast<std::ptrdiff_t>(begin) &&
                                decl.token < static_cast<std::ptrdiff_t>(end);
            if (inside) {
                if (u.used_after) {
                    outputs.emplace_back(decl.token, v);
                    summary.output_declared_in_span = true;
                }
                continue;
            }
            // Unassigned at entry: Java's definite assignment rules guarantee the span writes it before reading.
            const bool unassigned = !decl.initialized && !u.touched_before;
            if (u.first_is_unconditional_write || unassigned) {
                summary.locals_to_declare.push_back(v);
            } else {
                inputs.emplace_back(u.first_ref, v);
            }
            if (u.written && (u.used_after || u.used_before_in_loop)) {
                outputs.emplace_back(decl.token, v);
            }
        }
        std::sort(inputs.begin(), inputs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::sort(outputs.begin(), outputs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [k, v] : inputs) {
            summary.inputs.push_back(std::move(v));
        }
        for (auto& [k, v] : outputs) {
            summary.outputs.push_back(std::move(v));
        }
        if (summary.outputs.size() != 1) {
            summary.output_declared_in_span = false;
        }
        return summary;
    }

private:
    std::optional<Reference> reference_at(std::size_t k) const
    {
        const Token& tk = t_[k];
        if (!tk.is_identifier()) {
            return std::nullopt;
        }
        if (k > 0 && (t_[k - 1].is(".") || t_[k - 1].is("::"))) {
            return std::nullopt;
        }
        if (k + 1 < t_.size() && t_[k + 1].is("(")) {
            return std::nullopt;
        }
        std::optional<std::size_t> best;
        for (std::size_t d = 0; d < decls_.size(); ++d) {
            const ScopedDecl& decl = decls_[d];
            if (decl.name != tk.text || decl.token > static_cast<std::ptrdiff_t>(k) || k >= decl.scope_end) {
                continue;
            }
            if (!best || decls_[*best].token < decl.token) {
                best = d;
            }
        }
        if (!best) {
            return std::nullopt;
        }
        Reference r{k, *best, Use::Read};
        if (decls_[*best].token == static_cast<std::ptrdiff_t>(k)) {
            r.use = Use::Definition;
        } else if (k + 1 < t_.size() && is_assignment_operator(t_[k + 1].text)) {
            r.use = t_[k + 1].is("=") ? Use::PlainWrite : Use::ReadWrite;
        } else if ((k + 1 < t_.size() && (t_[k + 1].is("++") || t_[k + 1].is("--"))) ||
                   (k > 0 && (t_[k - 1].is("++") || t_[k - 1].is("--")))) {
            r.use = Use::ReadWrite;
        }
        return r;
    }

    /// Outermost loop around the run that the declaration precedes.
    static const Statement* outermost_loop_after(const SiblingRun& run, std::ptrdiff_t decl_token)
    {
        for (const Statement* s : run.ancestors) {
            if (is_loop(s->kind) && static_cast<std::ptrdiff_t>(s->begin) > decl_token) {
                return s;
            }
        }
        return nullptr;
    }

    void check_flow(const SiblingRun& run, std::vector<std::string>& out) const
    {
        std::vector<const Statement*> stack;
        for (std::size_t i = run.first; i <= run.last; ++i) {
            check_statement((*run.list)[i], stack, out);
        }
    }

    void check_statement(const Statement& s, std::vector<const Statement*>& stack, std::vector<std::string>& out) const
    {
        const int line = t_[s.begin].line;
        auto in_lambda = [&] {
            return std::any_of(stack.begin(), stack.end(),
                               [](const Statement* p) { return p->kind == StatementKind::LambdaBody; });
        };
        auto has_target = [&](bool loops_only) {
            for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
                const StatementKind k = (*it)->kind;
                if (k == StatementKind::LambdaBody) {
                    return false;
                }
                if (s.label.empty() ? (is_loop(k) || (!loops_only && k == StatementKind::Switch))
                                    : (k == StatementKind::Labeled && (*it)->label == s.label)) {
                    return true;
                }
            }
            return false;
        };
        switch (s.kind) {
        case StatementKind::Return:
            if (!in_lambda()) {
                out.push_back("return at line " + std::to_string(line));
            }
            break;
        case StatementKind::Yield:
            if (!in_lambda()) {
                out.push_back("yield at line " + std::to_string(line));
            }
            break;
        case StatementKind::Break:
            if (!has_target(false)) {
                out.push_back("break at line " + std::to_string(line) + " leaves the fragment");
            }
            break;
        case StatementKind::Continue:
            if (!has_target(true)) {
                out.push_back("continue at line " + std::to_string(line) + " leaves the fragment");
            }
            break;
        default:
            break;
        }
        stack.push_back(&s);
        for (const Statement& c : s.children) {
            check_statement(c, stack, out);
        }
        stack.pop_back();
    }

    std::span<const Token> t_;
    std::vector<Statement> statements_;
    std::vector<ScopedDecl> decls_;
    std::vector<Reference> refs_;
};

std::string join_names(const std::vector<Variable>& vars)
{
    std::string out;
    for (const Variable& v : vars) {
        out += (out.empty() ? "" : ", ") + v.name;
    }
    return out;
}

void require_feasible(const DataFlowSummary& summary, int line)
{
    if (summary.outputs.size() > 1) {
        throw Error(ErrorCode::TooManyOutputs,
                    std::to_string(summary.outputs.size()) + " values flow out of the fragment: " +
                        join_names(summary.outputs),
                    line);
    }
    if (!summary.illegal_flow.empty()) {
        std::string msg;
        for (const std::string& v : summary.illegal_flow) {
            msg += (msg.empty() ? "" : "; ") + v;
        }
        throw Error(ErrorCode::IllegalFlow, msg, line);
    }
    auto check = [&](const std::vector<Variable>& vars) {
        for (const Variable& v : vars) {
            if (v.type.empty() || v.type == "var") {
                throw Error(ErrorCode::UnresolvedType, "cannot determine the declared type of '" + v.name + "'", line);
            }
        }
    };
    check(summary.inputs);
    check(summary.outputs);
    check(summary.locals_to_declare);
}

std::size_t locate(const Fragment& fragment, const MethodUnit& method)
{
    const auto needle = token_texts(fragment.tokens);
    const auto hits = find_occurrences(method.body_tokens, needle);
    if (hits.empty()) {
        throw Error(ErrorCode::NotStatementSpan, "fragment does not occur in " + method.id.str());
    }
    if (fragment.paste_site) {
        for (std::size_t h : hits) {
            if (method.body_tokens[h].line == fragment.paste_site->line) {
                return h;
            }
        }
    }
    return hits.front();
}

std::string leading_whitespace(std::string_view line)
{
    const auto n = line.find_first_not_of(" \t");
    return std::string(line.substr(0, n == std::string_view::npos ? line.size() : n));
}

std::string rstrip(std::string s)
{
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.pop_back();
    }
    return s;
}

/// Source lines covering [begin, end), with the first line's indentation restored and common indentation removed.
std::vector<std::string> dedented_lines(std::string_view text, std::size_t begin, std::size_t end)
{
    const auto nl = text.rfind('\n', begin == 0 ? 0 : begin - 1);
    const std::size_t line_start = (begin == 0 || nl == std::string_view::npos) ? 0 : nl + 1;
    std::string prefix(text.substr(line_start, begin - line_start));
    if (prefix.find_first_not_of(" \t") != std::string::npos) {
        prefix.clear();
    }
    std::vector<std::string> lines = split_lines(prefix + std::string(text.substr(begin, end - begin)));
    std::size_t common = std::string::npos;
    for (const std::string& l : lines) {
        if (l.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        common = std::min(common, leading_whitespace(l).size());
    }
    for (std::string& l : lines) {
        if (l.find_first_not_of(" \t") == std::string::npos) {
            l.clear();
        } else {
            l = rstrip(l.substr(common));
        }
    }
    return lines;
}

void split_arguments(std::span<const Token> tokens, std::span<const std::size_t> match, std::size_t open,
                     std::size_t close, std::vector<std::vector<std::string>>& args)
{
    args.clear();
    std::vector<std::string> current;
    bool any = false;
    for (std::size_t i = open + 1; i < close; ++i) {
        if (tokens[i].is(",")) {
            args.push_back(std::move(current));
            current.clear();
            continue;
        }
        any = true;
        if (match[i] != kNoMatch && match[i] > i) {
            for (std::size_t k = i; k <= match[i]; ++k) {
                current.push_back(tokens[k].text);
            }
            i = match[i];
            continue;
        }
        current.push_back(tokens[i].text);
    }
    if (any || !args.empty()) {
        args.push_back(std::move(current));
    }
}

} // namespace

DataFlowSummary data_flow_at(const MethodUnit& method, std::size_t first, std::size_t count)
{
    if (first + count > method.body_tokens.size()) {
        throw Error(ErrorCode::NotStatementSpan, "token range outside the method body");
    }
    return FlowAnalysis(method).run(first, count);
}

DataFlowSummary analyze_extractability(const Fragment& fragment, const MethodUnit& enclosing)
{
    if (!fragment.valid) {
        throw Error(ErrorCode::NotStatementSpan, "fragment is not a valid statement sequence");
    }
    const std::size_t first = locate(fragment, enclosing);
    DataFlowSummary summary = data_flow_at(enclosing, first, fragment.tokens.size());
    require_feasible(summary, enclosing.body_tokens[first].line);
    return summary;
}

std::string instantiate_call(const ExtractionPlan& plan, const std::vector<std::string>& arguments)
{
    std::string args;
    for (const std::string& a : arguments) {
        args += (args.empty() ? "" : ", ") + a;
    }
    std::string call = plan.method_name + "(" + args + ");";
    if (plan.output) {
        call = plan.output->name + " = " + call;
        if (plan.output_declared_in_span) {
            call = plan.output->type + " " + call;
        }
    }
    return call;
}

ExtractionPlan plan_extraction(const DataFlowSummary& summary, const std::string& name, const MethodUnit& enclosing,
                               const ClassContext& owner)
{
    if (!is_valid_identifier(name)) {
        throw Error(ErrorCode::InvalidIdentifier, "'" + name + "' is not a valid Java identifier");
    }
    if (owner.method_names.count(name) != 0) {
        throw Error(ErrorCode::NameCollision, "class " + owner.class_name + " already declares '" + name + "'");
    }
    require_feasible(summary, enclosing.start_line);

    ExtractionPlan plan;
    plan.method_name = name;
    std::vector<std::string> names;
    for (const Variable& v : summary.inputs) {
        plan.parameters.push_back(Parameter{v.name, v.type});
        names.push_back(v.name);
    }
    if (!summary.outputs.empty()) {
        plan.output = summary.outputs.front();
        plan.return_type = plan.output->type;
        plan.output_declared_in_span = summary.output_declared_in_span;
    }
    plan.locals_to_declare = summary.locals_to_declare;
    plan.is_static = enclosing.is_static;

    std::string params;
    for (const Parameter& p : plan.parameters) {
        params += (params.empty() ? "" : ", ") + p.type + " " + p.name;
    }
    plan.signature = std::string("private ") + (plan.is_static ? "static " : "") + plan.return_type + " " + name + "(" +
                     params + ")";
    plan.call_template = instantiate_call(plan, names);
    plan.insertion_file = enclosing.id.file;
    plan.insertion_line = enclosing.declaration_end_line;
    plan.host = enclosing.id;
    return plan;
}

namespace {

ExtractionSite make_site(const MethodUnit& m, std::size_t first, std::size_t count, const ExtractionPlan& plan)
{
    ExtractionSite site;
    site.method = m.id;
    site.file_path = m.id.file;
    const Token& a = m.body_tokens[first];
    const Token& b = m.body_tokens[first + count - 1];
    site.span = MatchSpan{a.line, b.line, first, count};
    site.begin_offset = a.offset;
    site.end_offset = b.end_offset();
    site.token_texts = token_texts(std::span<const Token>(m.body_tokens).subspan(first, count));
    for (const Parameter& p : plan.parameters) {
        site.call_arguments.push_back(p.name);
    }
    return site;
}

} // namespace

void select_sites(ExtractionPlan& plan, const Fragment& fragment, const std::vector<CloneMatch>& matches,
                  const ProjectIndex& index)
{
    const MethodUnit* host = index.method(plan.host);
    const FileIndex* file = index.file(plan.host.file);
    if (host == nullptr || file == nullptr) {
        throw Error(ErrorCode::MissingContext, "paste-site method " + plan.host.str() + " is not indexed");
    }
    const std::size_t count = fragment.tokens.size();
    const std::size_t host_first = locate(fragment, *host);
    const DataFlowSummary host_flow = data_flow_at(*host, host_first, count);

    plan.target_sites.clear();
    plan.target_sites.push_back(make_site(*host, host_first, count, plan));
    for (const CloneMatch& match : matches) {
        if (match.kind != CloneKind::Exact || !match.span || match.method_id == host->id) {
            continue;
        }
        const MethodUnit* m = index.method(match.method_id);
        if (m == nullptr || m->owner.get() != host->owner.get() || (!plan.is_static && m->is_static)) {
            continue;
        }
        try {
            if (data_flow_at(*m, match.span->first_token, match.span->token_count) != host_flow) {
                continue;
            }
        } catch (const Error&) {
            continue;
        }
        plan.target_sites.push_back(make_site(*m, match.span->first_token, match.span->token_count, plan));
    }
    std::sort(plan.target_sites.begin(), plan.target_sites.end(), [](const auto& a, const auto& b) {
        return a.file_path != b.file_path ? a.file_path < b.file_path : a.begin_offset < b.begin_offset;
    });

    std::vector<std::string> body;
    for (const Variable& v : plan.locals_to_declare) {
        body.push_back(v.type + " " + v.name + ";");
    }
    const ExtractionSite& own = *std::find_if(plan.target_sites.begin(), plan.target_sites.end(),
                                              [&](const ExtractionSite& s) { return s.method == host->id; });
    for (std::string& l : dedented_lines(file->text, own.begin_offset, own.end_offset)) {
        body.push_back(std::move(l));
    }
    if (plan.output) {
        body.push_back("return " + plan.output->name + ";");
    }
    plan.body_text.clear();
    for (const std::string& l : body) {
        plan.body_text += l + "\n";
    }
}

ExtractionPlan prepare_extraction(const Fragment& input, const std::string& name, const ProjectIndex& index,
                                  double near_threshold)
{
    if (!input.valid) {
        throw Error(ErrorCode::NotStatementSpan, "fragment is not a valid statement sequence: " + input.invalid_reason);
    }
    if (!input.paste_site) {
        throw Error(ErrorCode::MissingContext, "fragment has no paste site");
    }
    const MethodUnit* host = index.enclosing_method(input.paste_site->file_path, input.paste_site->line);
    if (host == nullptr || !host->owner) {
        throw Error(ErrorCode::MissingContext,
                    input.paste_site->file_path + ":" + std::to_string(input.paste_site->line) +
                        " is not inside an indexed method",
                    input.paste_site->line);
    }
    Fragment fragment = input;
    fragment.paste_site->method = host->id;
    const DataFlowSummary summary = analyze_extractability(fragment, *host);
    ExtractionPlan plan = plan_extraction(summary, name, *host, *host->owner);
    const auto matches = find_duplicates(fragment, index.methods(), near_threshold);
    select_sites(plan, fragment, matches, index);
    return plan;
}

std::vector<std::string> render_method(const ExtractionPlan& plan, const std::string& indent, const std::string& unit)
{
    std::vector<std::string> out{indent + plan.signature + " {"};
    for (const std::string& l : split_lines(plan.body_text)) {
        out.push_back(l.empty() ? std::string() : indent + unit + l);
    }
    out.push_back(indent + "}");
    return out;
}

ExtractionResult apply_extraction(const ExtractionPlan& plan, const SourceMap& sources, std::size_t context)
{
    std::map<std::string, std::vector<const ExtractionSite*>> by_file;
    for (const ExtractionSite& s : plan.target_sites) {
        by_file[s.file_path].push_back(&s);
    }
    by_file.try_emplace(plan.insertion_file);

    std::map<std::string, std::vector<LineEdit>> edits;
    std::map<std::string, std::vector<std::string>> old_lines;
    std::map<std::string, bool> trailing_newline;
    for (const auto& [path, sites] : by_file) {
        const auto src = sources.find(path);
        if (src == sources.end()) {
            throw Error(ErrorCode::StaleSite, path + " is not available");
        }
        const std::string text = normalize_newlines(src->second);
        std::vector<Token> tokens;
        try {
            tokens = tokenize(text);
        } catch (const Error& e) {
            throw Error(ErrorCode::StaleSite, path + " no longer lexes: " + e.what());
        }
        const auto lines = split_lines(text);
        auto& file_edits = edits[path];
        for (const ExtractionSite* site : sites) {
            const auto it = std::find_if(tokens.begin(), tokens.end(),
                                         [&](const Token& t) { return t.offset == site->begin_offset; });
            const std::size_t first = static_cast<std::size_t>(it - tokens.begin());
            const std::size_t n = site->token_texts.size();
            if (it == tokens.end() || first + n > tokens.size() ||
                token_texts(std::span<const Token>(tokens).subspan(first, n)) != site->token_texts) {
                throw Error(ErrorCode::StaleSite, "the copy at " + path + ":" + std::to_string(site->span.start_line) +
                                                      " no longer matches the fragment",
                            site->span.start_line);
            }
            const Token& a = tokens[first];
            const Token& b = tokens[first + n - 1];
            const std::string& first_line = lines[static_cast<std::size_t>(a.line - 1)];
            const std::string& last_line = lines[static_cast<std::size_t>(b.line - 1)];
            const std::size_t last_col = static_cast<std::size_t>(b.column - 1) + b.text.size();
            std::string replaced = first_line.substr(0, static_cast<std::size_t>(a.column - 1)) +
                                   instantiate_call(plan, site->call_arguments) +
                                   (last_col < last_line.size() ? last_line.substr(last_col) : std::string());
            file_edits.push_back(LineEdit{static_cast<std::size_t>(a.line - 1),
                                          static_cast<std::size_t>(b.line - a.line + 1), {rstrip(replaced)}});
        }
        if (path == plan.insertion_file) {
            if (plan.insertion_line < 1 || static_cast<std::size_t>(plan.insertion_line) > lines.size()) {
                throw Error(ErrorCode::StaleSite, "insertion point " + path + ":" +
                                                      std::to_string(plan.insertion_line) + " is out of range");
            }
            const std::string& anchor = lines[static_cast<std::size_t>(plan.insertion_line - 1)];
            const std::string indent = leading_whitespace(anchor);
            std::string unit = "    ";
            const int body_line = plan.insertion_line - 1;
            for (int l = body_line; l >= 1; --l) {
                const std::string& candidate = lines[static_cast<std::size_t>(l - 1)];
                if (candidate.find_first_not_of(" \t") == std::string::npos) {
                    continue;
                }
                const std::string ws = leading_whitespace(candidate);
                if (ws.size() > indent.size() && ws.compare(0, indent.size(), indent) == 0) {
                    unit = ws.substr(indent.size());
                }
                break;
            }
            LineEdit insert{static_cast<std::size_t>(plan.insertion_line), 0, {""}};
            for (std::string& l : render_method(plan, indent, unit)) {
                insert.new_lines.push_back(std::move(l));
            }
            file_edits.push_back(std::move(insert));
        }
        std::sort(file_edits.begin(), file_edits.end(), [](const LineEdit& x, const LineEdit& y) {
            return x.old_begin != y.old_begin ? x.old_begin < y.old_begin : x.old_count < y.old_count;
        });
        for (std::size_t i = 1; i < file_edits.size(); ++i) {
            if (file_edits[i - 1].old_begin + file_edits[i - 1].old_count > file_edits[i].old_begin) {
                throw Error(ErrorCode::StaleSite, "overlapping copies in " + path);
            }
        }
        old_lines[path] = lines;
        trailing_newline[path] = text.empty() || text.back() == '\n';
    }

    ExtractionResult result;
    result.sources = sources;
    for (const auto& [path, file_edits] : edits) {
        const auto updated = apply_line_edits(old_lines[path], file_edits);
        std::string text;
        for (std::size_t i = 0; i < updated.size(); ++i) {
            text += updated[i];
            if (i + 1 < updated.size() || trailing_newline[path]) {
                text += '\n';
            }
        }
        result.sources[path] = std::move(text);
        result.diff += unified_diff(path, old_lines[path], file_edits, context, trailing_newline[path],
                                    trailing_newline[path]);
    }
    return result;
}

Verification verify_by_inlining(const ExtractionPlan& plan, const SourceMap& before, const SourceMap& after)
{
    Verification v;
    v.passed = true;
    auto fail_all = [&](const std::string& detail) {
        v.passed = false;
        v.sites.clear();
        for (const ExtractionSite& s : plan.target_sites) {
            v.sites.push_back(SiteVerdict{s.file_path, s.span.start_line, false, detail});
        }
        return v;
    };

    const auto generated_file = after.find(plan.insertion_file);
    if (generated_file == after.end()) {
        return fail_all("rewritten " + plan.insertion_file + " is missing");
    }
    std::vector<Token> gen_tokens;
    std::vector<std::size_t> gen_match;
    try {
        gen_tokens = tokenize(normalize_newlines(generated_file->second));
        gen_match = match_delimiters(gen_tokens);
    } catch (const Error& e) {
        return fail_all(std::string("rewritten file does not lex: ") + e.what());
    }
    auto is_declaration = [](const std::vector<Token>& t, const std::vector<std::size_t>& m, std::size_t k) {
        return m[k + 1] != kNoMatch && m[k + 1] + 1 < t.size() && t[m[k + 1] + 1].is("{");
    };
    std::optional<std::size_t> decl;
    for (std::size_t k = 0; k + 1 < gen_tokens.size(); ++k) {
        if (gen_tokens[k].is(plan.method_name) && gen_tokens[k + 1].is("(") && is_declaration(gen_tokens, gen_match, k)) {
            decl = k;
            break;
        }
    }
    if (!decl) {
        return fail_all("generated method '" + plan.method_name + "' not found");
    }
    const std::size_t open_brace = gen_match[*decl + 1] + 1;
    const std::size_t close_brace = gen_match[open_brace];
    std::vector<Token> body(gen_tokens.begin() + static_cast<std::ptrdiff_t>(open_brace + 1),
                            gen_tokens.begin() + static_cast<std::ptrdiff_t>(close_brace));

    auto strip_prefix = [&](const std::string& text) {
        const auto expected = token_texts(tokenize(text));
        if (body.size() < expected.size() ||
            !std::equal(expected.begin(), expected.end(), body.begin(),
                        [](const std::string& e, const Token& t) { return e == t.text; })) {
            return false;
        }
        body.erase(body.begin(), body.begin() + static_cast<std::ptrdiff_t>(expected.size()));
        return true;
    };
    for (const Variable& local : plan.locals_to_declare) {
        if (!strip_prefix(local.type + " " + local.name + ";")) {
            return fail_all("generated method does not declare '" + local.name + "' first");
        }
    }
    if (plan.output) {
        const auto expected = token_texts(tokenize("return " + plan.output->name + ";"));
        if (body.size() < expected.size() ||
            token_texts(std::span<const Token>(body).subspan(body.size() - expected.size())) != expected) {
            return fail_all("generated method does not end with 'return " + plan.output->name + ";'");
        }
        body.resize(body.size() - expected.size());
    }

    std::map<std::string, std::vector<const ExtractionSite*>> by_file;
    for (const ExtractionSite& s : plan.target_sites) {
        by_file[s.file_path].push_back(&s);
    }
    for (const auto& [path, sites] : by_file) {
        auto fail_file = [&](const std::string& detail) {
            v.passed = false;
            for (const ExtractionSite* s : sites) {
                v.sites.push_back(SiteVerdict{path, s->span.start_line, false, detail});
            }
        };
        const auto b = before.find(path);
        const auto a = after.find(path);
        if (b == before.end() || a == after.end()) {
            fail_file("source missing");
            continue;
        }
        std::vector<Token> old_tokens;
        std::vector<Token> new_tokens;
        std::vector<std::size_t> new_match;
        try {
            old_tokens = tokenize(normalize_newlines(b->second));
            new_tokens = tokenize(normalize_newlines(a->second));
            new_match = match_delimiters(new_tokens);
        } catch (const Error& e) {
            fail_file(e.what());
            continue;
        }
        std::vector<std::size_t> calls;
        for (std::size_t k = 0; k + 1 < new_tokens.size(); ++k) {
            if (new_tokens[k].is(plan.method_name) && new_tokens[k + 1].is("(") &&
                (k == 0 || !new_tokens[k - 1].is(".")) && !is_declaration(new_tokens, new_match, k)) {
                calls.push_back(k);
            }
        }
        if (calls.size() != sites.size()) {
            fail_file(std::to_string(calls.size()) + " calls found for " + std::to_string(sites.size()) + " sites");
            continue;
        }
        std::vector<std::vector<std::string>> args;
        for (std::size_t i = 0; i < sites.size(); ++i) {
            const ExtractionSite& site = *sites[i];
            SiteVerdict verdict{path, site.span.start_line, true, {}};
            const std::size_t call = calls[i];
            const std::size_t close = new_match[call + 1];
            split_arguments(new_tokens, new_match, call + 1, close, args);

            std::size_t stmt = call;
            while (stmt > 0 && !new_tokens[stmt - 1].is(";") && !new_tokens[stmt - 1].is("{") &&
                   !new_tokens[stmt - 1].is("}")) {
                --stmt;
            }
            const std::size_t prefix = call - stmt;
            bool shape = close + 1 < new_tokens.size() && new_tokens[close + 1].is(";");
            if (plan.output) {
                shape = shape && prefix >= 2 && new_tokens[call - 1].is("=") &&
                        new_tokens[call - 2].is(plan.output->name) &&
                        (plan.output_declared_in_span ? prefix > 2 : prefix == 2);
            } else {
                shape = shape && prefix == 0;
            }

            std::vector<std::string> inlined;
            if (args.size() != plan.parameters.size()) {
                verdict.equivalent = false;
                verdict.detail = "argument count differs from parameter count";
            } else if (!shape) {
                verdict.equivalent = false;
                verdict.detail = "call statement does not match the plan's output handling";
            } else {
                for (std::size_t k = 0; k < body.size(); ++k) {
                    const Token& t = body[k];
                    auto p = std::find_if(plan.parameters.begin(), plan.parameters.end(),
                                          [&](const Parameter& q) { return q.name == t.text; });
                    if (t.is_identifier() && p != plan.parameters.end() && (k == 0 || !body[k - 1].is("."))) {
                        const auto& arg = args[static_cast<std::size_t>(p - plan.parameters.begin())];
                        inlined.insert(inlined.end(), arg.begin(), arg.end());
                    } else {
                        inlined.push_back(t.text);
                    }
                }
                const auto it = std::find_if(old_tokens.begin(), old_tokens.end(),
                                             [&](const Token& t) { return t.offset == site.begin_offset; });
                const std::size_t first = static_cast<std::size_t>(it - old_tokens.begin());
                const std::size_t n = site.token_texts.size();
                if (it == old_tokens.end() || first + n > old_tokens.size()) {
                    verdict.equivalent = false;
                    verdict.detail = "original site not found";
                } else if (token_texts(std::span<const Token>(old_tokens).subspan(first, n)) != inlined) {
                    verdict.equivalent = false;
                    verdict.detail = "inlined call differs from the original tokens";
                }
            }
            v.passed = v.passed && verdict.equivalent;
            v.sites.push_back(std::move(verdict));
        }
    }
    return v;
}

} // namespace acp
