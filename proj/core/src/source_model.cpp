#include "acp/source_model.hpp"

#include "acp/error.hpp"
#include "acp/statements.hpp"

#include <algorithm>
#include <cctype>

namespace acp {

std::string MethodId::str() const
{
    return file + ":" + std::to_string(line) + ":" + name;
}

namespace {

std::vector<int> profile_tokens(std::span<const Token> tokens, int first_line, int last_line)
{
    if (tokens.empty() || last_line < first_line) {
        throw Error(ErrorCode::EmptyScope, "scope has no tokens");
    }
    std::vector<int> profile(static_cast<std::size_t>(last_line - first_line + 1), 0);
    int depth = 1;
    int next_line = first_line;
    auto fill_until = [&](int line) {
        for (; next_line < line && next_line <= last_line; ++next_line) {
            profile[static_cast<std::size_t>(next_line - first_line)] = depth;
        }
    };
    for (const Token& t : tokens) {
        fill_until(t.line);
        if (t.is("}") && t.kind == TokenKind::Punctuation) {
            depth = std::max(1, depth - 1);
        }
        fill_until(t.line + 1);
        if (t.is("{") && t.kind == TokenKind::Punctuation) {
            ++depth;
        }
    }
    fill_until(last_line + 1);
    return profile;
}

std::size_t line_begin(std::string_view text, std::size_t offset)
{
    const auto nl = text.rfind('\n', offset == 0 ? 0 : offset - 1);
    if (offset == 0 || nl == std::string_view::npos) {
        return 0;
    }
    return nl + 1;
}

std::size_t line_end(std::string_view text, std::size_t offset)
{
    const auto nl = text.find('\n', offset);
    return nl == std::string_view::npos ? text.size() : nl;
}

class FileIndexer {
public:
    FileIndexer(std::string text, std::string path) : text_(std::move(text)), path_(std::move(path)) {}

    FileIndex run()
    {
        tokens_ = tokenize(text_);
        try {
            match_ = match_delimiters(tokens_);
        } catch (const Error& e) {
            throw Error(ErrorCode::IndexError, "unbalanced delimiters in " + path_, e.line());
        }
        scan_members(0, tokens_.size(), nullptr, false);
        attach_owners();

        FileIndex out;
        out.path = path_;
        out.text = text_;
        out.methods = std::move(methods_);
        std::sort(out.methods.begin(), out.methods.end(),
                  [](const MethodUnit& a, const MethodUnit& b) { return a.id < b.id; });
        for (auto& c : classes_) {
            out.classes.push_back(std::move(c));
        }
        return out;
    }

private:
    const Token& tok(std::size_t i) const { return tokens_[i]; }

    bool opens_group(std::size_t i) const { return match_[i] != kNoMatch && match_[i] > i; }

    void scan_members(std::size_t begin, std::size_t end, const std::shared_ptr<ClassContext>& cls, bool is_enum)
    {
        std::size_t i = begin;
        if (is_enum) {
            while (i < end && !tok(i).is(";")) {
                i = opens_group(i) ? match_[i] + 1 : i + 1;
            }
            if (i < end) {
                ++i;
            }
        }
        std::size_t member = i;
        while (i < end) {
            const Token& t = tok(i);
            if (t.is(";")) {
                if (cls && i > member) {
                    member_without_body(member, i, *cls);
                }
                member = ++i;
                continue;
            }
            if (t.is("(") || t.is("[")) {
                i = match_[i] + 1;
                continue;
            }
            if (!t.is("{")) {
                ++i;
                continue;
            }
            const std::size_t close = match_[i];
            if (auto kw = type_keyword(member, i)) {
                declare_type(*kw, i);
                member = i = close + 1;
                continue;
            }
            if (has_top_level(member, i, "=")) {
                i = close + 1;
                continue;
            }
            if (cls) {
                if (auto header = method_header(member, i)) {
                    declare_method(member, *header, i, *cls);
                    member = i = close + 1;
                    continue;
                }
            }
            // initializer block or something we do not model
            member = i = close + 1;
        }
    }

    bool has_top_level(std::size_t begin, std::size_t end, std::string_view text) const
    {
        for (std::size_t i = begin; i < end; ++i) {
            if (opens_group(i)) {
                i = match_[i];
                continue;
            }
            if (tok(i).is(text)) {
                return true;
            }
        }
        return false;
    }

    std::size_t skip_annotation(std::size_t i, std::size_t end) const
    {
        i += 2;
        while (i + 1 < end && tok(i).is(".") && tok(i + 1).is_identifier()) {
            i += 2;
        }
        if (i < end && tok(i).is("(")) {
            i = match_[i] + 1;
        }
        return i;
    }

    /// Index of the class/interface/enum/record keyword in a member header, if any.
    std::optional<std::size_t> type_keyword(std::size_t begin, std::size_t end) const
    {
        for (std::size_t i = begin; i < end; ++i) {
            const Token& t = tok(i);
            if (t.is("@") && i + 1 < end && t.kind == TokenKind::Punctuation) {
                if (tok(i + 1).is("interface")) {
                    return i + 1;
                }
                i = skip_annotation(i, end) - 1;
                continue;
            }
            if (opens_group(i)) {
                i = match_[i];
                continue;
            }
            if (t.is("=")) {
                return std::nullopt;
            }
            const bool keyword = t.kind == TokenKind::Keyword &&
                                 (t.is("class") || t.is("interface") || t.is("enum"));
            const bool record = t.is_identifier() && t.is("record") && i + 1 < end && tok(i + 1).is_identifier();
            if ((keyword || record) && !(i > begin && tok(i - 1).is("."))) {
                return i;
            }
        }
        return std::nullopt;
    }

    void declare_type(std::size_t keyword, std::size_t brace)
    {
        auto cls = std::make_shared<ClassContext>();
        cls->file_path = path_;
        if (keyword + 1 < brace && tok(keyword + 1).is_identifier()) {
            cls->class_name = tok(keyword + 1).text;
        }
        if (tok(keyword).is("record")) {
            for (std::size_t i = keyword + 2; i < brace; ++i) {
                if (tok(i).is("(")) {
                    for (const auto& p : parameters(i)) {
                        cls->field_names.emplace(p.name, p.type);
                    }
                    break;
                }
            }
        }
        classes_.push_back(cls);
        scan_members(brace + 1, match_[brace], cls, tok(keyword).is("enum"));
    }

    struct Header {
        std::size_t name;
        std::size_t open;
    };

    std::optional<Header> method_header(std::size_t begin, std::size_t brace) const
    {
        std::size_t end = brace;
        for (std::size_t i = begin; i < brace; ++i) {
            if (opens_group(i)) {
                i = match_[i];
                continue;
            }
            if (tok(i).is("throws")) {
                end = i;
                break;
            }
        }
        if (end <= begin || !tok(end - 1).is(")")) {
            return std::nullopt;
        }
        const std::size_t open = match_[end - 1];
        if (open == 0 || open <= begin || !tok(open - 1).is_identifier()) {
            return std::nullopt;
        }
        const std::size_t name = open - 1;
        if (name > begin && tok(name - 1).is("@")) {
            return std::nullopt;
        }
        if (name > begin && (tok(name - 1).is(".") || tok(name - 1).is("new"))) {
            return std::nullopt;
        }
        return Header{name, open};
    }

    std::vector<Parameter> parameters(std::size_t open) const
    {
        std::vector<Parameter> out;
        const std::size_t close = match_[open];
        std::size_t start = open + 1;
        int angle = 0;
        for (std::size_t i = open + 1; i <= close; ++i) {
            if (i < close) {
                const Token& t = tok(i);
                if (opens_group(i)) {
                    i = match_[i];
                    continue;
                }
                if (t.is("<")) {
                    ++angle;
                } else if (t.is(">")) {
                    --angle;
                } else if (t.is(">>")) {
                    angle -= 2;
                } else if (t.is(">>>")) {
                    angle -= 3;
                }
                if (!(t.is(",") && angle == 0)) {
                    continue;
                }
            }
            if (i > start) {
                if (auto p = parameter(start, i)) {
                    out.push_back(std::move(*p));
                }
            }
            start = i + 1;
        }
        return out;
    }

    std::optional<Parameter> parameter(std::size_t begin, std::size_t end) const
    {
        std::size_t i = begin;
        while (i < end && (tok(i).is("final") || tok(i).is("@"))) {
            i = tok(i).is("@") ? skip_annotation(i, end) : i + 1;
        }
        std::size_t name = end - 1;
        std::string dims;
        while (name > i && tok(name).is("]") && tok(name - 1).is("[")) {
            dims += "[]";
            name -= 2;
        }
        if (name <= i || !tok(name).is_identifier()) {
            return std::nullopt;
        }
        std::span<const Token> type_tokens(tokens_.data() + i, name - i);
        return Parameter{tok(name).text, render_type(type_tokens) + dims};
    }

    void member_without_body(std::size_t begin, std::size_t end, ClassContext& cls)
    {
        if (auto header = method_header(begin, end)) {
            if (!has_top_level(begin, header->name, "=")) {
                cls.method_names.insert(tok(header->name).text);
                return;
            }
        }
        // field declaration: Type a [= x], b [= y];
        std::size_t i = begin;
        std::size_t type_begin = begin;
        while (i < end) {
            const Token& t = tok(i);
            if (t.is("@")) {
                i = skip_annotation(i, end);
                type_begin = i;
                continue;
            }
            if (t.kind == TokenKind::Keyword && !t.is("boolean") && !t.is("byte") && !t.is("char") &&
                !t.is("short") && !t.is("int") && !t.is("long") && !t.is("float") && !t.is("double")) {
                ++i;
                type_begin = i;
                continue;
            }
            break;
        }
        // first declarator name: last identifier before the first top-level '=' or ',' or end
        std::size_t stop = end;
        for (std::size_t j = type_begin; j < end; ++j) {
            if (opens_group(j) && !tok(j).is("[")) {
                j = match_[j];
                continue;
            }
            if (tok(j).is("=") || tok(j).is(",")) {
                stop = j;
                break;
            }
        }
        std::size_t name = stop;
        while (name > type_begin) {
            --name;
            if (tok(name).is_identifier()) {
                break;
            }
        }
        if (name <= type_begin || !tok(name).is_identifier()) {
            return;
        }
        const std::string type = render_type(std::span<const Token>(tokens_.data() + type_begin, name - type_begin));
        cls.field_names.emplace(tok(name).text, type);

        // further declarators
        std::size_t j = stop;
        while (j < end) {
            if (opens_group(j)) {
                j = match_[j] + 1;
                continue;
            }
            if (tok(j).is(",") && j + 1 < end && tok(j + 1).is_identifier()) {
                cls.field_names.emplace(tok(j + 1).text, type);
            }
            ++j;
        }
    }

    bool blank_between(std::size_t begin, std::size_t end) const
    {
        for (std::size_t i = begin; i < end; ++i) {
            if (!std::isspace(static_cast<unsigned char>(text_[i]))) {
                return false;
            }
        }
        return true;
    }

    /// Lines strictly between the braces (a brace line joins when it holds body tokens), blank edges trimmed.
    void set_body_range(MethodUnit& m, const Token& brace, const Token& close) const
    {
        const std::string_view view(text_);
        const Token& first = m.body_tokens.front();
        const Token& last = m.body_tokens.back();

        int start = first.line == brace.line ? brace.line : brace.line + 1;
        std::size_t begin = first.line == brace.line ? brace.end_offset() : line_end(view, brace.end_offset()) + 1;
        while (start < first.line && blank_between(begin, line_end(view, begin))) {
            begin = line_end(view, begin) + 1;
            ++start;
        }
        int end = last.line == close.line ? close.line : close.line - 1;
        std::size_t stop = last.line == close.line ? close.offset : line_begin(view, close.offset) - 1;
        while (end > last.line && blank_between(line_begin(view, stop), stop)) {
            stop = line_begin(view, stop) - 1;
            --end;
        }

        std::string_view body = view.substr(begin, stop - begin);
        if (body.find("/*") != std::string_view::npos || body.find("*/") != std::string_view::npos) {
            // A block comment crossing a brace line cannot be cut at line boundaries.
            bool consistent = false;
            try {
                consistent = tokenize(body).size() == m.body_tokens.size();
            } catch (const Error&) {
            }
            if (!consistent) {
                start = first.line;
                end = last.line;
                begin = first.offset;
                stop = last.end_offset();
                body = view.substr(begin, stop - begin);
            }
        }
        m.start_line = start;
        m.end_line = end;
        m.body_offset = begin;
        m.body_text = std::string(body);
    }

    void declare_method(std::size_t member, const Header& header, std::size_t brace, ClassContext& cls)
    {
        const std::string name = tok(header.name).text;
        cls.method_names.insert(name);
        const std::size_t close = match_[brace];
        if (close == brace + 1) {
            return;
        }

        MethodUnit m;
        m.name = name;
        m.parameters = parameters(header.open);
        m.body_tokens.assign(tokens_.begin() + static_cast<std::ptrdiff_t>(brace + 1),
                             tokens_.begin() + static_cast<std::ptrdiff_t>(close));
        for (std::size_t i = member; i < header.name; ++i) {
            if (tok(i).is("static")) {
                m.is_static = true;
            }
        }

        set_body_range(m, tok(brace), tok(close));

        const std::string_view view(text_);
        m.declaration_offset = tok(member).offset;
        m.declaration_end_offset = tok(close).end_offset();
        m.declaration_text = std::string(view.substr(m.declaration_offset, m.declaration_end_offset - m.declaration_offset));
        m.declaration_start_line = tok(member).line;
        m.declaration_end_line = tok(close).line;

        m.nesting_profile = profile_tokens(m.body_tokens, m.start_line, m.end_line);
        try {
            for (const auto& d : collect_declarations(parse_block_statements(m.body_tokens))) {
                m.local_declarations.emplace(d.name, LocalDeclaration{d.type, d.line});
            }
        } catch (const Error&) {
            // body outside the statement grammar: no locals recorded
        }
        m.id = MethodId{path_, m.start_line, name};
        methods_.push_back(std::move(m));
        owners_.push_back(&cls);
    }

    void attach_owners()
    {
        for (std::size_t k = 0; k < methods_.size(); ++k) {
            for (const auto& c : classes_) {
                if (c.get() == owners_[k]) {
                    methods_[k].owner = c;
                }
            }
        }
    }

private:
    std::string text_;
    std::string path_;
    std::vector<Token> tokens_;
    std::vector<std::size_t> match_;
    std::vector<MethodUnit> methods_;
    std::vector<ClassContext*> owners_;
    std::vector<std::shared_ptr<ClassContext>> classes_;

};

} // namespace

FileIndex index_file(std::string_view text, const std::string& file_path)
{
    return FileIndexer(normalize_newlines(text), file_path).run();
}

std::size_t count_symbols(std::string_view text) noexcept
{
    return static_cast<std::size_t>(std::count_if(text.begin(), text.end(), [](char c) {
        return c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '\f' && c != '\v';
    }));
}

std::string trim_blank_lines(std::string_view text)
{
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    for (;;) {
        const auto nl = text.find('\n', start);
        lines.push_back(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
        if (nl == std::string_view::npos) {
            break;
        }
        start = nl + 1;
    }
    auto blank = [](std::string_view l) { return l.find_first_not_of(" \t\r\f\v") == std::string_view::npos; };
    std::size_t first = 0;
    std::size_t last = lines.size();
    while (first < last && blank(lines[first])) {
        ++first;
    }
    while (last > first && blank(lines[last - 1])) {
        --last;
    }
    std::string out;
    for (std::size_t i = first; i < last; ++i) {
        if (i > first) {
            out += '\n';
        }
        out += lines[i];
    }
    return out;
}

int count_lines(std::string_view text) noexcept
{
    const std::string trimmed = trim_blank_lines(text);
    if (trimmed.empty()) {
        return 0;
    }
    return static_cast<int>(std::count(trimmed.begin(), trimmed.end(), '\n')) + 1;
}

Fragment validate_fragment(std::string_view text)
{
    Fragment f;
    f.raw_text = std::string(text);
    f.text = trim_blank_lines(normalize_newlines(text));
    f.line_count = count_lines(f.text);
    f.symbol_count = count_symbols(f.text);
    try {
        f.tokens = tokenize(f.text);
    } catch (const Error& e) {
        f.invalid_reason = e.what();
        return f;
    }
    if (f.tokens.empty()) {
        f.invalid_reason = "empty fragment";
        return f;
    }
    try {
        parse_block_statements(f.tokens);
    } catch (const Error& e) {
        f.invalid_reason = e.what();
        return f;
    }
    f.valid = true;
    return f;
}

Fragment fragment_from_method(const MethodUnit& method)
{
    Fragment f;
    f.raw_text = method.body_text;
    f.text = method.body_text;
    f.tokens = method.body_tokens;
    rebase_lines(f.tokens, method.start_line);
    f.line_count = method.line_count();
    f.symbol_count = count_symbols(method.body_text);
    f.valid = true;
    f.paste_site = PasteSite{method.id.file, method.start_line, method.id};
    return f;
}

std::vector<int> nesting_profile(const Fragment& fragment)
{
    if (fragment.tokens.empty() || fragment.line_count < 1) {
        throw Error(ErrorCode::EmptyScope, "fragment has no tokens");
    }
    return profile_tokens(fragment.tokens, 1, fragment.line_count);
}

std::vector<int> nesting_profile(const MethodUnit& method)
{
    return profile_tokens(method.body_tokens, method.start_line, method.end_line);
}

ProjectIndex::ProjectIndex(std::map<std::string, std::shared_ptr<const FileIndex>> files)
    : files_(std::move(files))
{
    for (const auto& [path, file] : files_) {
        for (const auto& m : file->methods) {
            methods_.push_back(&m);
        }
    }
    std::sort(methods_.begin(), methods_.end(),
              [](const MethodUnit* a, const MethodUnit* b) { return a->id < b->id; });
}

const FileIndex* ProjectIndex::file(const std::string& path) const
{
    const auto it = files_.find(path);
    return it == files_.end() ? nullptr : it->second.get();
}

const MethodUnit* ProjectIndex::method(const MethodId& id) const
{
    const FileIndex* f = file(id.file);
    if (!f) {
        return nullptr;
    }
    for (const auto& m : f->methods) {
        if (m.id == id) {
            return &m;
        }
    }
    return nullptr;
}

const MethodUnit* ProjectIndex::enclosing_method(const std::string& file_path, int line) const
{
    const FileIndex* f = file(file_path);
    if (!f) {
        return nullptr;
    }
    for (const auto& m : f->methods) {
        if (m.start_line <= line && line <= m.end_line) {
            return &m;
        }
    }
    return nullptr;
}

} // namespace acp
