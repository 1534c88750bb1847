#include "acp/statements.hpp"

#include "acp/error.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string_view>

namespace acp {

namespace {

constexpr std::array<std::string_view, 8> kPrimitiveTypes = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double",
};

// Keywords that can only start a type or member declaration.
constexpr std::array<std::string_view, 20> kDeclarationOnlyKeywords = {
    "class", "interface", "enum", "public", "private", "protected", "abstract",
    "static", "native", "transient", "volatile", "strictfp", "void", "import",
    "package", "extends", "implements", "throws", "goto", "const",
};

constexpr std::array<std::string_view, 6> kMisplacedKeywords = {
    "else", "case", "default", "catch", "finally", "instanceof",
};

bool contains(std::span<const std::string_view> set, std::string_view word)
{
    return std::find(set.begin(), set.end(), word) != set.end();
}

bool is_primitive(const Token& t)
{
    return t.kind == TokenKind::Keyword && contains(kPrimitiveTypes, t.text);
}

bool is_prefix_operator(std::string_view op)
{
    return op == "++" || op == "--" || op == "+" || op == "-" || op == "!" || op == "~";
}

bool is_assignment_operator(std::string_view op)
{
    return op == "=" || op == "+=" || op == "-=" || op == "*=" || op == "/=" || op == "%=" ||
           op == "&=" || op == "|=" || op == "^=" || op == "<<=" || op == ">>=" || op == ">>>=";
}

bool ends_atom(const Token& t)
{
    return t.kind == TokenKind::Identifier || t.kind == TokenKind::Literal || t.is("this") ||
           t.is("super") || t.is("]");
}

bool starts_atom(const Token& t)
{
    return t.kind == TokenKind::Identifier || t.kind == TokenKind::Literal || t.is("this") ||
           t.is("super") || t.is("new");
}

class StatementParser {
public:
    StatementParser(std::span<const Token> tokens, std::vector<std::size_t> match)
        : t_(tokens), match_(std::move(match))
    {
    }

    std::vector<Statement> parse_sequence(std::size_t from, std::size_t to)
    {
        std::vector<Statement> out;
        std::size_t pos = from;
        while (pos < to) {
            out.push_back(parse_statement(pos, to));
        }
        return out;
    }

private:
    [[noreturn]] void fail(std::size_t at, const std::string& what) const
    {
        const int line = at < t_.size() ? t_[at].line : (t_.empty() ? 0 : t_.back().line);
        throw Error(ErrorCode::SyntaxError, what, line);
    }

    bool at(std::size_t pos, std::size_t to, std::string_view text) const
    {
        return pos < to && t_[pos].text == text;
    }

    void expect(std::size_t& pos, std::size_t to, std::string_view text)
    {
        if (!at(pos, to, text)) {
            fail(pos, "expected '" + std::string(text) + "'");
        }
        ++pos;
    }

    /// Consumes a parenthesised group and returns the index of its `(`.
    std::size_t paren_group(std::size_t& pos, std::size_t to)
    {
        if (!at(pos, to, "(")) {
            fail(pos, "expected '('");
        }
        const std::size_t open = pos;
        const std::size_t close = match_[open];
        if (close - open < 2) {
            fail(pos, "empty condition");
        }
        pos = close + 1;
        return open;
    }

    Statement block(std::size_t& pos, std::size_t to, StatementKind kind = StatementKind::Block)
    {
        if (!at(pos, to, "{")) {
            fail(pos, "expected '{'");
        }
        Statement s;
        s.kind = kind;
        s.begin = pos;
        const std::size_t close = match_[pos];
        s.children = parse_sequence(pos + 1, close);
        pos = close + 1;
        s.end = pos;
        return s;
    }

    Statement parse_statement(std::size_t& pos, std::size_t to)
    {
        const Token& tk = t_[pos];
        const std::size_t begin = pos;

        if (tk.is("{")) {
            return block(pos, to);
        }
        if (tk.is(";")) {
            ++pos;
            return Statement{StatementKind::Empty, begin, pos, {}, {}, {}};
        }
        if (tk.kind == TokenKind::Keyword) {
            if (contains(kDeclarationOnlyKeywords, tk.text)) {
                fail(pos, "declaration '" + tk.text + "' is not a block statement");
            }
            if (contains(kMisplacedKeywords, tk.text)) {
                fail(pos, "unexpected '" + tk.text + "'");
            }
            if (tk.is("if")) {
                return parse_if(pos, to);
            }
            if (tk.is("while")) {
                Statement s{StatementKind::While, begin, 0, {}, {}, {}};
                ++pos;
                scan_lambdas(paren_group(pos, to), s);
                s.children.push_back(parse_statement(pos, to));
                s.end = pos;
                return s;
            }
            if (tk.is("do")) {
                Statement s{StatementKind::DoWhile, begin, 0, {}, {}, {}};
                ++pos;
                s.children.push_back(parse_statement(pos, to));
                expect(pos, to, "while");
                scan_lambdas(paren_group(pos, to), s);
                expect(pos, to, ";");
                s.end = pos;
                return s;
            }
            if (tk.is("for")) {
                return parse_for(pos, to);
            }
            if (tk.is("switch")) {
                return parse_switch(pos, to);
            }
            if (tk.is("try")) {
                return parse_try(pos, to);
            }
            if (tk.is("return")) {
                ++pos;
                Statement s = run(pos, to, StatementKind::Return, true);
                s.begin = begin;
                return s;
            }
            if (tk.is("throw") || tk.is("assert")) {
                ++pos;
                Statement s = run(pos, to, tk.is("throw") ? StatementKind::Throw : StatementKind::Assert, false);
                s.begin = begin;
                return s;
            }
            if (tk.is("break") || tk.is("continue")) {
                Statement s{tk.is("break") ? StatementKind::Break : StatementKind::Continue, begin, 0, {}, {}, {}};
                ++pos;
                if (pos < to && t_[pos].is_identifier()) {
                    s.label = t_[pos].text;
                    ++pos;
                }
                expect(pos, to, ";");
                s.end = pos;
                return s;
            }
            if (tk.is("synchronized")) {
                Statement s{StatementKind::Synchronized, begin, 0, {}, {}, {}};
                ++pos;
                scan_lambdas(paren_group(pos, to), s);
                s.children.push_back(block(pos, to));
                s.end = pos;
                return s;
            }
            if (tk.is("final")) {
                Statement s = run(pos, to, StatementKind::Expression, false);
                if (s.kind != StatementKind::LocalVariable) {
                    fail(begin, "'final' must introduce a local variable");
                }
                return s;
            }
            // this, super, new, primitive types: expression or declaration
            return run(pos, to, StatementKind::Expression, false);
        }
        if (tk.is_identifier() && pos + 1 < to && t_[pos + 1].is(":")) {
            Statement s{StatementKind::Labeled, begin, 0, {}, {}, tk.text};
            pos += 2;
            if (pos >= to) {
                fail(pos, "label without statement");
            }
            s.children.push_back(parse_statement(pos, to));
            s.end = pos;
            return s;
        }
        if (tk.is_identifier() && tk.is("yield") && pos + 1 < to && is_yield_operand(t_[pos + 1])) {
            ++pos;
            Statement s = run(pos, to, StatementKind::Yield, false);
            s.begin = begin;
            return s;
        }
        if (tk.is_identifier() && (tk.is("record") || tk.is("enum")) && pos + 2 < to &&
            t_[pos + 1].is_identifier() && (t_[pos + 2].is("(") || t_[pos + 2].is("{"))) {
            fail(pos, "local type declaration is not a block statement");
        }
        return run(pos, to, StatementKind::Expression, false);
    }

    static bool is_yield_operand(const Token& next)
    {
        if (next.kind == TokenKind::Operator) {
            return is_prefix_operator(next.text) && next.text != "++" && next.text != "--";
        }
        return !next.is("(") && !next.is("[") && !next.is(";");
    }

    Statement parse_if(std::size_t& pos, std::size_t to)
    {
        Statement s{StatementKind::If, pos, 0, {}, {}, {}};
        ++pos;
        scan_lambdas(paren_group(pos, to), s);
        if (pos >= to) {
            fail(pos, "missing statement after if");
        }
        s.children.push_back(parse_statement(pos, to));
        if (at(pos, to, "else")) {
            ++pos;
            if (pos >= to) {
                fail(pos, "missing statement after else");
            }
            s.children.push_back(parse_statement(pos, to));
        }
        s.end = pos;
        return s;
    }

    Statement parse_for(std::size_t& pos, std::size_t to)
    {
        Statement s{StatementKind::For, pos, 0, {}, {}, {}};
        ++pos;
        const std::size_t open = paren_group(pos, to);
        const std::size_t close = match_[open];

        std::size_t first_semi = kNoMatch;
        std::size_t colon = kNoMatch;
        for (std::size_t i = open + 1; i < close; ++i) {
            if (match_[i] != kNoMatch && match_[i] > i) {
                i = match_[i];
                continue;
            }
            if (t_[i].is(";") && first_semi == kNoMatch) {
                first_semi = i;
            } else if (t_[i].is(":") && colon == kNoMatch && first_semi == kNoMatch) {
                colon = i;
            }
        }
        if (first_semi != kNoMatch) {
            if (first_semi > open + 1) {
                if (auto decls = local_declaration(open + 1, first_semi)) {
                    s.declarations = std::move(*decls);
                }
            }
        } else if (colon != kNoMatch) {
            s.kind = StatementKind::ForEach;
            auto decls = local_declaration(open + 1, colon);
            if (!decls || decls->size() != 1) {
                fail(open + 1, "malformed enhanced for");
            }
            s.declarations = std::move(*decls);
        } else {
            fail(open, "malformed for header");
        }
        scan_lambdas(open, s);
        if (pos >= to) {
            fail(pos, "missing loop body");
        }
        s.children.push_back(parse_statement(pos, to));
        s.end = pos;
        return s;
    }

    Statement parse_switch(std::size_t& pos, std::size_t to)
    {
        Statement s{StatementKind::Switch, pos, 0, {}, {}, {}};
        ++pos;
        scan_lambdas(paren_group(pos, to), s);
        if (!at(pos, to, "{")) {
            fail(pos, "expected switch body");
        }
        const std::size_t close = match_[pos];
        std::size_t p = pos + 1;
        while (p < close) {
            const Token& tk = t_[p];
            if (tk.is("case") || tk.is("default")) {
                Statement label{StatementKind::SwitchLabel, p, 0, {}, {}, {}};
                std::size_t q = p + 1;
                while (q < close && !t_[q].is(":") && !t_[q].is("->")) {
                    if (match_[q] != kNoMatch && match_[q] > q) {
                        q = match_[q];
                    }
                    ++q;
                }
                if (q >= close) {
                    fail(p, "unterminated switch label");
                }
                const bool arrow = t_[q].is("->");
                p = q + 1;
                label.end = p;
                s.children.push_back(std::move(label));
                if (arrow) {
                    if (p >= close) {
                        fail(p, "missing switch rule body");
                    }
                    s.children.push_back(parse_statement(p, close));
                }
                continue;
            }
            s.children.push_back(parse_statement(p, close));
        }
        pos = close + 1;
        s.end = pos;
        return s;
    }

    Statement parse_try(std::size_t& pos, std::size_t to)
    {
        Statement s{StatementKind::Try, pos, 0, {}, {}, {}};
        ++pos;
        bool has_resources = false;
        if (at(pos, to, "(")) {
            const std::size_t open = pos;
            const std::size_t close = match_[open];
            std::size_t start = open + 1;
            for (std::size_t i = open + 1; i <= close; ++i) {
                if (i < close && match_[i] != kNoMatch && match_[i] > i) {
                    i = match_[i];
                    continue;
                }
                if (i == close || t_[i].is(";")) {
                    if (i > start) {
                        if (auto decls = local_declaration(start, i)) {
                            s.declarations.insert(s.declarations.end(), decls->begin(), decls->end());
                        }
                    }
                    start = i + 1;
                }
            }
            scan_lambdas(open, s);
            pos = close + 1;
            has_resources = true;
        }
        s.children.push_back(block(pos, to));
        bool handlers = false;
        while (at(pos, to, "catch")) {
            Statement c{StatementKind::Catch, pos, 0, {}, {}, {}};
            ++pos;
            const std::size_t open = paren_group(pos, to);
            const std::size_t close = match_[open];
            std::size_t name = close - 1;
            if (!t_[name].is_identifier()) {
                fail(name, "malformed catch parameter");
            }
            std::size_t type_begin = open + 1;
            while (type_begin < name && (t_[type_begin].is("final") || t_[type_begin].is("@"))) {
                type_begin += t_[type_begin].is("@") ? 2 : 1;
            }
            c.declarations.push_back(Declaration{
                t_[name].text, render_type(t_.subspan(type_begin, name - type_begin)), name, t_[name].line});
            c.children.push_back(block(pos, to));
            c.end = pos;
            s.children.push_back(std::move(c));
            handlers = true;
        }
        if (at(pos, to, "finally")) {
            ++pos;
            s.children.push_back(block(pos, to));
            handlers = true;
        }
        if (!handlers && !has_resources) {
            fail(s.begin, "try without catch or finally");
        }
        s.end = pos;
        return s;
    }

    /// Records block lambda bodies found inside the group opened at `open`.
    void scan_lambdas(std::size_t open, Statement& owner)
    {
        scan_range_for_lambdas(open + 1, match_[open], owner);
    }

    void scan_range_for_lambdas(std::size_t from, std::size_t to, Statement& owner)
    {
        for (std::size_t i = from; i < to; ++i) {
            if (!t_[i].is("{")) {
                continue;
            }
            if (i > 0 && t_[i - 1].is("->")) {
                std::size_t p = i;
                owner.children.push_back(block(p, match_[i] + 1, StatementKind::LambdaBody));
            }
            i = match_[i];
        }
    }

    /**
     * Parses an expression or local-variable statement ending at the next
     * top-level `;`.
     */
    Statement run(std::size_t& pos, std::size_t to, StatementKind kind, bool allow_empty)
    {
        const std::size_t begin = pos;
        std::size_t depth = 0;
        std::size_t semi = kNoMatch;
        for (std::size_t i = pos; i < to; ++i) {
            const Token& tk = t_[i];
            if (tk.is("{")) {
                i = match_[i];
                continue;
            }
            if (tk.is("(") || tk.is("[")) {
                ++depth;
            } else if (tk.is(")") || tk.is("]")) {
                --depth;
            } else if (tk.is(";")) {
                if (depth != 0) {
                    fail(i, "unexpected ';'");
                }
                semi = i;
                break;
            }
        }
        if (semi == kNoMatch) {
            fail(to > begin ? to - 1 : begin, "expected ';'");
        }
        Statement s{kind, begin, semi + 1, {}, {}, {}};
        if (semi == begin) {
            if (!allow_empty) {
                fail(begin, "empty expression");
            }
        } else if (kind == StatementKind::Expression) {
            if (auto decls = local_declaration(begin, semi)) {
                s.kind = StatementKind::LocalVariable;
                s.declarations = std::move(*decls);
                check_initializers(begin, semi);
            } else {
                check_expression(begin, semi);
            }
        } else {
            check_expression(begin, semi);
        }
        scan_range_for_lambdas(begin, semi, s);
        pos = semi + 1;
        return s;
    }

    std::size_t skip_annotations(std::size_t i, std::size_t limit) const
    {
        while (i + 1 < limit && t_[i].is("@") && t_[i + 1].is_identifier()) {
            i += 2;
            while (i + 1 < limit && t_[i].is(".") && t_[i + 1].is_identifier()) {
                i += 2;
            }
            if (i < limit && t_[i].is("(")) {
                i = match_[i] + 1;
            }
        }
        return i;
    }

    /// End index of a type starting at `i`, or nullopt.
    std::optional<std::size_t> parse_type(std::size_t i, std::size_t limit) const
    {
        i = skip_annotations(i, limit);
        if (i >= limit) {
            return std::nullopt;
        }
        if (is_primitive(t_[i])) {
            ++i;
        } else if (t_[i].is_identifier()) {
            ++i;
            for (;;) {
                if (i < limit && t_[i].is("<")) {
                    auto after = skip_type_arguments(i, limit);
                    if (!after) {
                        return std::nullopt;
                    }
                    i = *after;
                }
                if (i + 1 < limit && t_[i].is(".") && t_[i + 1].is_identifier()) {
                    i += 2;
                    continue;
                }
                break;
            }
        } else {
            return std::nullopt;
        }
        while (i + 1 < limit && t_[i].is("[") && t_[i + 1].is("]")) {
            i += 2;
        }
        return i;
    }

    std::optional<std::size_t> skip_type_arguments(std::size_t i, std::size_t limit) const
    {
        int depth = 0;
        for (; i < limit; ++i) {
            const Token& tk = t_[i];
            if (tk.is("<")) {
                ++depth;
            } else if (tk.is(">")) {
                depth -= 1;
            } else if (tk.is(">>")) {
                depth -= 2;
            } else if (tk.is(">>>")) {
                depth -= 3;
            } else if (!(tk.is_identifier() || is_primitive(tk) || tk.is(".") || tk.is(",") ||
                         tk.is("?") || tk.is("extends") || tk.is("super") || tk.is("[") ||
                         tk.is("]") || tk.is("&") || tk.is("@"))) {
                return std::nullopt;
            }
            if (depth < 0) {
                return std::nullopt;
            }
            if (depth == 0) {
                return i + 1;
            }
        }
        return std::nullopt;
    }

    /// Declarators of a local variable declaration spanning [begin, end), or nullopt.
    std::optional<std::vector<Declaration>> local_declaration(std::size_t begin, std::size_t end) const
    {
        std::size_t i = begin;
        for (;;) {
            const std::size_t after = skip_annotations(i, end);
            if (after < end && t_[after].is("final")) {
                i = after + 1;
                continue;
            }
            i = after;
            break;
        }
        const std::size_t type_begin = i;
        const auto type_end = parse_type(i, end);
        if (!type_end || *type_end >= end || !t_[*type_end].is_identifier()) {
            return std::nullopt;
        }
        const std::size_t name = *type_end;
        if (name + 1 < end) {
            const Token& follow = t_[name + 1];
            if (!(follow.is("=") || follow.is(",") || follow.is("["))) {
                return std::nullopt;
            }
        }
        const std::string base_type = render_type(t_.subspan(type_begin, name - type_begin));

        std::vector<Declaration> out;
        std::size_t declarator = name;
        for (;;) {
            if (declarator >= end || !t_[declarator].is_identifier()) {
                return std::nullopt;
            }
            std::string type = base_type;
            std::size_t p = declarator + 1;
            while (p + 1 < end && t_[p].is("[") && t_[p + 1].is("]")) {
                type += "[]";
                p += 2;
            }
            out.push_back(Declaration{t_[declarator].text, type, declarator, t_[declarator].line});
            while (p < end && !t_[p].is(",")) {
                if (match_[p] != kNoMatch && match_[p] > p) {
                    p = match_[p];
                }
                ++p;
            }
            if (p >= end) {
                break;
            }
            declarator = p + 1;
        }
        return out;
    }

    void check_initializers(std::size_t begin, std::size_t end)
    {
        for (std::size_t i = begin; i < end; ++i) {
            if (match_[i] != kNoMatch && match_[i] > i) {
                i = match_[i];
                continue;
            }
            if (!t_[i].is("=")) {
                continue;
            }
            std::size_t j = i + 1;
            while (j < end && !t_[j].is(",")) {
                if (match_[j] != kNoMatch && match_[j] > j) {
                    j = match_[j];
                }
                ++j;
            }
            if (j == i + 1) {
                fail(i, "missing initializer");
            }
            if (!t_[i + 1].is("{")) {
                check_expression(i + 1, j);
            }
            i = j;
        }
    }

    /// Shallow sanity checks on an expression token run [begin, end).
    void check_expression(std::size_t begin, std::size_t end)
    {
        const Token& first = t_[begin];
        if (first.kind == TokenKind::Operator && !is_prefix_operator(first.text)) {
            fail(begin, "expression cannot start with '" + first.text + "'");
        }
        if (first.kind == TokenKind::Punctuation && !first.is("(") && !first.is("{")) {
            fail(begin, "expression cannot start with '" + first.text + "'");
        }
        if (first.kind == TokenKind::Keyword && !(first.is("this") || first.is("super") ||
                                                 first.is("new") || first.is("switch") ||
                                                 is_primitive(first))) {
            fail(begin, "unexpected '" + first.text + "'");
        }
        const Token& last = t_[end - 1];
        if (last.kind == TokenKind::Operator && last.text != "++" && last.text != "--") {
            fail(end - 1, "expression cannot end with '" + last.text + "'");
        }
        if (last.is(",") || last.is("@")) {
            fail(end - 1, "expression cannot end with '" + last.text + "'");
        }
        for (std::size_t i = begin; i < end; ++i) {
            const Token& tk = t_[i];
            if (tk.is("{")) {
                i = match_[i];
                continue;
            }
            if (tk.is("(") && match_[i] + 1 < end && t_[match_[i] + 1].is("->")) {
                // explicitly typed lambda parameters
                i = match_[i];
                continue;
            }
            if (i > begin && ends_atom(t_[i - 1]) && starts_atom(tk)) {
                const bool pattern = i >= begin + 2 && t_[i - 2].is("instanceof");
                if (!pattern) {
                    fail(i, "unexpected '" + tk.text + "'");
                }
            }
            if (tk.is(",") && i + 1 < end && t_[i + 1].is(",")) {
                fail(i, "unexpected ','");
            }
            if (tk.kind == TokenKind::Operator && is_assignment_operator(tk.text) && i + 1 < end &&
                t_[i + 1].kind == TokenKind::Operator && !is_prefix_operator(t_[i + 1].text)) {
                fail(i + 1, "unexpected '" + t_[i + 1].text + "'");
            }
        }
    }

    std::span<const Token> t_;
    std::vector<std::size_t> match_;
};

} // namespace

std::vector<std::size_t> match_delimiters(std::span<const Token> tokens)
{
    std::vector<std::size_t> match(tokens.size(), kNoMatch);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        if (t.kind != TokenKind::Punctuation) {
            continue;
        }
        if (t.is("(") || t.is("[") || t.is("{")) {
            stack.push_back(i);
        } else if (t.is(")") || t.is("]") || t.is("}")) {
            const char open = t.is(")") ? '(' : t.is("]") ? '[' : '{';
            if (stack.empty() || tokens[stack.back()].text[0] != open) {
                throw Error(ErrorCode::SyntaxError, "unbalanced '" + t.text + "'", t.line);
            }
            match[i] = stack.back();
            match[stack.back()] = i;
            stack.pop_back();
        }
    }
    if (!stack.empty()) {
        throw Error(ErrorCode::SyntaxError, "unclosed '" + tokens[stack.back()].text + "'",
                    tokens[stack.back()].line);
    }
    return match;
}

std::vector<Statement> parse_block_statements(std::span<const Token> tokens)
{
    StatementParser parser(tokens, match_delimiters(tokens));
    return parser.parse_sequence(0, tokens.size());
}

bool is_loop(StatementKind kind) noexcept
{
    return kind == StatementKind::For || kind == StatementKind::ForEach ||
           kind == StatementKind::While || kind == StatementKind::DoWhile;
}

void walk(const std::vector<Statement>& statements, const std::function<bool(const Statement&)>& visit)
{
    for (const auto& s : statements) {
        if (visit(s)) {
            walk(s.children, visit);
        }
    }
}

std::vector<Declaration> collect_declarations(const std::vector<Statement>& statements)
{
    std::vector<Declaration> out;
    walk(statements, [&](const Statement& s) {
        if (s.kind == StatementKind::LambdaBody) {
            return false;
        }
        out.insert(out.end(), s.declarations.begin(), s.declarations.end());
        return true;
    });
    std::sort(out.begin(), out.end(),
              [](const Declaration& a, const Declaration& b) { return a.token < b.token; });
    return out;
}

std::string render_type(std::span<const Token> tokens)
{
    std::string out;
    const Token* prev = nullptr;
    for (const auto& t : tokens) {
        const bool wordy = t.kind == TokenKind::Identifier || t.kind == TokenKind::Keyword || t.is("?");
        const bool prev_wordy = prev && (prev->kind == TokenKind::Identifier ||
                                         prev->kind == TokenKind::Keyword || prev->is("?"));
        if (prev && ((wordy && prev_wordy) || prev->is(",") || t.is("&") || prev->is("&"))) {
            out += ' ';
        }
        out += t.text;
        prev = &t;
    }
    return out;
}

} // namespace acp
