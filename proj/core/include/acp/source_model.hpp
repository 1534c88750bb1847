#pragma once

#include "acp/lexer.hpp"

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace acp {

/**
 * Stable method identity: file path, first body line and name.
 *
 * Ordering is path, then numeric line, then name, so that result lists
 * sorted by id follow source order.
 */
struct MethodId {
    std::string file;
    int line{0};
    std::string name;

    std::string str() const;

    friend auto operator<=>(const MethodId&, const MethodId&) = default;
    friend bool operator==(const MethodId&, const MethodId&) = default;
};

struct ClassContext {
    std::string class_name;
    std::map<std::string, std::string> field_names;   ///< name -> declared type
    std::set<std::string> method_names;
    std::string file_path;
};

struct Parameter {
    std::string name;
    std::string type;

    friend bool operator==(const Parameter&, const Parameter&) = default;
};

struct LocalDeclaration {
    std::string type;
    int line{0};

    friend bool operator==(const LocalDeclaration&, const LocalDeclaration&) = default;
};

/**
 * An indexed method body.
 *
 * The body line range covers the lines holding body tokens; the opening and
 * closing braces' lines are part of it only when a body token shares them.
 * `body_text` is the exact source between the braces clipped to that range,
 * so tokenizing it reproduces `body_tokens`.
 */
struct MethodUnit {
    MethodId id;
    std::string name;
    std::vector<Parameter> parameters;
    std::vector<Token> body_tokens;      ///< absolute file lines and offsets
    int start_line{0};
    int end_line{0};
    std::vector<int> nesting_profile;    ///< one depth per body line, top level = 1
    std::map<std::string, LocalDeclaration> local_declarations;
    std::shared_ptr<const ClassContext> owner;
    bool is_static{false};

    std::string body_text;
    std::size_t body_offset{0};          ///< file offset of body_text

    /// Whole declaration: first modifier/annotation through the closing brace.
    std::string declaration_text;
    int declaration_start_line{0};
    int declaration_end_line{0};         ///< line of the closing brace
    std::size_t declaration_offset{0};
    std::size_t declaration_end_offset{0};

    int line_count() const noexcept { return end_line - start_line + 1; }
};

struct PasteSite {
    std::string file_path;
    int line{0};
    std::optional<MethodId> method;
};

/**
 * A pasted code segment after validation.
 *
 * `text` is the raw text with leading and trailing blank lines removed;
 * token lines are relative to it (first line = 1).
 */
struct Fragment {
    std::string raw_text;
    std::string text;
    std::vector<Token> tokens;
    int line_count{0};
    std::size_t symbol_count{0};
    bool valid{false};
    std::string invalid_reason;
    std::optional<PasteSite> paste_site;
};

struct FileIndex {
    std::string path;
    std::string text;                    ///< LF-normalized
    std::vector<MethodUnit> methods;
    std::vector<std::shared_ptr<const ClassContext>> classes;
};

/// Lexes and indexes one file. Throws Error(LexError) or Error(IndexError).
FileIndex index_file(std::string_view text, const std::string& file_path);

/// Never throws; an unlexable or ungrammatical fragment is returned with valid = false.
Fragment validate_fragment(std::string_view text);

/// Views a method body as a fragment (tokens rebased to the body's first line).
Fragment fragment_from_method(const MethodUnit& method);

/// Per-line nesting depth. Throws Error(EmptyScope) on an empty scope.
std::vector<int> nesting_profile(const Fragment& fragment);
std::vector<int> nesting_profile(const MethodUnit& method);

/// Count of non-whitespace bytes.
std::size_t count_symbols(std::string_view text) noexcept;

/// Number of lines after trimming leading and trailing blank lines.
int count_lines(std::string_view text) noexcept;

/// Removes leading and trailing blank lines.
std::string trim_blank_lines(std::string_view text);

/**
 * Immutable snapshot of every indexed file of a project.
 *
 * Files are keyed by project-relative path with '/' separators.
 */
class ProjectIndex {
public:
    ProjectIndex() = default;
    explicit ProjectIndex(std::map<std::string, std::shared_ptr<const FileIndex>> files);

    const std::map<std::string, std::shared_ptr<const FileIndex>>& files() const noexcept { return files_; }

    /// All methods ordered by MethodId.
    const std::vector<const MethodUnit*>& methods() const noexcept { return methods_; }

    const FileIndex* file(const std::string& path) const;
    const MethodUnit* method(const MethodId& id) const;

    /// Method of `file` whose body line range contains `line`.
    const MethodUnit* enclosing_method(const std::string& file, int line) const;

    std::size_t method_count() const noexcept { return methods_.size(); }

private:
    std::map<std::string, std::shared_ptr<const FileIndex>> files_;
    std::vector<const MethodUnit*> methods_;
};

} // namespace acp
