#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace acp {

/**
 * Failure categories raised by the engine.
 *
 * Names are stable: they appear verbatim in CLI diagnostics and in the
 * drop reasons of the simulation log.
 */
enum class ErrorCode : std::uint8_t {
    LexError,
    SyntaxError,
    IndexError,
    EmptyScope,
    UndefinedSimilarity,
    EmptyDistribution,
    InvalidSensitivity,
    MissingContext,
    NotComputable,
    TooManyOutputs,
    IllegalFlow,
    UnresolvedType,
    NotStatementSpan,
    NameCollision,
    InvalidIdentifier,
    StaleSite,
    MissingRoot,
    ConfigSyntax,
    InvalidSetting,
    UnknownSubmetric,
    UnknownKeyword,
    UnknownProject,
    FileMissing,
    ScenarioSyntax,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, int line = 0);

    ErrorCode code() const noexcept { return code_; }

    /// Source line the error refers to, 0 when not applicable.
    int line() const noexcept { return line_; }

private:
    ErrorCode code_;
    int line_;
};

} // namespace acp
