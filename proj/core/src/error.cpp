#include "acp/error.hpp"

namespace acp {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::LexError: return "LexError";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::IndexError: return "IndexError";
    case ErrorCode::EmptyScope: return "EmptyScope";
    case ErrorCode::UndefinedSimilarity: return "UndefinedSimilarity";
    case ErrorCode::EmptyDistribution: return "EmptyDistribution";
    case ErrorCode::InvalidSensitivity: return "InvalidSensitivity";
    case ErrorCode::MissingContext: return "MissingContext";
    case ErrorCode::NotComputable: return "NotComputable";
    case ErrorCode::TooManyOutputs: return "TooManyOutputs";
    case ErrorCode::IllegalFlow: return "IllegalFlow";
    case ErrorCode::UnresolvedType: return "UnresolvedType";
    case ErrorCode::NotStatementSpan: return "NotStatementSpan";
    case ErrorCode::NameCollision: return "NameCollision";
    case ErrorCode::InvalidIdentifier: return "InvalidIdentifier";
    case ErrorCode::StaleSite: return "StaleSite";
    case ErrorCode::MissingRoot: return "MissingRoot";
    case ErrorCode::ConfigSyntax: return "ConfigSyntax";
    case ErrorCode::InvalidSetting: return "InvalidSetting";
    case ErrorCode::UnknownSubmetric: return "UnknownSubmetric";
    case ErrorCode::UnknownKeyword: return "UnknownKeyword";
    case ErrorCode::UnknownProject: return "UnknownProject";
    case ErrorCode::FileMissing: return "FileMissing";
    case ErrorCode::ScenarioSyntax: return "ScenarioSyntax";
    }
    return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message, int line)
{
    std::string out(to_string(code));
    if (line > 0) {
        out += " (line " + std::to_string(line) + ")";
    }
    if (!message.empty()) {
        out += ": " + message;
    }
    return out;
}

} // namespace

Error::Error(ErrorCode code, const std::string& message, int line)
    : std::runtime_error(decorate(code, message, line))
    , code_(code)
    , line_(line)
{
}

} // namespace acp
