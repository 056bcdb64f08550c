#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace credence {

enum class ErrorCode {
    OverlappingEvents,
    NonExhaustive,
    UnknownOutcome,
    DepthLimit,
    Degenerate,
    InconsistentOutcomeOrder,
    AtomBoundExceeded,
    QueryBudgetExceeded,
    DegenerateUtilities,
    NotRepresentable,
    NotQualitative,
    NoMedianFound,
    InconsistentAnswers,
    BadParams,
    UnknownAct,
    MissingProbability,
    ElicitationFailed,
    SessionComplete,
    SessionInconsistent,
    StaleQuery,
    UnknownSession,
    NoDataYet,
    Parse,
};

std::string_view to_string(ErrorCode code);

// Base of every error raised by the library. Subclasses that need to hand a
// partial result back to the caller carry it as a member.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace credence
