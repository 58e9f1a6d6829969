#pragma once

#include <stdexcept>
#include <string>

namespace shilsim {

/// Base class for all errors raised by the library. `kind()` returns a
/// stable machine-readable tag; `what()` carries the human-readable text.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define SHILSIM_DEFINE_ERROR(NAME, TAG)                                    \
    class NAME : public Error {                                            \
    public:                                                                \
        explicit NAME(const std::string& message) : Error(TAG, message) {} \
    }

// phasor
SHILSIM_DEFINE_ERROR(DegenerateSum, "degenerate_sum");
SHILSIM_DEFINE_ERROR(MetastablePhase, "metastable_phase");
SHILSIM_DEFINE_ERROR(AmplitudeTooSmall, "amplitude_too_small");

// circuit / transient
SHILSIM_DEFINE_ERROR(ConfigInvalid, "config_invalid");
SHILSIM_DEFINE_ERROR(UnknownComponent, "unknown_component");
SHILSIM_DEFINE_ERROR(StepUnderflow, "step_underflow");
SHILSIM_DEFINE_ERROR(NonFiniteState, "non_finite_state");

// analysis
SHILSIM_DEFINE_ERROR(WindowOutOfRange, "window_out_of_range");
SHILSIM_DEFINE_ERROR(LockNotFound, "lock_not_found");
SHILSIM_DEFINE_ERROR(DegenerateStates, "degenerate_states");
SHILSIM_DEFINE_ERROR(MissingColumns, "missing_columns");
SHILSIM_DEFINE_ERROR(TooShort, "too_short");
SHILSIM_DEFINE_ERROR(FlipNotInTrace, "flip_not_in_trace");

// logic networks
SHILSIM_DEFINE_ERROR(CombinationalCycle, "combinational_cycle");
SHILSIM_DEFINE_ERROR(UnassignedInput, "unassigned_input");
SHILSIM_DEFINE_ERROR(UndrivenNode, "undriven_node");
SHILSIM_DEFINE_ERROR(MultipleDrivers, "multiple_drivers");

#undef SHILSIM_DEFINE_ERROR

/// Parse-time diagnostic with source location (config files, netlists).
class ParseError : public Error {
public:
    ParseError(std::string kind, int line, int column, const std::string& message)
        : Error(std::move(kind),
                "line " + std::to_string(line) + ", col " + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

#define SHILSIM_DEFINE_PARSE_ERROR(NAME, TAG)                          \
    class NAME : public ParseError {                                   \
    public:                                                            \
        NAME(int line, int column, const std::string& message)        \
            : ParseError(TAG, line, column, message) {}                \
    }

SHILSIM_DEFINE_PARSE_ERROR(SyntaxError, "syntax_error");
SHILSIM_DEFINE_PARSE_ERROR(UnknownKey, "unknown_key");
SHILSIM_DEFINE_PARSE_ERROR(MissingRequired, "missing_required");
SHILSIM_DEFINE_PARSE_ERROR(UnitMismatch, "unit_mismatch");

#undef SHILSIM_DEFINE_PARSE_ERROR

} // namespace shilsim
