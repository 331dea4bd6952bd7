#pragma once

#include <stdexcept>
#include <string>

namespace kabel {

enum class Errc {
    InvalidArgument,
    ParseError,
    NotProlongable,
    NotPrimitive,
    IrreducibilityUndecided,
    WindowTooLong,
    NotAnEigenpair,
    InvalidRepresentation,
    NotUltimatelyPisot,
    RootMismatch,
    StateBudgetExceeded,
    UnknownRelation,
    ArityMismatch,
    MixedNumerationWithoutConverter,
    TrackMismatch,
    ValueNotInRange,
    CapExceeded,
    PrefixTooShort,
    UnknownFormat,
    Tau2NotUltimatelyPisot,
};

const char* errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace kabel
