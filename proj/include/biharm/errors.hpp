#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace biharm {

enum class ErrorCode {
    NonNegativeGamma,
    NonPositiveLength,
    InvalidArgument,
    LambdaBelowSpectralFloor,
    NonPositiveEigenvalue,
    InsufficientModes,
    GridTooCoarse,
    DimensionMismatch,
    UnresolvedSignConvention,
    QuadratureUnderResolved,
    StepTooLarge,
    NotResonantPair,
    NotResonant,
    ResonantParameters,
    SingularGram,
    InvalidScenario,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// CLI and the Python layer can map it to a stable machine-readable form.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace biharm
