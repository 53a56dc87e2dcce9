#include "biharm/errors.hpp"

namespace biharm {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonNegativeGamma: return "NonNegativeGamma";
        case ErrorCode::NonPositiveLength: return "NonPositiveLength";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::LambdaBelowSpectralFloor: return "LambdaBelowSpectralFloor";
        case ErrorCode::NonPositiveEigenvalue: return "NonPositiveEigenvalue";
        case ErrorCode::InsufficientModes: return "InsufficientModes";
        case ErrorCode::GridTooCoarse: return "GridTooCoarse";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::UnresolvedSignConvention: return "UnresolvedSignConvention";
        case ErrorCode::QuadratureUnderResolved: return "QuadratureUnderResolved";
        case ErrorCode::StepTooLarge: return "StepTooLarge";
        case ErrorCode::NotResonantPair: return "NotResonantPair";
        case ErrorCode::NotResonant: return "NotResonant";
        case ErrorCode::ResonantParameters: return "ResonantParameters";
        case ErrorCode::SingularGram: return "SingularGram";
        case ErrorCode::InvalidScenario: return "InvalidScenario";
    }
    return "Unknown";
}

}  // namespace biharm
