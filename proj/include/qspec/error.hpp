#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qspec {

// Every failure the library can report. The CLI maps each code to exactly
// one exit status (see cli.hpp).
enum class ErrorCode {
    ZeroDivisor,
    OutOfDomain,
    NotIntrinsic,
    DimensionMismatch,
    StructureViolation,
    NoConvergence,
    OddRealMultiplicity,
    Singular,
    SeriesDiverges,
    AlphaInSpectrum,
    DomainTooTight,
    QuadratureStalled,
    SingularNode,
    BranchCut,
    InvalidArgument,
    ParseError,
    NonSquare,
    NonFiniteEntry,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::ZeroDivisor: return "ZeroDivisor";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NotIntrinsic: return "NotIntrinsic";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::StructureViolation: return "StructureViolation";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::OddRealMultiplicity: return "OddRealMultiplicity";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::SeriesDiverges: return "SeriesDiverges";
    case ErrorCode::AlphaInSpectrum: return "AlphaInSpectrum";
    case ErrorCode::DomainTooTight: return "DomainTooTight";
    case ErrorCode::QuadratureStalled: return "QuadratureStalled";
    case ErrorCode::SingularNode: return "SingularNode";
    case ErrorCode::BranchCut: return "BranchCut";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace qspec
