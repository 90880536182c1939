#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace covmin {

/// Failure categories. The CLI maps these onto exit codes
/// (input errors -> 2, budget -> 3, inconsistency -> 4).
enum class Errc {
    Singular,
    NotFullDimensional,
    OriginNotInterior,
    OriginMissing,
    EmptySlice,
    SliceDegenerate,
    NonPositiveWeight,
    UnsortedWeights,
    ZeroLength,
    IndexOutOfRange,
    MissingIndex,
    MissingLambda,
    NotSymmetric,
    NotLAB,
    DimensionMismatch,
    InvalidInput,
    BudgetExceeded,
    Inconsistent,
};

inline std::string_view errc_name(Errc c) {
    switch (c) {
    case Errc::Singular: return "Singular";
    case Errc::NotFullDimensional: return "NotFullDimensional";
    case Errc::OriginNotInterior: return "OriginNotInterior";
    case Errc::OriginMissing: return "OriginMissing";
    case Errc::EmptySlice: return "EmptySlice";
    case Errc::SliceDegenerate: return "SliceDegenerate";
    case Errc::NonPositiveWeight: return "NonPositiveWeight";
    case Errc::UnsortedWeights: return "UnsortedWeights";
    case Errc::ZeroLength: return "ZeroLength";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::MissingIndex: return "MissingIndex";
    case Errc::MissingLambda: return "MissingLambda";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NotLAB: return "NotLAB";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::Inconsistent: return "Inconsistent";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
    if (!cond)
        fail(code, what);
}

} // namespace covmin
