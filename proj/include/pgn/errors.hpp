#pragma once

#include <stdexcept>
#include <string>

namespace pgn {

enum class Errc {
    OutOfDomain,
    DomainMismatch,
    GapOrOverlap,
    DiscontinuousJoin,
    InvalidParams,
    InvalidTau,
    ConstraintInfeasible,
    GrowthViolation,
    DimensionMismatch,
    BudgetExceeded,
    GradeOverflow,
    ZeroInput,
    DependentBasis,
    ExhaustedWithoutWitness,
    InsufficientData,
    ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace pgn
