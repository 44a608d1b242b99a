#include "pgn/errors.hpp"

namespace pgn {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::OutOfDomain: return "OutOfDomain";
        case Errc::DomainMismatch: return "DomainMismatch";
        case Errc::GapOrOverlap: return "GapOrOverlap";
        case Errc::DiscontinuousJoin: return "DiscontinuousJoin";
        case Errc::InvalidParams: return "InvalidParams";
        case Errc::InvalidTau: return "InvalidTau";
        case Errc::ConstraintInfeasible: return "ConstraintInfeasible";
        case Errc::GrowthViolation: return "GrowthViolation";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::GradeOverflow: return "GradeOverflow";
        case Errc::ZeroInput: return "ZeroInput";
        case Errc::DependentBasis: return "DependentBasis";
        case Errc::ExhaustedWithoutWitness: return "ExhaustedWithoutWitness";
        case Errc::InsufficientData: return "InsufficientData";
        case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace pgn
