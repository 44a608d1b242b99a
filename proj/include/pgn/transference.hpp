#pragma once

#include <string>
#include <vector>

#include "pgn/rational.hpp"

namespace pgn {

// Dirichlet exponent (d+1)/(n-d).
Rational dirichlet_exponent(int n, int d);

struct InequalityCheck {
    std::string name;  // e.g. "left", "right", "tau0", "going-up"
    int d = 0;
    ExtendedRational lhs;
    ExtendedRational rhs;
    bool holds = false;  // lhs <= rhs
    bool equality = false;
};

struct TauReport {
    bool ok = false;
    std::vector<InequalityCheck> tau_form;    // tau_0 >= 1/n and the chained pair per d
    std::vector<InequalityCheck> theta_form;  // theta_i = (1 + tau_{n-i})^-1
    bool forms_agree = false;
    std::vector<std::string> violations;  // human-readable, names the failing inequality
};

TauReport validate_tau(int n, const std::vector<ExtendedRational>& tau);

struct TransferenceReport {
    bool ok = false;
    std::vector<InequalityCheck> checks;  // going-up, going-down, khintchine-lower, khintchine-upper
    bool chain_matches_closed_form = false;
    std::vector<std::string> violations;
};

TransferenceReport transference_check(int n, const std::vector<ExtendedRational>& omega);

}  // namespace pgn
