#include "pgn/transference.hpp"

#include "pgn/errors.hpp"

namespace pgn {

using ER = ExtendedRational;

Rational dirichlet_exponent(int n, int d) { return frac(d + 1, n - d); }

namespace {

InequalityCheck make_check(std::string name, int d, ER lhs, ER rhs) {
    InequalityCheck c{std::move(name), d, lhs, rhs, lhs <= rhs, lhs == rhs};
    return c;
}

std::string describe(const InequalityCheck& c) {
    return c.name + " (d=" + std::to_string(c.d) + "): " + to_string(c.lhs) + " <= " + to_string(c.rhs) + " fails";
}

// d*w/(w+d+1), which is d at w = inf.
ER going_down(int d, const ER& w) {
    if (w.is_inf()) return ER(Rational(d));
    return ER(d * w.value() / (w.value() + d + 1));
}

// ((n-d)*w + 1)/(n-d-1), inf at w = inf.
ER going_up(int n, int d, const ER& w) {
    if (w.is_inf()) return ER::infinity();
    return ER(((n - d) * w.value() + 1) / Rational(n - d - 1));
}

// ((n-d)*w - 1)/(n-d+1), inf at w = inf.
ER right_bound(int n, int d, const ER& w) {
    if (w.is_inf()) return ER::infinity();
    return ER(((n - d) * w.value() - 1) / Rational(n - d + 1));
}

}  // namespace

TauReport validate_tau(int n, const std::vector<ER>& tau) {
    TauReport rep;
    if (n < 2) {
        rep.violations.push_back("n must be at least 2");
        return rep;
    }
    if (tau.size() != static_cast<size_t>(n)) {
        rep.violations.push_back("tau needs n = " + std::to_string(n) + " entries, got " + std::to_string(tau.size()));
        return rep;
    }
    for (const auto& t : tau)
        if (!t.is_inf() && t.value() < 0) {
            rep.violations.push_back("tau entries must be nonnegative");
            return rep;
        }

    rep.tau_form.push_back(make_check("tau0>=omega0", 0, ER(frac(1, n)), tau[0]));
    for (int d = 1; d <= n - 1; ++d) {
        rep.tau_form.push_back(make_check("left", d, going_down(d, tau[d]), tau[d - 1]));
        rep.tau_form.push_back(make_check("right", d, tau[d - 1], right_bound(n, d, tau[d])));
    }

    std::vector<Rational> theta(n + 2);  // theta[1..n], theta[n+1] = 1
    for (int i = 1; i <= n; ++i) theta[i] = tau[n - i].inv_one_plus();
    theta[n + 1] = 1;
    // theta_i/i <= theta_{i+1}/(i+1); i = n carries tau_0 >= 1/n.
    for (int i = 1; i <= n; ++i)
        rep.theta_form.push_back(make_check("theta-ratio", i, ER(theta[i] / i), ER(theta[i + 1] / (i + 1))));
    for (int i = 1; i <= n - 1; ++i)
        rep.theta_form.push_back(make_check("theta-complement", i, ER((1 - theta[i]) / (n + 1 - i)),
                                            ER((1 - theta[i + 1]) / (n - i))));

    bool tau_ok = true, theta_ok = true;
    for (const auto& c : rep.tau_form)
        if (!c.holds) {
            tau_ok = false;
            rep.violations.push_back(describe(c));
        }
    for (const auto& c : rep.theta_form) theta_ok = theta_ok && c.holds;

    // Pairwise correspondence: right(d) <-> ratio(n-d), left(d) <-> complement(n-d), tau0 <-> ratio(n).
    rep.forms_agree = tau_ok == theta_ok && rep.tau_form[0].holds == rep.theta_form[n - 1].holds;
    for (int d = 1; d <= n - 1 && rep.forms_agree; ++d) {
        const int i = n - d;
        rep.forms_agree = rep.tau_form[2 * d - 1].holds == rep.theta_form[n + i - 1].holds &&
                          rep.tau_form[2 * d].holds == rep.theta_form[i - 1].holds;
    }
    if (!rep.forms_agree) rep.violations.push_back("tau form and theta form disagree");
    rep.ok = rep.violations.empty();
    return rep;
}

TransferenceReport transference_check(int n, const std::vector<ER>& omega) {
    TransferenceReport rep;
    if (n < 2 || omega.size() != static_cast<size_t>(n)) {
        rep.violations.push_back("omega needs n >= 2 entries matching n");
        return rep;
    }
    for (int d = 0; d <= n - 2; ++d)
        rep.checks.push_back(make_check("going-up", d, going_up(n, d, omega[d]), omega[d + 1]));
    for (int d = 1; d <= n - 1; ++d)
        rep.checks.push_back(make_check("going-down", d, going_down(d, omega[d]), omega[d - 1]));

    // Khintchine closed forms.
    const ER& w0 = omega[0];
    const ER& wn = omega[n - 1];
    ER lower = wn.is_inf() ? ER(frac(1, n - 1)) : ER(wn.value() / ((n - 1) * wn.value() + n));
    ER upper = wn.is_inf() ? ER::infinity() : ER((wn.value() - n + 1) / Rational(n));
    rep.checks.push_back(make_check("khintchine-lower", 0, lower, w0));
    rep.checks.push_back(make_check("khintchine-upper", 0, w0, upper));

    // Iterate the one-step maps and compare with the closed forms.
    ER down = wn;
    for (int d = n - 1; d >= 1; --d) down = going_down(d, down);
    bool chain = down == lower;
    if (!w0.is_inf() && !wn.is_inf()) {
        ER up = w0;
        for (int d = 0; d <= n - 2; ++d) up = going_up(n, d, up);
        // omega_{n-1} >= up  <=>  omega_0 <= (omega_{n-1} - n + 1)/n
        chain = chain && up.value() == n * w0.value() + n - 1;
    }
    rep.chain_matches_closed_form = chain;
    if (!chain) rep.violations.push_back("iterated transfer differs from the closed Khintchine form");
    for (const auto& c : rep.checks)
        if (!c.holds) rep.violations.push_back(describe(c));
    rep.ok = rep.violations.empty();
    return rep;
}

}  // namespace pgn
