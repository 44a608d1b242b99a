#include "pgn/construct.hpp"

#include <algorithm>
#include <cmath>

#include "pgn/errors.hpp"
#include "pgn/transference.hpp"

namespace pgn {

Rational construction_constant(int n) { return roy_constant(n); }

double epsilon_of(int n, const Rational& gamma) {
    return std::exp(-(n + 1) * to_double(gamma - construction_constant(n)));
}

void validate_construction_params(const ConstructionParams& p) {
    if (p.n < 2) throw Error(Errc::InvalidParams, "n must be at least 2");
    if (p.gamma <= 0) throw Error(Errc::InvalidParams, "gamma must be positive");
    if (p.strict && p.gamma <= construction_constant(p.n))
        throw Error(Errc::InvalidParams, "strict mode needs gamma > C_n = " + to_string(construction_constant(p.n)));
    if (p.delta < 0 || p.delta >= frac(1, 32 * p.n * p.n))
        throw Error(Errc::InvalidParams, "delta must lie in [0, 1/(32n^2))");
    if (p.blocks < 1) throw Error(Errc::InvalidParams, "block count must be at least 1");
    auto rep = validate_tau(p.n, p.tau);
    if (!rep.ok) throw Error(Errc::InvalidTau, rep.violations.front());
}

AlphaTable alpha_table(int n, const std::vector<ExtendedRational>& tau) {
    auto rep = validate_tau(n, tau);
    if (!rep.ok) throw Error(Errc::InvalidTau, rep.violations.front());
    AlphaTable t;
    t.n = n;
    t.theta.assign(n + 1, Rational(0));
    for (int d = 1; d <= n; ++d) t.theta[d] = tau[n - d].inv_one_plus();
    for (int i = 1; i <= n - 1; ++i) {
        std::vector<Rational> row(n + 1);
        for (int j = 1; j <= n + 1; ++j) {
            if (j <= i)
                row[j - 1] = t.theta[i] / i;
            else if (j == i + 1)
                row[j - 1] = t.theta[i + 1] - t.theta[i];
            else
                row[j - 1] = (1 - t.theta[i + 1]) / (n - i);
        }
        t.a.push_back(std::move(row));
    }

    for (int i = 1; i <= n - 1; ++i) {
        Rational partial = 0;
        for (int j = 1; j <= n + 1; ++j) {
            if (j > 1 && t.at(i, j) < t.at(i, j - 1))
                throw Error(Errc::InvalidTau, "alpha row " + std::to_string(i) + " decreases at j=" + std::to_string(j));
            partial += t.at(i, j);
            if (j <= n) {
                if (partial < t.theta[j])
                    throw Error(Errc::InvalidTau, "alpha partial sum below theta at i=" + std::to_string(i));
                if ((j == i || j == i + 1) && partial != t.theta[j])
                    throw Error(Errc::InvalidTau, "alpha partial sum not tight at i=" + std::to_string(i));
            }
        }
        if (partial != 1) throw Error(Errc::InvalidTau, "alpha row " + std::to_string(i) + " does not sum to 1");
    }
    return t;
}

namespace {

[[noreturn]] void infeasible(int k, int i, const std::string& what) {
    throw Error(Errc::ConstraintInfeasible, "beta row (k=" + std::to_string(k) + ", i=" + std::to_string(i) + "): " + what);
}

// Moves a single interior entry toward closing the gap D = 1 - sum, keeping the spacing.
bool shift_one(std::vector<Rational>& b, const Rational& g, const Rational& D) {
    const int n = static_cast<int>(b.size()) - 1;
    if (D > 0) {
        for (int j = 1; j < n; ++j) {
            Rational c = std::min(D, Rational(b[j + 1] - g - b[j]));
            if (c > 0) {
                b[j] += c;
                return true;
            }
        }
    } else {
        for (int j = n - 1; j >= 1; --j) {
            Rational c = std::min(Rational(-D), Rational(b[j] - g - b[j - 1]));
            if (c > 0) {
                b[j] -= c;
                return true;
            }
        }
    }
    return false;
}

}  // namespace

std::vector<Rational> beta_row(int n, int k, int i, const std::vector<Rational>& alpha,
                               std::vector<BoxRelaxation>* relaxations) {
    const Rational lo1 = frac(1, (k + 1) * (n + 1));
    const Rational hi1 = frac(k, (k + 1) * (n + 1));
    const Rational loN_stated = frac(k + 3, (k + 1) * (n + 1));
    const Rational hiN = 1 - lo1;
    const Rational g = frac(1, 4 * n * n * k);
    // Smallest top entry compatible with the first box and the spacing.
    const Rational loN_room = 1 - n * lo1 - g * Rational(n * (n - 1), 2);
    Rational loN = loN_stated;
    if (loN_room < loN_stated) {
        loN = loN_room;
        if (relaxations) relaxations->push_back({k, i, "beta^{n+1} lower", loN_stated, loN});
    }

    std::vector<Rational> b(alpha);
    b[0] = std::clamp(alpha[0], lo1, hi1);
    b[n] = std::clamp(alpha[n], loN, hiN);
    for (int j = 1; j < n; ++j) b[j] = std::max(b[j], Rational(b[j - 1] + g));
    for (int j = n - 1; j >= 1; --j) b[j] = std::min(b[j], Rational(b[j + 1] - g));

    auto sum = [&] {
        Rational s = 0;
        for (const auto& x : b) s += x;
        return s;
    };
    const int interior = n - 1;
    for (int iter = 0; iter < 64; ++iter) {
        Rational D = 1 - sum();
        if (D == 0) break;
        if (D > 0) {
            Rational room = b[n] - g - b[n - 1];
            Rational c = std::min(Rational(D / interior), room);
            if (c > 0) {
                for (int j = 1; j < n; ++j) b[j] += c;
                continue;
            }
            c = std::min(D, Rational(hiN - b[n]));
            if (c > 0) {
                b[n] += c;
                continue;
            }
            c = std::min(D, Rational(std::min(hi1, Rational(b[1] - g)) - b[0]));
            if (c > 0) {
                b[0] += c;
                continue;
            }
            if (shift_one(b, g, D)) continue;
            infeasible(k, i, "sum stays below 1 with every entry at its upper limit");
        } else {
            Rational need = -D;
            Rational room = b[1] - g - b[0];
            Rational c = std::min(Rational(need / interior), room);
            if (c > 0) {
                for (int j = 1; j < n; ++j) b[j] -= c;
                continue;
            }
            c = std::min(need, Rational(b[n] - std::max(loN, Rational(b[n - 1] + g))));
            if (c > 0) {
                b[n] -= c;
                continue;
            }
            c = std::min(need, Rational(b[0] - lo1));
            if (c > 0) {
                b[0] -= c;
                continue;
            }
            if (shift_one(b, g, D)) continue;
            infeasible(k, i, "sum stays above 1 with every entry at its lower limit");
        }
    }

    if (sum() != 1) infeasible(k, i, "sum != 1 after repair");
    for (int j = 1; j <= n; ++j)
        if (b[j] - b[j - 1] < g) infeasible(k, i, "spacing 1/(4n^2 k) fails at j=" + std::to_string(j));
    if (b[0] < lo1 || b[0] > hi1) infeasible(k, i, "beta^1 box");
    if (b[n] < loN || b[n] > hiN) infeasible(k, i, "beta^{n+1} box");
    const Rational decay = frac(2, k);
    for (int j = 0; j <= n; ++j)
        if (abs(b[j] - alpha[j]) > decay) infeasible(k, i, "decay |beta - alpha| <= 2/k at j=" + std::to_string(j + 1));
    return b;
}

const Rational& BetaTables::beta(int k, int i, int j) const {
    if (i == n) return beta(k + 1, 1, j);
    if (k < 1 || k > K + 1 || i < 1 || i > n - 1 || j < 1 || j > n + 1)
        throw Error(Errc::OutOfDomain, "beta index out of range");
    return plain[k - 1][i - 1][j - 1];
}

const Rational& BetaTables::beta_delta(int k, int i, int j) const {
    if (i == n) return beta_delta(k + 1, 1, j);
    if (k < 1 || k > K + 1 || i < 1 || i > n - 1 || j < 1 || j > n + 1 || (k == K + 1 && i != 1))
        throw Error(Errc::OutOfDomain, "beta(delta) index out of range");
    return perturbed[k - 1][i - 1][j - 1];
}

std::vector<Rational> BetaTables::row(int k, int i) const {
    std::vector<Rational> r;
    for (int j = 1; j <= n + 1; ++j) r.push_back(beta(k, i, j));
    return r;
}

std::vector<Rational> BetaTables::row_delta(int k, int i) const {
    std::vector<Rational> r;
    for (int j = 1; j <= n + 1; ++j) r.push_back(beta_delta(k, i, j));
    return r;
}

const Rational& TimeGrid::at(int k, int i) const {
    if (i == n && k <= K) return at(k + 1, 1);
    if (k < 1 || k > K + 1 || i < 1 || i > n || (k == K + 1 && i != 1))
        throw Error(Errc::OutOfDomain, "time grid index out of range");
    return T[k - 1][i - 1];
}

namespace {

// T_k^i from unperturbed rows; entries for i = n are stored via the next k.
std::vector<std::vector<Rational>> raw_grid(int n, const Rational& gamma, const BetaTables& bt, int K) {
    std::vector<std::vector<Rational>> T(K + 1);
    T[0].push_back(128 * n * n * n * n * gamma);
    for (int k = 1; k <= K; ++k) {
        for (int i = 1; i <= n - 1; ++i) {
            Rational next = (bt.beta(k, i, n + 1) * T[k - 1][i - 1] - (n + 1) * gamma) / bt.beta(k, i + 1, 1);
            if (i + 1 <= n - 1)
                T[k - 1].push_back(next);
            else
                T[k].push_back(next);
        }
    }
    return T;
}

}  // namespace

BetaTables beta_tables(int n, const std::vector<ExtendedRational>& tau, const Rational& gamma,
                       const Rational& delta, int K) {
    if (K < 1) throw Error(Errc::InvalidParams, "K must be at least 1");
    if (gamma <= 0) throw Error(Errc::InvalidParams, "gamma must be positive");
    if (delta < 0 || delta >= frac(1, 32 * n * n))
        throw Error(Errc::InvalidParams, "delta must lie in [0, 1/(32n^2))");
    const AlphaTable alpha = alpha_table(n, tau);

    BetaTables bt;
    bt.n = n;
    bt.K = K;
    bt.delta = delta;
    for (int k = 1; k <= K + 1; ++k) {
        std::vector<std::vector<Rational>> rows;
        for (int i = 1; i <= n - 1; ++i) rows.push_back(beta_row(n, k, i, alpha.a[i - 1], &bt.relaxations));
        bt.plain.push_back(std::move(rows));
    }

    const auto T = raw_grid(n, gamma, bt, K);
    auto Tat = [&](int k, int i) -> const Rational& { return i == n ? T[k][0] : T[k - 1][i - 1]; };

    bt.perturbed.assign(K + 1, {});
    Rational first = bt.plain[0][0][0];
    for (int k = 1; k <= K + 1; ++k) {
        const int rows = k <= K ? n - 1 : 1;
        for (int i = 1; i <= rows; ++i) {
            const auto& b = bt.plain[k - 1][i - 1];
            std::vector<Rational> r(b);
            r[0] = first;
            r[n] = b[n] + delta / k;
            r[1] = b[0] + b[1] + b[n] - r[0] - r[n];
            bt.perturbed[k - 1].push_back(r);
            if (k <= K) first = (r[n] * Tat(k, i) - (n + 1) * gamma) / Tat(k, i + 1);
        }
    }

    for (int k = 1; k <= K + 1; ++k)
        for (int i = 1; i <= (k <= K ? n - 1 : 1); ++i) {
            const auto& b = bt.plain[k - 1][i - 1];
            const auto& r = bt.perturbed[k - 1][i - 1];
            Rational s = 0;
            for (const auto& x : r) s += x;
            if (s != 1) infeasible(k, i, "perturbed row does not sum to 1");
            if (r[n] - b[n] != delta / k) infeasible(k, i, "perturbed top entry differs by other than delta/k");
            for (int j = 3; j <= n; ++j)
                if (r[j - 1] != b[j - 1]) infeasible(k, i, "perturbed interior entry changed");
            if (r[0] < b[0] || r[0] > b[0] + 2 * delta / k) infeasible(k, i, "perturbed first entry out of range");
            for (int j = 1; j <= n; ++j)
                if (!(r[j - 1] < r[j])) infeasible(k, i, "perturbed row not increasing");
        }
    if (bt.perturbed[0][0][0] != bt.plain[0][0][0]) infeasible(1, 1, "beta_1^{1,1}(delta) must equal beta_1^{1,1}");
    return bt;
}

TimeGrid time_grid(int n, const Rational& gamma, const BetaTables& bt, int K) {
    if (bt.n != n || bt.K < K) throw Error(Errc::InvalidParams, "beta tables do not cover the requested grid");
    TimeGrid g;
    g.n = n;
    g.K = K;
    g.T = raw_grid(n, gamma, bt, K);

    if (g.Tk(1) != 128 * n * n * n * n * gamma) throw Error(Errc::GrowthViolation, "T_1 != 128 n^4 gamma");
    for (int k = 1; k <= K; ++k) {
        for (int i = 1; i <= n - 1; ++i) {
            if (!(g.at(k, i + 1) > g.at(k, i)))
                throw Error(Errc::GrowthViolation,
                            "T_" + std::to_string(k) + "^" + std::to_string(i + 1) + " does not exceed its predecessor");
            if (bt.beta(k, i + 1, 1) * g.at(k, i + 1) != bt.beta(k, i, n + 1) * g.at(k, i) - (n + 1) * gamma)
                throw Error(Errc::GrowthViolation, "grid recursion broken at k=" + std::to_string(k));
            const Rational lhs = (bt.beta_delta(k, i + 1, 1) - bt.beta(k, i + 1, 1)) * g.at(k, i + 1);
            if (lhs != bt.delta / k * g.at(k, i))
                throw Error(Errc::GrowthViolation, "delta consistency broken at k=" + std::to_string(k));
        }
    }
    for (int k = 1; k <= K + 1; ++k)
        if (g.Tk(k) < 32 * n * n * n * n * (k + 1) * (k + 1) * gamma)
            throw Error(Errc::GrowthViolation, "T_" + std::to_string(k) + " below 32 n^4 (k+1)^2 gamma");
    return g;
}

RoySystem head_piece(int n, const Rational& T1, const std::vector<Rational>& b) {
    // S_{d+1} for d = 0..n; all components rise together on [0, S_1].
    std::vector<Rational> S;
    for (int d = 0; d <= n; ++d) {
        Rational s = (n + 1 - d) * b[d];
        for (int j = 0; j < d; ++j) s += b[j];
        S.push_back(s * T1);
    }
    std::vector<std::vector<std::pair<Rational, Rational>>> nodes(n + 1);
    for (int j = 0; j <= n; ++j) nodes[j].emplace_back(Rational(0), Rational(0));
    for (int d = 0; d <= n; ++d)
        for (int j = 0; j <= n; ++j) nodes[j].emplace_back(S[d], (j < d ? b[j] : b[d]) * T1);
    std::vector<PLMap> comps;
    for (const auto& cn : nodes) comps.push_back(PLMap::from_nodes(cn));
    return RoySystem(n, std::move(comps));
}

Construction assemble(const ConstructionParams& p) {
    validate_construction_params(p);
    const int n = p.n;
    const int K = p.blocks;
    Construction c{p, alpha_table(n, p.tau), beta_tables(n, p.tau, p.gamma, p.delta, K), {}, {}, {}, {}};
    c.grid = time_grid(n, p.gamma, c.beta, K);
    c.head = head_piece(n, c.grid.Tk(1), c.beta.row_delta(1, 1));

    for (int k = 1; k <= K; ++k)
        for (int i = 1; i <= n - 1; ++i) {
            BlockParams bp{n, p.gamma, c.grid.at(k, i), c.grid.at(k, i + 1), c.beta.row_delta(k, i),
                           c.beta.row_delta(k, i + 1)};
            Block b = build_block(bp);
            c.blocks.push_back(PlacedBlock{k, i, std::move(bp), std::move(b)});
        }

    std::vector<PLMap> comps;
    for (int j = 0; j <= n; ++j) {
        std::vector<PLMap> pieces{c.head.components[j]};
        for (const auto& pb : c.blocks) pieces.push_back(pb.block.system.components[j]);
        comps.push_back(concat(pieces));
    }
    c.system = RoySystem(n, std::move(comps));
    return c;
}

Diagnostics system_diagnostics(const Construction& c) {
    const int n = c.params.n;
    const int K = c.params.blocks;
    Diagnostics out;
    for (const auto& pb : c.blocks) {
        auto ex = block_extrema(pb.block, pb.params);
        out.per_block_min_f.push_back({pb.k, pb.i, ex.min_f, ex.argmin_f});
    }

    RoySystem tail = c.system.restricted(c.grid.Tk(1), c.grid.Tk(K + 1));
    std::vector<Rational> coeffs(n + 1, Rational(0));
    coeffs[0] = -1;
    auto mn = extremize(tail.components, frac(1, n + 1), coeffs, Sense::Min);
    out.global_min_f = mn.value;
    out.global_argmin_f = mn.t;

    for (int k = 1; k <= K; ++k)
        out.max_f_tail.push_back((frac(1, n + 1) - c.beta.beta_delta(k, n, 1)) * c.grid.at(k, n));
    for (int k0 = K; k0 >= 1; --k0) {
        if (k0 < K && !(out.max_f_tail[k0 - 1] < out.max_f_tail[k0])) break;
        out.tail_increasing_from = k0;
    }

    out.ratio_target.assign(n + 1, Rational(0));
    for (int d = 1; d <= n; ++d) out.ratio_target[d] = c.params.tau[n - d].inv_one_plus();
    for (int k = 1; k <= K; ++k)
        for (int d = 1; d <= n; ++d) {
            std::optional<Rational> over_i;
            for (int i = 1; i <= n - 1; ++i) {
                Rational lo = 0, hi = 0;
                for (int j = 1; j <= d; ++j) {
                    lo += c.beta.beta_delta(k, i, j);
                    hi += c.beta.beta_delta(k, i + 1, j);
                }
                Rational r = std::min(lo, hi);
                out.ratio_min[{k, i, d}] = r;
                if (!over_i || r < *over_i) over_i = r;
            }
            out.ratio_min_over_i[{k, d}] = *over_i;
            if (abs(*over_i - out.ratio_target[d]) > frac(2 * n, k)) out.ratio_decay_ok = false;
        }
    if (c.params.strict) out.epsilon = epsilon_of(n, c.params.gamma);
    return out;
}

}  // namespace pgn
