#include "pgn/minima.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "pgn/errors.hpp"

namespace pgn {

namespace {

using i128 = __int128;

Integer lcm_of_denominators(const std::vector<Rational>& x) {
    Integer D = 1;
    for (const auto& v : x) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), v.get_den_mpz_t());
    return D;
}

i128 to_i128(const Integer& z) {
    Integer a = ::abs(z);
    Integer lo = a & Integer("18446744073709551615");
    Integer hi = a >> 64;
    i128 v = (static_cast<i128>(hi.get_ui()) << 64) | static_cast<i128>(lo.get_ui());
    return z < 0 ? -v : v;
}

Integer to_mpz(i128 v) {
    bool neg = v < 0;
    unsigned __int128 a = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    Integer hi(static_cast<unsigned long>(a >> 64));
    Integer lo(static_cast<unsigned long>(a & 0xFFFFFFFFFFFFFFFFull));
    Integer r = (hi << 64) + lo;
    return neg ? Integer(-r) : r;
}

struct I128Ops {
    using I = i128;
    static I from(const Integer& z) { return to_i128(z); }
    static I from_i64(std::int64_t v) { return v; }
    static Integer to(I v) { return to_mpz(v); }
    static I abs(I v) { return v < 0 ? -v : v; }
    static I fdiv(I a, I b) {
        I q = a / b;
        if (a % b != 0 && ((a < 0) != (b < 0))) --q;
        return q;
    }
    static I cdiv(I a, I b) {
        I q = a / b;
        if (a % b != 0 && ((a < 0) == (b < 0))) ++q;
        return q;
    }
    static double to_double(I v) { return static_cast<double>(v); }
};

struct MpzOps {
    using I = Integer;
    static I from(const Integer& z) { return z; }
    static I from_i64(std::int64_t v) { return Integer(static_cast<long>(v)); }
    static Integer to(const I& v) { return v; }
    static I abs(const I& v) { return ::abs(v); }
    static I fdiv(const I& a, const I& b) {
        I q;
        mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }
    static I cdiv(const I& a, const I& b) {
        I q;
        mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }
    static double to_double(const I& v) { return v.get_d(); }
};

// Incremental rational row echelon form for span membership.
class SpanTracker {
public:
    explicit SpanTracker(int dim) : dim_(dim) {}
    bool contains(const IntVec& y) const { return reduce(y).second; }
    void add(const IntVec& y) {
        auto [row, zero] = reduce(y);
        if (zero) throw Error(Errc::DependentBasis, "witness already in span");
        int pivot = 0;
        while (row[pivot] == 0) ++pivot;
        Rational inv = 1 / row[pivot];
        for (auto& v : row) v *= inv;
        rows_.push_back({pivot, std::move(row)});
    }
    size_t size() const { return rows_.size(); }

private:
    std::pair<std::vector<Rational>, bool> reduce(const IntVec& y) const {
        std::vector<Rational> v(dim_);
        for (int i = 0; i < dim_; ++i) v[i] = Rational(static_cast<long>(y[i]));
        for (const auto& [pivot, row] : rows_) {
            if (v[pivot] == 0) continue;
            Rational f = v[pivot];
            for (int i = 0; i < dim_; ++i) v[i] -= f * row[i];
        }
        bool zero = std::all_of(v.begin(), v.end(), [](const Rational& r) { return r == 0; });
        return {std::move(v), zero};
    }
    int dim_;
    std::vector<std::pair<int, std::vector<Rational>>> rows_;
};

template <class Ops>
class Enumerator {
    using I = typename Ops::I;

public:
    Enumerator(const BodySpec& s, double budget) : n_(s.n), budget_(budget) {
        Integer D = lcm_of_denominators(s.x);
        D_ = Ops::from(D);
        for (const auto& xi : s.x) p_.push_back(Ops::from(Integer(xi * D)));
        a_ = Ops::from(s.Q.get_num());
        bD_ = Ops::from(Integer(s.Q.get_den() * D));
    }

    MinimaResult run() {
        MinimaResult res;
        SpanTracker span(n_ + 1);
        std::vector<IntVec> found;
        for (int j = 0; j <= n_; ++j) {
            Cand c = next(span, found);
            IntVec y = to_intvec(c.y);
            span.add(y);
            found.push_back(y);
            res.witnesses.push_back(y);
            res.lambdas.push_back(Rational(Ops::to(c.Fs), Ops::to(bD_)));
            res.lambdas.back().canonicalize();
        }
        return res;
    }

private:
    struct Cand {
        I Fs;  // F * b * D
        I l1;
        std::vector<I> y;
    };

    static bool key_less(const Cand& a, const Cand& b) {
        if (a.Fs != b.Fs) return a.Fs < b.Fs;
        if (a.l1 != b.l1) return a.l1 < b.l1;
        for (size_t i = a.y.size(); i-- > 0;)
            if (a.y[i] != b.y[i]) return a.y[i] < b.y[i];
        return false;
    }

    IntVec to_intvec(const std::vector<I>& y) const {
        IntVec out;
        for (const auto& v : y) {
            Integer z = Ops::to(v);
            if (!z.fits_slong_p()) throw Error(Errc::BudgetExceeded, "witness coordinate exceeds 64 bits");
            out.push_back(z.get_si());
        }
        return out;
    }

    I linear_s(const std::vector<I>& y) const {
        I s = y[n_] * D_;
        for (int i = 0; i < n_; ++i) s += y[i] * p_[i];
        return s;
    }

    Cand make(std::vector<I> y) const {
        I s = linear_s(y);
        I mx = 0, l1 = 0;
        for (int i = 0; i < n_; ++i) {
            I a = Ops::abs(y[i]);
            if (a > mx) mx = a;
            l1 += a;
        }
        l1 += Ops::abs(y[n_]);
        I f1 = mx * bD_;
        I f2 = a_ * Ops::abs(s);
        return Cand{f1 > f2 ? f1 : f2, l1, std::move(y)};
    }

    Cand next(const SpanTracker& span, const std::vector<IntVec>& found) {
        std::optional<Cand> best;
        for (int i = 0; i <= n_; ++i) {
            std::vector<I> y(n_ + 1, I(0));
            y[i] = 1;
            IntVec iy(n_ + 1, 0);
            iy[i] = 1;
            if (span.contains(iy)) continue;
            Cand c = make(std::move(y));
            if (!best || key_less(c, *best)) best = std::move(c);
        }

        // Once n witnesses span the plane s = 0, anything outside has |s| >= 1.
        I lower = 0;
        if (static_cast<int>(found.size()) == n_) {
            bool all_zero = true;
            for (const auto& w : found) {
                std::vector<I> wy;
                for (auto v : w) wy.push_back(Ops::from_i64(v));
                if (linear_s(wy) != 0) all_zero = false;
            }
            if (all_zero) lower = a_;
        }

        std::vector<std::int64_t> u(n_);
        std::vector<I> y(n_ + 1);
        for (std::int64_t r = 0;; ++r) {
            I rs = Ops::from_i64(r) * bD_;
            I lb = rs > lower ? rs : lower;
            if (lb > best->Fs) break;
            if (lb == best->Fs && Ops::from_i64(r) > best->l1) break;

            double window = 2.0 * Ops::to_double(best->Fs / a_) / Ops::to_double(D_) + 1.0;
            double count = std::pow(2.0 * static_cast<double>(r) + 1.0, n_) * window;
            if (count > budget_)
                throw Error(Errc::BudgetExceeded, "candidate count " + std::to_string(count) + " exceeds budget " +
                                                      std::to_string(budget_) + " at shell " + std::to_string(r));

            auto visit = [&]() {
                // Sign normalization on the first n coordinates.
                int first = -1;
                for (int i = 0; i < n_; ++i)
                    if (u[i] != 0) {
                        first = i;
                        break;
                    }
                if (first >= 0 && u[first] < 0) return;
                I c = 0;
                for (int i = 0; i < n_; ++i) c += Ops::from_i64(u[i]) * p_[i];
                I smax = best->Fs / a_;
                I lo = Ops::cdiv(-smax - c, D_);
                I hi = Ops::fdiv(smax - c, D_);
                if (first < 0 && lo < 1) lo = 1;
                for (I yl = lo; yl <= hi; ++yl) {
                    for (int i = 0; i < n_; ++i) y[i] = Ops::from_i64(u[i]);
                    y[n_] = yl;
                    Cand cand = make(y);
                    if (!key_less(cand, *best)) continue;
                    IntVec iy = to_intvec(cand.y);
                    if (span.contains(iy)) continue;
                    best = std::move(cand);
                }
            };

            if (r == 0) {
                std::fill(u.begin(), u.end(), 0);
                visit();
                continue;
            }
            // Shell points: m is the first coordinate with |u_m| = r.
            for (int m = 0; m < n_; ++m) {
                std::vector<std::int64_t> lo(n_), hi(n_);
                for (int i = 0; i < n_; ++i) {
                    if (i < m) lo[i] = -(r - 1), hi[i] = r - 1;
                    else lo[i] = -r, hi[i] = r;
                }
                for (std::int64_t sm : {r, -r}) {
                    for (int i = 0; i < n_; ++i) u[i] = lo[i];
                    u[m] = sm;
                    while (true) {
                        visit();
                        int i = n_ - 1;
                        for (; i >= 0; --i) {
                            if (i == m) continue;
                            if (u[i] < hi[i]) {
                                ++u[i];
                                break;
                            }
                            u[i] = lo[i];
                        }
                        if (i < 0) break;
                    }
                }
            }
        }
        return *best;
    }

    int n_;
    double budget_;
    std::vector<I> p_;
    I D_, a_, bD_;
};

bool fits_i128(const BodySpec& s) {
    // Every searched coordinate stays below the F value of some unit vector.
    Integer D = lcm_of_denominators(s.x);
    Integer maxp = 1;
    Rational maxx = 0;
    for (const auto& xi : s.x) {
        maxp = std::max(maxp, Integer(::abs(Integer(xi * D))));
        maxx = std::max(maxx, abs(xi));
    }
    Integer q = ceil(Rational(s.Q * (1 + maxx))) + 1;
    Integer bound = Integer(s.n + 2) * q * q * s.Q.get_den() * s.Q.get_num() * D * maxp * D;
    return mpz_sizeinbase(bound.get_mpz_t(), 2) < 118;
}

}  // namespace

Rational body_norm(const BodySpec& spec, const IntVec& y) {
    if (y.size() != static_cast<size_t>(spec.n) + 1 || spec.x.size() != static_cast<size_t>(spec.n))
        throw Error(Errc::DimensionMismatch, "y needs n+1 coordinates and x needs n");
    Rational mx = 0, s = Rational(static_cast<long>(y[spec.n]));
    for (int i = 0; i < spec.n; ++i) {
        Rational yi(static_cast<long>(y[i]));
        mx = std::max(mx, abs(yi));
        s += yi * spec.x[i];
    }
    Rational f = spec.Q * abs(s);
    return std::max(mx, f);
}

MinimaResult successive_minima(const BodySpec& spec, double budget) {
    if (spec.n < 1 || spec.x.size() != static_cast<size_t>(spec.n))
        throw Error(Errc::DimensionMismatch, "x needs n entries");
    if (spec.Q <= 1) throw Error(Errc::InvalidParams, "Q must exceed 1");
    if (fits_i128(spec)) return Enumerator<I128Ops>(spec, budget).run();
    return Enumerator<MpzOps>(spec, budget).run();
}

Rational q_from_t(double t) {
    Rational q(static_cast<long>(std::llround(std::exp(t) * 1000.0)), 1000);
    q.canonicalize();
    return q;
}

ProfileRow make_row(int n, const Rational& Q, std::vector<Rational> lambda) {
    ProfileRow row;
    row.Q = Q;
    row.t = std::log(to_double(Q));
    row.lambda = std::move(lambda);
    for (const auto& l : row.lambda) {
        double L = std::log(to_double(l));
        row.L.push_back(L);
        row.g.push_back(row.t / (n + 1) - L);
    }
    return row;
}

Profile profile(int n, const std::vector<Rational>& x, const std::vector<Rational>& q_grid, double budget,
                unsigned threads) {
    for (size_t i = 0; i < q_grid.size(); ++i) {
        if (q_grid[i] <= 1) throw Error(Errc::InvalidParams, "grid values must exceed 1");
        if (i > 0 && !(q_grid[i - 1] < q_grid[i])) throw Error(Errc::InvalidParams, "grid must be strictly increasing");
    }
    Profile prof{n, x, std::vector<ProfileRow>(q_grid.size())};
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<size_t>(1, q_grid.size())));

    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (size_t i = next++; i < q_grid.size(); i = next++) {
            try {
                MinimaResult mr = successive_minima(BodySpec{n, x, q_grid[i]}, budget);
                ProfileRow row = make_row(n, q_grid[i], std::move(mr.lambdas));
                row.witnesses = std::move(mr.witnesses);
                prof.rows[i] = std::move(row);
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
                next = q_grid.size();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    auto bad = profile_violations(prof);
    if (!bad.empty()) throw std::logic_error("profile invariant failed: " + bad.front());
    return prof;
}

std::optional<size_t> minkowski_check(const Profile& p) {
    Integer fact = 1;
    for (int i = 2; i <= p.n + 1; ++i) fact *= i;
    for (size_t r = 0; r < p.rows.size(); ++r) {
        Rational prod = 1;
        for (const auto& l : p.rows[r].lambda) prod *= l;
        Rational scaled = prod / p.rows[r].Q;
        if (scaled < Rational(1) / fact || scaled > 1) return r;
    }
    return std::nullopt;
}

std::vector<std::string> profile_violations(const Profile& p) {
    std::vector<std::string> out;
    if (auto r = minkowski_check(p)) out.push_back("Minkowski window fails at row " + std::to_string(*r));
    for (size_t r = 0; r < p.rows.size(); ++r) {
        const auto& row = p.rows[r];
        if (row.lambda.size() != static_cast<size_t>(p.n) + 1) {
            out.push_back("row " + std::to_string(r) + " has the wrong number of minima");
            continue;
        }
        if (row.Q >= 1 && row.lambda[0] < 1) out.push_back("lambda_1 < 1 at row " + std::to_string(r));
        for (int i = 1; i <= p.n; ++i)
            if (row.lambda[i] < row.lambda[i - 1])
                out.push_back("minima decrease at row " + std::to_string(r));
        if (r > 0) {
            // Q' > Q gives lambda_i(Q) <= lambda_i(Q') <= (Q'/Q) lambda_i(Q): 1-Lipschitz logs.
            const auto& prev = p.rows[r - 1];
            Rational ratio = row.Q / prev.Q;
            for (int i = 0; i <= p.n; ++i)
                if (row.lambda[i] < prev.lambda[i] || row.lambda[i] > ratio * prev.lambda[i])
                    out.push_back("Lipschitz bound fails for L_" + std::to_string(i + 1) + " at row " +
                                  std::to_string(r));
        }
    }
    return out;
}

}  // namespace pgn
