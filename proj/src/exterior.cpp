#include "pgn/exterior.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "pgn/errors.hpp"

namespace pgn {

int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<int>(r);
}

const std::vector<std::vector<int>>& blades(int dim, int grade) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
    std::lock_guard lock(mu);
    auto [it, fresh] = cache.try_emplace({dim, grade});
    if (fresh && grade >= 0 && grade <= dim) {
        std::vector<int> c(grade);
        for (int i = 0; i < grade; ++i) c[i] = i;
        while (true) {
            it->second.push_back(c);
            int i = grade - 1;
            while (i >= 0 && c[i] == dim - grade + i) --i;
            if (i < 0) break;
            ++c[i];
            for (int j = i + 1; j < grade; ++j) c[j] = c[j - 1] + 1;
        }
    }
    return it->second;
}

namespace {

unsigned mask_of(const std::vector<int>& b) {
    unsigned m = 0;
    for (int i : b) m |= 1u << i;
    return m;
}

// mask -> coordinate index for the given dim and grade.
std::map<unsigned, size_t> index_of(int dim, int grade) {
    std::map<unsigned, size_t> out;
    const auto& bl = blades(dim, grade);
    for (size_t i = 0; i < bl.size(); ++i) out[mask_of(bl[i])] = i;
    return out;
}

}  // namespace

MultiVector::MultiVector(int dim, int grade)
    : dim_(dim), grade_(grade), coords_(static_cast<size_t>(binomial(dim, grade)), Rational(0)) {
    if (dim < 1 || dim > 30 || grade < 0 || grade > dim) throw Error(Errc::GradeOverflow, "bad dimension or grade");
}

MultiVector::MultiVector(int dim, int grade, std::vector<Rational> coords) : MultiVector(dim, grade) {
    if (coords.size() != coords_.size())
        throw Error(Errc::DimensionMismatch, "expected " + std::to_string(coords_.size()) + " coordinates");
    coords_ = std::move(coords);
}

MultiVector MultiVector::vector(const std::vector<Rational>& v) {
    return MultiVector(static_cast<int>(v.size()), 1, v);
}

MultiVector MultiVector::blade(int dim, const std::vector<int>& indices) {
    MultiVector m(dim, static_cast<int>(indices.size()));
    const auto idx = index_of(dim, m.grade());
    auto it = idx.find(mask_of(indices));
    if (it == idx.end() || !std::is_sorted(indices.begin(), indices.end()))
        throw Error(Errc::InvalidParams, "blade indices must be increasing and in range");
    m.coords_[it->second] = 1;
    return m;
}

bool MultiVector::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& r) { return r == 0; });
}

Rational MultiVector::norm_sq() const {
    Rational s = 0;
    for (const auto& c : coords_) s += c * c;
    return s;
}

Rational MultiVector::max_norm() const {
    Rational m = 0;
    for (const auto& c : coords_) m = std::max(m, abs(c));
    return m;
}

MultiVector MultiVector::embedded(int dim) const {
    if (dim < dim_) throw Error(Errc::DimensionMismatch, "cannot embed into a smaller space");
    MultiVector out(dim, grade_);
    const auto idx = index_of(dim, grade_);
    const auto& bl = blades(dim_, grade_);
    for (size_t i = 0; i < bl.size(); ++i) out.coords_[idx.at(mask_of(bl[i]))] = coords_[i];
    return out;
}

MultiVector MultiVector::operator+(const MultiVector& o) const {
    if (o.dim_ != dim_ || o.grade_ != grade_) throw Error(Errc::DimensionMismatch, "shape mismatch in +");
    MultiVector r(*this);
    for (size_t i = 0; i < coords_.size(); ++i) r.coords_[i] += o.coords_[i];
    return r;
}

MultiVector MultiVector::operator-(const MultiVector& o) const { return *this + o * Rational(-1); }

MultiVector MultiVector::operator*(const Rational& c) const {
    MultiVector r(*this);
    for (auto& v : r.coords_) v *= c;
    return r;
}

MultiVector wedge(const MultiVector& a, const MultiVector& b) {
    if (a.dim() != b.dim()) throw Error(Errc::DimensionMismatch, "wedge of different ambient dimensions");
    if (a.grade() + b.grade() > a.dim()) throw Error(Errc::GradeOverflow, "grade exceeds ambient dimension");
    MultiVector out(a.dim(), a.grade() + b.grade());
    const auto idx = index_of(a.dim(), out.grade());
    const auto& ba = blades(a.dim(), a.grade());
    const auto& bb = blades(b.dim(), b.grade());
    for (size_t i = 0; i < ba.size(); ++i) {
        if (a.at(i) == 0) continue;
        const unsigned ma = mask_of(ba[i]);
        for (size_t j = 0; j < bb.size(); ++j) {
            if (b.at(j) == 0) continue;
            const unsigned mb = mask_of(bb[j]);
            if (ma & mb) continue;
            int inversions = 0;
            for (int p : ba[i])
                for (int q : bb[j])
                    if (p > q) ++inversions;
            Rational term = a.at(i) * b.at(j);
            if (inversions % 2) term = -term;
            out.at(idx.at(ma | mb)) += term;
        }
    }
    return out;
}

MultiVector wedge(const std::vector<Rational>& v, const MultiVector& x) {
    if (static_cast<int>(v.size()) != x.dim()) throw Error(Errc::DimensionMismatch, "vector and multivector differ");
    return wedge(MultiVector::vector(v), x);
}

int rank(Matrix m) {
    int r = 0;
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    for (size_t c = 0; c < cols && r < static_cast<int>(rows); ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
        }
        ++r;
    }
    return r;
}

bool is_decomposable(const MultiVector& x) {
    if (x.is_zero()) throw Error(Errc::ZeroInput, "decomposability of the zero multivector");
    if (x.grade() == x.dim()) return true;
    // Columns e_i ^ X; kernel dimension of v -> v ^ X must equal the grade.
    Matrix cols;
    for (int i = 0; i < x.dim(); ++i) cols.push_back(wedge(MultiVector::blade(x.dim(), {i}), x).coords());
    return x.dim() - rank(cols) == x.grade();
}

RationalSubspace subspace_from_plucker(const MultiVector& x) {
    if (x.is_zero()) throw Error(Errc::DependentBasis, "zero Plucker vector");
    Integer g = 0, lcm = 1;
    for (const auto& c : x.coords()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Rational> ints;
    for (const auto& c : x.coords()) {
        Rational v = c * lcm;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
        ints.push_back(v);
    }
    Rational scale(1);
    scale /= g;
    for (const auto& c : ints)
        if (c != 0) {
            if (c < 0) scale = -scale;
            break;
        }
    for (auto& c : ints) c *= scale;
    RationalSubspace L;
    L.n = x.dim() - 1;
    L.d = x.grade() - 1;
    L.plucker = MultiVector(x.dim(), x.grade(), std::move(ints));
    L.height_sq = L.plucker.norm_sq();
    return L;
}

RationalSubspace plucker_subspace(const std::vector<std::vector<Integer>>& basis) {
    if (basis.empty()) throw Error(Errc::DependentBasis, "empty basis");
    const size_t dim = basis[0].size();
    if (basis.size() > dim) throw Error(Errc::DependentBasis, "more vectors than the ambient dimension");
    std::optional<MultiVector> acc;
    for (const auto& v : basis) {
        if (v.size() != dim) throw Error(Errc::DimensionMismatch, "basis vectors differ in length");
        std::vector<Rational> r(v.begin(), v.end());
        MultiVector mv = MultiVector::vector(r);
        acc = acc ? wedge(*acc, mv) : mv;
    }
    if (acc->is_zero()) throw Error(Errc::DependentBasis, "basis vectors are linearly dependent");
    return subspace_from_plucker(*acc);
}

namespace {

std::vector<Rational> lifted(const std::vector<Rational>& x) {
    std::vector<Rational> xp(x);
    xp.push_back(1);
    return xp;
}

Rational norm_sq(const std::vector<Rational>& v) {
    Rational s = 0;
    for (const auto& c : v) s += c * c;
    return s;
}

bool colex_less(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

// Integer vectors of length m with entries in [-R, R] and sum of squares <= limit,
// first nonzero entry positive, in lexicographic order.
template <class Fn>
void for_each_normalized(int m, long R, const Rational& limit, double budget, Fn&& fn) {
    double count = 1;
    for (int i = 0; i < m; ++i) count *= 2.0 * R + 1;
    if (count > budget)
        throw Error(Errc::BudgetExceeded, "search box of " + std::to_string(count) + " points exceeds budget " +
                                              std::to_string(budget));
    std::vector<long> v(m, 0);
    std::vector<Rational> rv(m);
    auto rec = [&](auto& self, int i, long sq, bool seen_nonzero) -> void {
        if (i == m) {
            if (!seen_nonzero) return;
            for (int k = 0; k < m; ++k) rv[k] = Rational(v[k]);
            fn(rv);
            return;
        }
        for (long c = seen_nonzero ? -R : 0; c <= R; ++c) {
            long nsq = sq + c * c;
            if (Rational(nsq) > limit) continue;
            v[i] = c;
            self(self, i + 1, nsq, seen_nonzero || c != 0);
        }
        v[i] = 0;
    };
    rec(rec, 0, 0, false);
}

bool is_primitive(const std::vector<Rational>& v) {
    Integer g = 0;
    for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    return g == 1;
}

}  // namespace

Rational proj_distance_sq(const std::vector<Rational>& x, const RationalSubspace& L) {
    if (static_cast<int>(x.size()) != L.n) throw Error(Errc::DimensionMismatch, "point and subspace dimensions differ");
    const auto xp = lifted(x);
    MultiVector w = wedge(xp, L.plucker);
    return w.norm_sq() / (norm_sq(xp) * L.height_sq);
}

std::vector<ApproxRecord> best_approx(const std::vector<Rational>& x, int d, const Rational& h_max, double budget) {
    const int n = static_cast<int>(x.size());
    if (d < 0 || d > n - 1) throw Error(Errc::InvalidParams, "d must lie in [0, n-1]");
    if (h_max < 1) throw Error(Errc::InvalidParams, "H_max must be at least 1");
    const int dim = n + 1, grade = d + 1;
    const int m = binomial(dim, grade);
    const auto& bl = blades(dim, grade);
    const Rational limit = h_max * h_max;
    const long R = floor(h_max).get_si();

    std::vector<std::pair<Rational, std::vector<Rational>>> found;
    for_each_normalized(m, R, limit, budget, [&](const std::vector<Rational>& v) {
        if (!is_primitive(v)) return;
        // Affine subspaces only: some blade through the last index must be nonzero.
        bool affine = false;
        for (int i = 0; i < m && !affine; ++i) affine = v[i] != 0 && bl[i].back() == n;
        if (!affine) return;
        MultiVector X(dim, grade, v);
        if (!is_decomposable(X)) return;
        found.emplace_back(X.norm_sq(), v);
    });
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return colex_less(a.second, b.second);
    });

    std::vector<ApproxRecord> out;
    std::optional<Rational> best;
    for (auto& [h, v] : found) {
        ApproxRecord rec;
        rec.L = subspace_from_plucker(MultiVector(dim, grade, v));
        rec.dp_sq = proj_distance_sq(x, rec.L);
        rec.running_min = !best || rec.dp_sq < *best;
        if (rec.running_min) best = rec.dp_sq;
        out.push_back(std::move(rec));
    }
    return out;
}

Matrix wedge_matrix(const std::vector<Rational>& x, int d) {
    const int n = static_cast<int>(x.size());
    if (d < 0 || d > n - 1) throw Error(Errc::InvalidParams, "d must lie in [0, n-1]");
    const auto& rows = blades(n, d + 1);
    const auto& cols = blades(n, d);
    const auto ridx = index_of(n, d + 1);
    Matrix M(rows.size(), std::vector<Rational>(cols.size(), Rational(0)));
    for (size_t c = 0; c < cols.size(); ++c) {
        const unsigned mc = mask_of(cols[c]);
        for (int i = 0; i < n; ++i) {
            if (mc & (1u << i)) continue;
            int before = 0;
            for (int j : cols[c])
                if (j < i) ++before;
            Rational v = x[i];
            if (before % 2) v = -v;
            M[ridx.at(mc | (1u << i))][c] = v;
        }
    }
    return M;
}

namespace {

// a^(n-d) * N^(d+1) <= 1 with a a max-norm error.
bool dirichlet_ok(const Rational& err, int n, int d, const Rational& N) {
    return pow(err, n - d) * pow(N, d + 1) <= 1;
}

// Checks lhs <= c * |x| for c >= 0 with |x| = sqrt(xsq), exactly.
bool le_times_sqrt(const Rational& lhs, const Rational& c, const Rational& xsq) {
    if (lhs <= 0) return true;
    return lhs * lhs <= c * c * xsq;
}

}  // namespace

bool satisfies_dirichlet(const std::vector<Rational>& x, int d, const Rational& N, const MultiVector& Z,
                         const MultiVector& Y) {
    const int n = static_cast<int>(x.size());
    if (Z.is_zero() || Z.max_norm() > N) return false;
    MultiVector w = (d == 0 ? MultiVector::vector(x) * Z.at(0) : wedge(x, Z)) + Y;
    return dirichlet_ok(w.max_norm(), n, d, N);
}

DirichletWitness dirichlet_search(const std::vector<Rational>& x, int d, const Rational& N) {
    const int n = static_cast<int>(x.size());
    if (n < 1 || d < 0 || d > n - 1) throw Error(Errc::InvalidParams, "need 0 <= d <= n-1");
    if (N < 1) throw Error(Errc::InvalidParams, "N must be at least 1");

    Integer D = 1;
    for (const auto& v : x) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), v.get_den_mpz_t());
    std::vector<Rational> px;
    for (const auto& v : x) px.push_back(v * D);
    const Matrix Mr = wedge_matrix(px, d);
    std::vector<std::vector<Integer>> M;
    for (const auto& row : Mr) {
        std::vector<Integer> r;
        for (const auto& v : row) r.push_back(v.get_num());
        M.push_back(std::move(r));
    }
    const int mz = binomial(n, d);
    const int my = binomial(n, d + 1);
    // |w|^(n-d) * N^(d+1) <= D^(n-d), scaled by the denominator of N.
    const Integer lhs_scale = pow(Rational(N.get_num()), d + 1).get_num();
    const Integer rhs = pow(Rational(D), n - d).get_num() * pow(Rational(N.get_den()), d + 1).get_num();
    const Integer twoD = 2 * D;

    const long Rmax = floor(N).get_si();
    std::vector<long> z(mz);
    std::vector<Integer> y(my), w(my);
    for (long r = 1; r <= Rmax; ++r) {
        std::optional<std::pair<long, std::vector<long>>> best;  // (l1, z)
        std::vector<Integer> bestY;
        auto visit = [&]() {
            int first = -1;
            for (int i = 0; i < mz; ++i)
                if (z[i] != 0) {
                    first = i;
                    break;
                }
            if (first < 0 || z[first] < 0) return;
            Integer wmax = 0;
            for (int c = 0; c < my; ++c) {
                Integer v = 0;
                for (int k = 0; k < mz; ++k)
                    if (z[k] != 0) v += M[c][k] * z[k];
                Integer q;
                Integer num = 2 * v + D;
                mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), twoD.get_mpz_t());
                y[c] = -q;
                w[c] = v + y[c] * D;
                Integer a = ::abs(w[c]);
                if (a > wmax) wmax = a;
            }
            Integer wp;
            mpz_pow_ui(wp.get_mpz_t(), wmax.get_mpz_t(), n - d);
            if (wp * lhs_scale > rhs) return;
            long l1 = 0;
            for (long v : z) l1 += std::labs(v);
            bool better = !best || l1 < best->first;
            if (!better && l1 == best->first)
                for (int i = mz; i-- > 0;)
                    if (z[i] != best->second[i]) {
                        better = z[i] < best->second[i];
                        break;
                    }
            if (better) {
                best = {l1, z};
                bestY = y;
            }
        };
        // Shell enumeration: m is the first coordinate with |z_m| = r.
        for (int m = 0; m < mz; ++m)
            for (long sm : {r, -r}) {
                std::vector<long> lo(mz), hi(mz);
                for (int i = 0; i < mz; ++i) {
                    long b = i < m ? r - 1 : r;
                    lo[i] = -b;
                    hi[i] = b;
                }
                for (int i = 0; i < mz; ++i) z[i] = lo[i];
                z[m] = sm;
                while (true) {
                    visit();
                    int i = mz - 1;
                    for (; i >= 0; --i) {
                        if (i == m) continue;
                        if (z[i] < hi[i]) {
                            ++z[i];
                            break;
                        }
                        z[i] = lo[i];
                    }
                    if (i < 0) break;
                }
            }
        if (!best) continue;

        DirichletWitness out;
        std::vector<Rational> zc, yc;
        for (long v : best->second) zc.push_back(Rational(v));
        for (const auto& v : bestY) yc.push_back(Rational(v));
        out.Z = MultiVector(n, d, zc);
        out.Y = MultiVector(n, d + 1, yc);
        MultiVector W = (d == 0 ? MultiVector::vector(x) * out.Z.at(0) : wedge(x, out.Z)) + out.Y;
        out.error = W.max_norm();
        if (!dirichlet_ok(out.error, n, d, N))
            throw Error(Errc::ExhaustedWithoutWitness, "integer and rational witness checks disagree");

        const int dim = n + 1;
        MultiVector en = MultiVector::blade(dim, {n});
        MultiVector Zl = d == 0 ? MultiVector(dim, 0, {out.Z.at(0)}) : out.Z.embedded(dim);
        MultiVector lifted_z = d == 0 ? en * out.Z.at(0) : wedge(en, Zl);
        out.X = lifted_z - out.Y.embedded(dim);

        const auto xp = lifted(x);
        const Rational xsq = norm_sq(x);
        const Rational xpsq = norm_sq(xp);
        const Rational wsq = W.norm_sq();
        const Rational xpX = wedge(xp, out.X).norm_sq();
        out.sandwich_ok = wsq <= xpX && xpX <= xpsq * wsq;
        out.lift_applicable = N > 1 && xsq > 0 && pow(N, 2 * (d + 1)) * pow(xsq, n - d) > 1;
        // |X|^2 <= n 2^n N^2 (4|x|^2 + 4|x| + 1)
        const Rational c = n * pow(Rational(2), n) * N * N;
        out.lift_height_ok = le_times_sqrt(out.X.norm_sq() / c - 4 * xsq - 1, Rational(4), xsq);
        // (|x'^X|^2 / (2^n |x'|^2))^(n-d) N^(2(d+1)) <= 1
        out.lift_wedge_ok = pow(xpX / (pow(Rational(2), n) * xpsq), n - d) * pow(N, 2 * (d + 1)) <= 1;
        return out;
    }
    throw Error(Errc::ExhaustedWithoutWitness,
                "no Dirichlet witness with |Z| <= " + to_string(N) + "; the theorem guarantees one");
}

std::optional<MultiVector> intermediate_search(const std::vector<Rational>& x, int d, const Rational& N,
                                               const Rational& epsilon, double budget) {
    const int n = static_cast<int>(x.size());
    if (n < 1 || d < 0 || d > n - 1) throw Error(Errc::InvalidParams, "need 0 <= d <= n-1");
    if (N < 1 || epsilon <= 0) throw Error(Errc::InvalidParams, "need N >= 1 and epsilon > 0");
    const int dim = n + 1, grade = d + 1;
    const int m = binomial(dim, grade);
    const auto xp = lifted(x);
    const Rational eps_pow = pow(epsilon, 2 * (n - d));
    const Rational n_pow = pow(N, 2 * (d + 1));

    std::optional<std::tuple<Rational, Rational, std::vector<Rational>>> best;  // (|X|^2, l1, coords)
    for_each_normalized(m, floor(N).get_si(), N * N, budget, [&](const std::vector<Rational>& v) {
        MultiVector X(dim, grade, v);
        Rational h = X.norm_sq();
        Rational l1 = 0;
        for (const auto& c : v) l1 += abs(c);
        if (best) {
            const auto& [bh, bl, bv] = *best;
            if (h > bh || (h == bh && (l1 > bl || (l1 == bl && !colex_less(v, bv))))) return;
        }
        if (pow(wedge(xp, X).norm_sq(), n - d) * n_pow > eps_pow) return;
        best = std::make_tuple(h, l1, v);
    });
    if (!best) return std::nullopt;
    return MultiVector(dim, grade, std::get<2>(*best));
}

}  // namespace pgn
