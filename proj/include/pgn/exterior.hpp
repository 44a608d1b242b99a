#pragma once

#include <optional>
#include <vector>

#include "pgn/rational.hpp"

namespace pgn {

using Matrix = std::vector<std::vector<Rational>>;

// grade-element subsets of {0..dim-1} in lexicographic order.
const std::vector<std::vector<int>>& blades(int dim, int grade);
int binomial(int n, int k);

class MultiVector {
public:
    MultiVector() = default;
    MultiVector(int dim, int grade);  // zero
    MultiVector(int dim, int grade, std::vector<Rational> coords);
    static MultiVector vector(const std::vector<Rational>& v);
    static MultiVector blade(int dim, const std::vector<int>& indices);  // 0-based, increasing

    int dim() const { return dim_; }
    int grade() const { return grade_; }
    const std::vector<Rational>& coords() const { return coords_; }
    const Rational& at(size_t i) const { return coords_[i]; }
    Rational& at(size_t i) { return coords_[i]; }
    bool is_zero() const;
    Rational norm_sq() const;  // Euclidean
    Rational max_norm() const;
    // Same coordinates viewed inside a larger ambient space (indices unchanged).
    MultiVector embedded(int dim) const;

    MultiVector operator+(const MultiVector& o) const;
    MultiVector operator-(const MultiVector& o) const;
    MultiVector operator*(const Rational& c) const;
    friend bool operator==(const MultiVector&, const MultiVector&) = default;

private:
    int dim_ = 0;
    int grade_ = 0;
    std::vector<Rational> coords_;
};

MultiVector wedge(const MultiVector& a, const MultiVector& b);
MultiVector wedge(const std::vector<Rational>& v, const MultiVector& x);

int rank(Matrix m);
bool is_decomposable(const MultiVector& x);

struct RationalSubspace {
    int n = 0;  // affine space R^n
    int d = 0;  // dimension of L
    MultiVector plucker;  // primitive integer, first nonzero coordinate positive
    Rational height_sq;
};

// Basis of the homogenized subspace V_L in Z^{n+1} (d+1 integer vectors).
RationalSubspace plucker_subspace(const std::vector<std::vector<Integer>>& basis);
// Primitive normalized form of an integer multivector.
RationalSubspace subspace_from_plucker(const MultiVector& x);

// |x' ^ X|^2 / (|x'|^2 |X|^2), x' = (x, 1).
Rational proj_distance_sq(const std::vector<Rational>& x, const RationalSubspace& L);

struct ApproxRecord {
    RationalSubspace L;
    Rational dp_sq;
    bool running_min = false;
};

constexpr double kExteriorBudget = 5e7;

std::vector<ApproxRecord> best_approx(const std::vector<Rational>& x, int d, const Rational& h_max,
                                      double budget = kExteriorBudget);

// Rows: blades of grade d+1 in R^n; columns: blades of grade d in R^n.
Matrix wedge_matrix(const std::vector<Rational>& x, int d);

struct DirichletWitness {
    MultiVector Z;  // grade d over R^n, integer
    MultiVector Y;  // grade d+1 over R^n, integer
    MultiVector X;  // e_{n+1} ^ Z - Y over R^{n+1}
    Rational error;  // max norm of x ^ Z + Y
    bool lift_applicable = false;  // N > max(|x|^{-1/omega_d}, 1)
    bool lift_height_ok = false;   // |X| <= n^{1/2} 2^{n/2} (2|x|+1) N
    bool lift_wedge_ok = false;    // |x' ^ X| <= 2^{n/2} |x'| N^{-omega_d}
    bool sandwich_ok = false;      // |x^Z+Y| <= |x' ^ X| <= |x'| |x^Z+Y|
};

// True when z and y satisfy |Z| <= N and |x^Z+Y|^{n-d} N^{d+1} <= 1 (max norms).
bool satisfies_dirichlet(const std::vector<Rational>& x, int d, const Rational& N, const MultiVector& Z,
                         const MultiVector& Y);

DirichletWitness dirichlet_search(const std::vector<Rational>& x, int d, const Rational& N);

std::optional<MultiVector> intermediate_search(const std::vector<Rational>& x, int d, const Rational& N,
                                               const Rational& epsilon, double budget = kExteriorBudget);

}  // namespace pgn
