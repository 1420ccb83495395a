#pragma once

#include <string>
#include <vector>

#include "hodge/lefschetz_ring.hpp"

namespace hodge {

/// Intersection matrix ||E_j · E_k|| of the components of a contracted fiber
/// of half-dimension m.  Exact entries, or floating-point entries when the data
/// is irrational.
struct IntersectionMatrix {
    int m = 1;
    RationalMatrix exact;
    std::vector<std::vector<double>> approx;
    bool approximate = false;

    std::size_t size() const { return approximate ? approx.size() : exact.rows(); }
};

struct ContractibilityVerdict {
    bool consistent = false;
    std::string method;          // "exact" or "approximate"
    std::vector<Rational> minors;  // leading minors of (−1)^m M (exact path)
    double min_eigenvalue = 0;     // smallest eigenvalue of (−1)^m M (approximate path)
    std::string text() const { return consistent ? "consistent with contraction" : "inconsistent"; }
};

/// Is (−1)^m M positive definite?  Throws std::invalid_argument on non-symmetric input.
ContractibilityVerdict contractibility_check(const IntersectionMatrix& M);

struct PrimitiveLimitStep {
    Rational eps;
    std::vector<RingVector> basis;  // P^{2m}_{M+εL}
    double gap = 0;                 // distance to P^{2m}_M
};

struct PrimitiveLimitTrace {
    int m = 0;
    long long expected_dim = 0;  // b_{2m} − b_{2m−2}
    std::vector<PrimitiveLimitStep> steps;
    std::vector<RingVector> limit_basis;  // P^{2m}_M
    bool hard_lefschetz_M = false;
    bool dims_constant = false;
    bool limit_dim_ok = false;  // vacuous when Hard Lefschetz fails for M
    bool monotone = false;      // gaps non-increasing
    std::vector<RingVector> polarization_basis;  // real (m,m) part of P^{2m}_M
    RationalMatrix polarization;                 // (−1)^m ∫ x y on that basis
    Definiteness polarization_definiteness = Definiteness::indefinite_or_degenerate;
    bool passed() const;
};

/// Grassmannian gap ||P_A − P_B|| between the spans of two sets of vectors
/// (rows restricted to `coords`), in floating point.
double gap_distance(const std::vector<RingVector>& a, const std::vector<RingVector>& b,
                    const std::vector<std::size_t>& coords);

/// Traces P^{2m}_{M+εL} = ker (M+εL) on the middle degree 2m = n as ε → 0.
/// Throws LefschetzFailure when L fails Hard Lefschetz and std::invalid_argument
/// for non-positive or non-decreasing ε, odd n, or classes that are not real (1,1).
PrimitiveLimitTrace primitive_limit(const GradedRing& ring, const RingVector& M, const RingVector& L,
                                    const std::vector<Rational>& eps);

/// 2^{-1}, …, 2^{-count}.
std::vector<Rational> dyadic_sequence(int count);

}  // namespace hodge
