#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hodge/matrix.hpp"
#include "hodge/rational.hpp"

namespace hodge {

/// Coefficients of a ring element in the ring's named basis.
using RingVector = std::vector<Gaussian>;

struct RingBasisElement {
    std::string name;
    int p = 0;
    int q = 0;
    int degree() const { return p + q; }
};

struct RingTerm {
    std::string name;
    Gaussian coeff;
};

struct RingMultEntry {
    std::string a, b;
    std::vector<RingTerm> out;
};

/// Raw ring description, as read from a file or produced by a builtin.
struct RingSpec {
    std::string name;
    int n = 0;
    std::vector<RingBasisElement> basis;
    std::vector<RingMultEntry> mult;
    std::vector<RingTerm> integral;
    /// Conjugates of basis elements; absent names are conjugation-fixed.
    std::map<std::string, std::vector<RingTerm>> conj;
};

/// Raised when a ring fails a load-time invariant; invariant() names it.
class RingCertificationError : public std::runtime_error {
public:
    RingCertificationError(std::string invariant, const std::string& what)
        : std::runtime_error(invariant + ": " + what), invariant_(std::move(invariant)) {}
    const std::string& invariant() const { return invariant_; }

private:
    std::string invariant_;
};

/// Raised when an operation needs Hard Lefschetz and it fails.
class LefschetzFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Finite-dimensional bigraded, graded-commutative algebra with an integral
/// on top degree 2n.  Immutable once certified.
class GradedRing {
public:
    /// Validates basis, fills the product table by graded commutativity and the
    /// unit, then certifies bidegree additivity, associativity, the support of
    /// the integral, Poincaré nondegeneracy and the conjugation.
    static GradedRing certify(const RingSpec& spec);

    const std::string& name() const { return name_; }
    int n() const { return n_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<RingBasisElement>& basis() const { return basis_; }
    std::size_t index_of(const std::string& name) const;
    std::size_t unit_index() const { return unit_; }

    RingVector zero() const { return RingVector(dim()); }
    RingVector element(const std::string& name, Gaussian c = Gaussian(1)) const;
    RingVector unit() const { return element(basis_[unit_].name); }

    RingVector multiply(const RingVector& a, const RingVector& b) const;
    RingVector power(const RingVector& a, int k) const;
    Gaussian integrate(const RingVector& a) const;
    RingVector conjugate(const RingVector& a) const;

    std::vector<std::size_t> indices_of_degree(int l) const;
    std::vector<std::size_t> indices_of_bidegree(int p, int q) const;
    long long betti(int l) const;
    long long hodge_number(int p, int q) const;

    bool is_bihomogeneous(const RingVector& a, int p, int q) const;
    bool is_real(const RingVector& a) const { return conjugate(a) == a; }
    /// π^{p,q} on coefficient vectors.
    RingVector project(const RingVector& a, int p, int q) const;

    /// Matrix of x ↦ a·x restricted to `source` columns and `target` rows.
    GaussianMatrix multiplication_matrix(const RingVector& a, const std::vector<std::size_t>& source,
                                         const std::vector<std::size_t>& target) const;
    /// Columns are conj(e_a); conj(x) = K · x̄.
    GaussianMatrix conjugation_matrix() const;
    /// Matrix of (x, y) ↦ ∫ w·x·y in the full basis.
    GaussianMatrix cup_form(const RingVector& w) const;

    std::string format(const RingVector& a) const;

private:
    using Sparse = std::vector<std::pair<std::size_t, Gaussian>>;

    GradedRing() = default;
    RingVector to_dense(const Sparse& s) const;

    std::string name_;
    int n_ = 0;
    std::vector<RingBasisElement> basis_;
    std::map<std::string, std::size_t> index_;
    std::size_t unit_ = 0;
    std::vector<std::vector<Sparse>> table_;  // table_[a][b] = e_a · e_b
    RingVector integral_;
    std::vector<Sparse> conj_;
};

/// Ring together with its default Kähler class.
struct BuiltinRing {
    GradedRing ring;
    RingVector omega;
};

BuiltinRing projective_space(int n);
BuiltinRing torus_ring(int n);
BuiltinRing quadric_surface();
BuiltinRing product_P1_P1();
BuiltinRing blowup_P2();
BuiltinRing blowup_P3_point();

/// kind ∈ {projective_space, torus, quadric_surface, blowup_P2, blowup_P3_point,
/// product_P1_P1}; n is used by the first two.
BuiltinRing ring_builtin(const std::string& kind, int n = 2);

// ---------------------------------------------------------------------------
// Hard Lefschetz and primitive decomposition

struct HardLefschetzStep {
    int r = 0;
    int source_degree = 0;
    int target_degree = 0;
    long long b_source = 0;
    long long b_target = 0;
    long long rank = 0;
    bool iso = false;
    bool pairing_nondegenerate = false;  // ∫ ω^r u v on H^{n−r}
};

struct HardLefschetzReport {
    std::vector<HardLefschetzStep> steps;
    bool passed() const;
    std::optional<int> first_failure() const;
};

/// Throws std::invalid_argument unless ω is real of bidegree (1,1).
void require_lefschetz_class(const GradedRing& ring, const RingVector& omega);

HardLefschetzReport hard_lefschetz_check(const GradedRing& ring, const RingVector& omega);

/// P^{p,q} = ker ω^{n−l+1} on H^{p,q}, l = p + q ≤ n.
std::vector<RingVector> primitive_subspace(const GradedRing& ring, const RingVector& omega, int p, int q);
/// P^l, as the union of the bidegree pieces.
std::vector<RingVector> primitive_subspace(const GradedRing& ring, const RingVector& omega, int l);

struct PrimitiveSummand {
    int j = 0;                      // ω^j · P^{l−2j}
    int primitive_degree = 0;
    std::vector<RingVector> basis;  // images ω^j · v
    long long expected_dim = 0;     // b_{l−2j} − b_{l−2j−2}
    bool closed_under_bidegree = false;
};

struct PrimitiveDecomposition {
    int l = 0;
    long long b_l = 0;
    std::vector<PrimitiveSummand> summands;
    bool dimensions_match = false;
    bool direct_sum = false;
    bool orthogonal = false;  // under ∫ ω^{n−l} x y
    bool passed() const;
};

/// Throws LefschetzFailure when Hard Lefschetz fails for ω.
PrimitiveDecomposition primitive_decompose(const GradedRing& ring, const RingVector& omega, int l);

// ---------------------------------------------------------------------------
// Hodge–Riemann

struct HodgeRiemannBlock {
    int p = 0, q = 0;
    std::vector<RingVector> basis;
    GaussianMatrix form;  // (−1)^{l(l−1)/2} i^{p−q} ∫ ω^{n−l} α β̄
    GaussianMatrix raw;   // ∫ ω^{n−l} α β̄
    bool hermitian = false;
    Definiteness verdict = Definiteness::indefinite_or_degenerate;
    Definiteness raw_verdict = Definiteness::indefinite_or_degenerate;
    bool passed() const { return hermitian && (basis.empty() || verdict == Definiteness::positive); }
};

struct HodgeRiemannReport {
    int l = 0;
    int sign = 1;  // (−1)^{l(l−1)/2}
    std::vector<HodgeRiemannBlock> blocks;
    bool passed() const;
};

HodgeRiemannReport hodge_riemann_check(const GradedRing& ring, const RingVector& omega, int l);

// ---------------------------------------------------------------------------
// Hodge structures and polarizations

/// Weight-l Hodge structure inside an ambient coordinate space, with the
/// ambient conjugation x ↦ K x̄.
struct HodgeStructureSlice {
    int weight = 0;
    std::map<std::pair<int, int>, std::vector<RingVector>> parts;
    GaussianMatrix conj;

    std::size_t ambient_dim() const { return conj.rows(); }
    std::size_t dim() const;
    RingVector conjugate(const RingVector& x) const;
    /// Bidegrees add to the weight and conj(H^{p,q}) = H^{q,p}.
    void validate() const;
};

struct PolarizationReport {
    int weight = 0;
    std::vector<RingVector> real_basis;
    RationalMatrix psi;        // Ψ on the real basis
    RationalMatrix psi_tilde;  // Ψ(x, C y)
    bool psi_real = false;
    bool parity_ok = false;         // symmetric for even l, antisymmetric for odd
    bool psi_tilde_symmetric = false;
    Definiteness psi_tilde_definiteness = Definiteness::indefinite_or_degenerate;
    bool weil_square_ok = false;    // C² = (−1)^l on the slice
    bool hodge_orthogonal = false;  // Ψ(H^{p,q}, H^{p',q'}) = 0 unless (p',q') = (q,p)
    bool hermitian_positive = false;  // (−1)^l i^{p−q} Ψ(x, x̄) > 0 on each H^{p,q}
    std::vector<PolarizationReport> substructures;
    bool passed() const;
    std::string failure() const;
};

/// Ψ is a bilinear form on ambient coordinates: Ψ(x, y) = xᵀ Ψ y.
PolarizationReport polarization_check(const HodgeStructureSlice& slice, const GaussianMatrix& psi,
                                      const std::vector<HodgeStructureSlice>& substructures = {});

/// The primitive weight-l slice P^l with its bidegree pieces.
HodgeStructureSlice primitive_slice(const GradedRing& ring, const RingVector& omega, int l);
/// The full weight-l slice H^l.
HodgeStructureSlice cohomology_slice(const GradedRing& ring, int l);
/// (−1)^{l(l+1)/2} ∫ ω^{n−l} x y in the ring basis.
GaussianMatrix canonical_polarization_form(const GradedRing& ring, const RingVector& omega, int l);

// ---------------------------------------------------------------------------
// Hodge diamond

struct IdentityCheck {
    std::string tag;
    std::string statement;
    bool passed = false;
    std::string detail;
};

struct HodgeDiamond {
    int n = 0;
    std::vector<std::vector<long long>> h;  // h[p][q]
    std::vector<long long> betti;
    std::vector<IdentityCheck> checks;
    bool passed() const;
    /// Aligned diamond with h^{n,n} on top and h^{0,0} at the bottom.
    std::string text() const;
};

HodgeDiamond hodge_diamond(const GradedRing& ring);

}  // namespace hodge
