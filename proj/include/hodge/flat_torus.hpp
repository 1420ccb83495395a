#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hodge/complex_hermitian.hpp"
#include "hodge/exterior.hpp"

namespace hodge {

/// Frequency vector k ∈ Z^m of the mode e^{2πi k·x}.
using Mode = std::vector<int>;

/// All k ∈ Z^m with |k|∞ ≤ bound, in lexicographic order.
std::vector<Mode> modes_in_box(int m, int bound);

/// Finitely supported Fourier series of a complex-valued form on R^m/Z^m.
/// Coefficients are written in the real coframe dx_1, …, dx_m; for complex
/// tori the coframe is (dx_1, dy_1, …, dx_n, dy_n).
class FourierForm {
public:
    using Modes = std::map<Mode, ExteriorElement<Gaussian>>;

    FourierForm() = default;
    explicit FourierForm(int m);

    int m() const { return m_; }
    const Modes& modes() const { return modes_; }
    bool is_zero() const { return modes_.empty(); }
    ExteriorElement<Gaussian> coefficient(const Mode& k) const;

    void add_mode(const Mode& k, const ExteriorElement<Gaussian>& c);
    /// Real iff coeff(−k) = conj(coeff(k)) for every k.
    bool is_real() const;

    FourierForm& operator+=(const FourierForm& o);
    FourierForm& operator-=(const FourierForm& o);
    friend FourierForm operator+(FourierForm a, const FourierForm& b) { return a += b; }
    friend FourierForm operator-(FourierForm a, const FourierForm& b) { return a -= b; }
    friend bool operator==(const FourierForm&, const FourierForm&) = default;

private:
    int m_ = 0;
    Modes modes_;
};

/// ⟨⟨U, V⟩⟩ = ∫ ⟨U, V⟩ dV over the unit torus: Σ_k ⟨u_k, v_k⟩ (Hermitian).
Gaussian l2_inner(const FourierForm& u, const FourierForm& v, const MetricSpec& g);

/// Mode-block matrices for the real flat torus R^m/Z^m with a constant metric.
/// Basis: all_multi_indices(m) (degree-major).  First-order operators are
/// divided by 2π, so ∂/∂x_j acts on mode k as multiplication by i k_j.
class RealTorusModel {
public:
    explicit RealTorusModel(int m);
    RealTorusModel(int m, MetricSpec g);

    int m() const { return m_; }
    const MetricSpec& metric() const { return g_; }
    const std::vector<MultiIndex>& basis() const { return basis_; }
    std::size_t index_of(const MultiIndex& I) const { return index_.at(I); }
    std::size_t size() const { return basis_.size(); }

    std::vector<Gaussian> to_vector(const ExteriorElement<Gaussian>& u) const;
    ExteriorElement<Gaussian> from_vector(const std::vector<Gaussian>& v) const;

    /// Hermitian Gram matrix of the basis (block diagonal by degree).
    const GaussianMatrix& gram() const { return gram_; }
    GaussianMatrix adjoint(const GaussianMatrix& a) const;

    GaussianMatrix d_block(const Mode& k) const;
    /// d* as the conjugate transpose of d with respect to the mode inner product.
    GaussianMatrix dstar_block(const Mode& k) const;
    /// d* from (−1)^{m(p+1)+1} ⋆d⋆, exact for any rational metric.
    GaussianMatrix dstar_formula_block(const Mode& k) const;
    GaussianMatrix laplacian_block(const Mode& k) const;
    /// |k|² in the metric: Σ g_ij k_i k_j (Δ eigenvalue in units of 4π²).
    Rational frequency_norm2(const Mode& k) const;
    /// σ·S (star times √det g), and det g.
    std::pair<GaussianMatrix, Rational> star_scaled() const;
    GaussianMatrix degree_projector(int p) const;

private:
    int m_;
    MetricSpec g_;
    std::vector<MultiIndex> basis_;
    std::map<MultiIndex, std::size_t> index_;
    GaussianMatrix gram_;
    GaussianMatrix gram_inv_;
};

FourierForm exterior_d(const FourierForm& f);
FourierForm codifferential(const FourierForm& f, const MetricSpec& g);

enum class LaplacianFlavor { full, holomorphic, antiholomorphic };  // Δ, Δ′, Δ″
LaplacianFlavor parse_laplacian_flavor(const std::string& s);

/// Δ with the given metric.  Δ′ and Δ″ need an even real dimension and use
/// the Euclidean complex structure of C^n (the metric must be Euclidean).
FourierForm laplacian(const FourierForm& f, LaplacianFlavor flavor, const MetricSpec& g);
FourierForm laplacian(const FourierForm& f, LaplacianFlavor flavor = LaplacianFlavor::full);

struct HodgeDecomposition {
    FourierForm harmonic;
    FourierForm exact;      // d A
    FourierForm coexact;    // d* B
    FourierForm primitive_exact;    // A
    FourierForm primitive_coexact;  // B
};

/// F = H + dA + d*B, computed per mode by inverting Δ off its kernel.
HodgeDecomposition hodge_decompose(const FourierForm& f, const MetricSpec& g);
HodgeDecomposition hodge_decompose(const FourierForm& f);

/// dim ker Δ on p-forms, summed over all modes with |k|∞ ≤ max_mode.
std::vector<long long> betti_numbers(int m, int max_mode = 1);
/// dim ker Δ on (p,q)-forms of C^n/Z^{2n}; table indexed [p][q].
std::vector<std::vector<long long>> hodge_numbers(int n, int max_mode = 1);

/// Matrix of (u, v) ↦ ∫ u ∧ v on harmonic p-forms × harmonic (m−p)-forms, in
/// the bases of constant forms e_I (lexicographic).
RationalMatrix poincare_pairing(int m, int p);
/// ∫ u ∧ v on harmonic (p,q) × (n−p,n−q) forms of the complex torus, Euclidean
/// volume dx_1∧dy_1∧… normalized to 1.
GaussianMatrix serre_pairing(int n, int p, int q);

/// Operators acting on the bigraded coefficient space of C^n/Z^{2n} with the
/// Euclidean metric; the basis is dz_I ∧ dz̄_J ordered by (p+q, p desc, I, J).
enum class OperatorKind {
    d, d_prime, d_dprime,
    laplacian, laplacian_prime, laplacian_dprime,
    lefschetz,
    wedge_dz, wedge_dzbar, partial, partial_bar,
    projector, star, weil
};

struct OperatorLabel {
    OperatorKind kind = OperatorKind::d;
    bool adjoint = false;
    int j = 0;          // for wedge/partial families, 1-based
    int p = 0, q = 0;   // for the projector

    std::string str() const;
    /// Parses labels such as "d", "d''*", "Delta'", "L*", "wedge:2", "wedgebar*:1",
    /// "partial:1", "partialbar*:3", "pi:1,0", "star", "C".
    static OperatorLabel parse(const std::string& text);
};

struct ModeBlockOperator {
    OperatorLabel label;
    Mode k;
    GaussianSparse matrix;
};

class ComplexTorusModel {
public:
    explicit ComplexTorusModel(int n);

    int n() const { return n_; }
    std::size_t size() const { return basis_.size(); }
    const std::vector<BiIndex>& basis() const { return basis_; }
    std::size_t index_of(const BiIndex& b) const { return index_.at(b); }
    /// Diagonal of the Hermitian Gram matrix: ⟨dz_I∧dz̄_J, dz_I∧dz̄_J⟩ = 2^{|I|+|J|}.
    const std::vector<Gaussian>& gram_diagonal() const { return gram_; }

    std::vector<Gaussian> to_vector(const BigradedElement& u) const;
    BigradedElement from_vector(const std::vector<Gaussian>& v) const;

    /// Conjugate transpose with respect to the Hermitian Gram matrix.
    GaussianSparse adjoint(const GaussianSparse& a) const;

    const GaussianSparse& wedge_dz(int j) const { return wedge_dz_.at(j - 1); }
    const GaussianSparse& wedge_dzbar(int j) const { return wedge_dzbar_.at(j - 1); }
    const GaussianSparse& lefschetz() const { return lefschetz_; }
    const GaussianSparse& star() const { return star_; }
    const GaussianSparse& star_inverse() const { return star_inverse_; }
    const GaussianSparse& weil() const { return weil_; }
    const GaussianSparse& identity() const { return identity_; }
    GaussianSparse projector(int p, int q) const;
    /// Projection onto basis elements dz_I∧dz̄_J with j ∈ I (holomorphic) or j ∈ J.
    GaussianSparse contains_projector(int j, bool holomorphic) const;
    GaussianSparse degree_sign() const;  // w = Σ (−1)^l π^l

    /// ∂/∂z_j and ∂/∂z̄_j on mode k = (kx_1, ky_1, …): ½(i kx + ky), ½(i kx − ky).
    static Gaussian partial_symbol(const Mode& k, int j);
    static Gaussian partial_bar_symbol(const Mode& k, int j);

    ModeBlockOperator block(const OperatorLabel& label, const Mode& k) const;

    /// dz-basis images of the real coframe forms, as columns; maps real-basis
    /// coefficient vectors (all_multi_indices(2n)) to bigraded coefficients.
    GaussianMatrix real_to_bigraded() const;

private:
    int n_;
    std::vector<BiIndex> basis_;
    std::map<BiIndex, std::size_t> index_;
    std::vector<Gaussian> gram_;
    std::vector<GaussianSparse> wedge_dz_, wedge_dzbar_;
    GaussianSparse lefschetz_, star_, star_inverse_, weil_, identity_;
};

ModeBlockOperator operator_block(const std::string& label, const Mode& k, int n);

/// Residual of one relation, aggregated over the modes it was evaluated on.
struct RelationResult {
    std::string relation;  // human-readable statement
    std::string tag;       // label of the identity being verified
    bool mode_independent = false;
    std::size_t modes_checked = 0;  // 0 for mode-independent relations
    Rational max_residual;  // max |entry|² over all modes; zero when the identity holds
    std::optional<Mode> worst_mode;
    bool passed() const { return max_residual.is_zero(); }
};

struct KahlerSuiteReport {
    int n = 0;
    std::vector<Mode> modes;
    std::vector<RelationResult> relations;
    bool all_passed() const;
};

/// Evaluates the Kähler identities and the supporting operator relations on
/// every given mode of the Euclidean complex torus of dimension n.
KahlerSuiteReport kahler_identity_suite(int n, const std::vector<Mode>& modes);
KahlerSuiteReport kahler_identity_suite(int n, int max_mode = 2);

}  // namespace hodge
