#pragma once

#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hodge/matrix.hpp"
#include "hodge/multi_index.hpp"
#include "hodge/rational.hpp"

namespace hodge {

/// Element of the exterior algebra Λ(R^m) (or its complexification when F is
/// GaussianRational), stored as a sparse map e_I -> coefficient.  Zero
/// coefficients are never stored, so operator== is mathematical equality.
template <class F>
class ExteriorElement {
public:
    using Terms = std::map<MultiIndex, F>;

    ExteriorElement() = default;
    explicit ExteriorElement(int dim) : dim_(dim) {
        if (dim < 0) throw std::invalid_argument("negative exterior dimension");
    }

    static ExteriorElement basis(int dim, const MultiIndex& I, F coeff = F(1)) {
        ExteriorElement e(dim);
        e.add_term(I, std::move(coeff));
        return e;
    }
    static ExteriorElement scalar(int dim, F c) { return basis(dim, MultiIndex{}, std::move(c)); }
    /// e_1 ∧ … ∧ e_m
    static ExteriorElement top(int dim, F coeff = F(1)) {
        std::vector<int> all(dim);
        for (int i = 0; i < dim; ++i) all[i] = i + 1;
        return basis(dim, MultiIndex(all), std::move(coeff));
    }

    int dim() const { return dim_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    F coefficient(const MultiIndex& I) const {
        auto it = terms_.find(I);
        return it == terms_.end() ? F(0) : it->second;
    }

    void add_term(const MultiIndex& I, const F& c) {
        I.check_dimension(dim_);
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(I, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Degree of a homogeneous element; -1 for the zero element, throws if mixed.
    int degree() const {
        if (terms_.empty()) return -1;
        int p = terms_.begin()->first.degree();
        for (const auto& [I, c] : terms_)
            if (I.degree() != p) throw std::domain_error("element is not degree-homogeneous");
        return p;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int p = terms_.begin()->first.degree();
        for (const auto& [I, c] : terms_)
            if (I.degree() != p) return false;
        return true;
    }

    ExteriorElement homogeneous_part(int p) const {
        ExteriorElement out(dim_);
        for (const auto& [I, c] : terms_)
            if (I.degree() == p) out.terms_.emplace(I, c);
        return out;
    }

    ExteriorElement& operator+=(const ExteriorElement& o) {
        check_dim(o);
        for (const auto& [I, c] : o.terms_) add_term(I, c);
        return *this;
    }
    ExteriorElement& operator-=(const ExteriorElement& o) {
        check_dim(o);
        for (const auto& [I, c] : o.terms_) add_term(I, -c);
        return *this;
    }
    ExteriorElement& operator*=(const F& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [I, c] : terms_) c *= s;
        return *this;
    }

    friend ExteriorElement operator+(ExteriorElement a, const ExteriorElement& b) { return a += b; }
    friend ExteriorElement operator-(ExteriorElement a, const ExteriorElement& b) { return a -= b; }
    friend ExteriorElement operator-(ExteriorElement a) { return a *= F(-1); }
    friend ExteriorElement operator*(const F& s, ExteriorElement a) { return a *= s; }
    friend ExteriorElement operator*(ExteriorElement a, const F& s) { return a *= s; }
    friend bool operator==(const ExteriorElement& a, const ExteriorElement& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    void check_dim(const ExteriorElement& o) const {
        if (dim_ != o.dim_)
            throw std::invalid_argument("exterior dimension mismatch: " + std::to_string(dim_) + " vs " +
                                        std::to_string(o.dim_));
    }

private:
    int dim_ = 0;
    Terms terms_;
};

template <class F>
std::ostream& operator<<(std::ostream& os, const ExteriorElement<F>& u) {
    if (u.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [I, c] : u.terms()) {
        if (!first) os << " + ";
        first = false;
        os << '(' << c << ")e" << I;
    }
    return os;
}

/// u ∧ v, extended bilinearly.
template <class F>
ExteriorElement<F> wedge(const ExteriorElement<F>& u, const ExteriorElement<F>& v) {
    u.check_dim(v);
    ExteriorElement<F> out(u.dim());
    for (const auto& [I, a] : u.terms())
        for (const auto& [J, b] : v.terms()) {
            if (!I.disjoint(J)) continue;
            F c = a * b;
            if (shuffle_sign(I, J) < 0) c = -c;
            out.add_term(I.merged(J), c);
        }
    return out;
}

/// Symmetric positive definite Gram matrix of a basis of V* (the metric on
/// covectors).  Positive definiteness is certified at construction.
class MetricSpec {
public:
    explicit MetricSpec(RationalMatrix gram);
    static MetricSpec euclidean(int m);

    int dim() const { return static_cast<int>(gram_.rows()); }
    const RationalMatrix& gram() const { return gram_; }
    const Rational& determinant() const { return det_; }
    bool is_orthonormal() const;

    /// Gram matrix of the induced inner product on Λ^p, rows and columns
    /// indexed by multi_indices(m, p).  Entry (I,J) = det g[I,J].
    RationalMatrix exterior_gram(int p) const;
    Rational basis_inner(const MultiIndex& I, const MultiIndex& J) const;

private:
    RationalMatrix gram_;
    Rational det_;
};

/// ±1 relative to e_1 ∧ … ∧ e_m.
class OrientationSpec {
public:
    OrientationSpec(int sign = 1);  // NOLINT(google-explicit-constructor)
    int sign() const { return sign_; }

private:
    int sign_;
};

/// Exact inverse of a positive definite metric: the metric on the dual space.
MetricSpec dual_metric(const RationalMatrix& g);

/// ⟨u, v⟩ from Gram determinants; components of different degree are orthogonal.
/// For complex coefficients this is the complex-bilinear extension.
template <class F>
F inner_product(const ExteriorElement<F>& u, const ExteriorElement<F>& v, const MetricSpec& g) {
    u.check_dim(v);
    if (u.dim() != g.dim()) throw std::invalid_argument("metric dimension mismatch");
    F acc(0);
    for (const auto& [I, a] : u.terms())
        for (const auto& [J, b] : v.terms()) {
            if (I.degree() != J.degree()) continue;
            Rational gij = g.basis_inner(I, J);
            if (!gij.is_zero()) acc += a * b * F(gij);
        }
    return acc;
}

/// The Hodge star of a possibly non-orthonormal metric equals
/// (σ / √det g) · S, where S has rational entries:  S e_J = Σ_I ε(I,CI) ⟨e_I,e_J⟩ e_CI.
/// This type carries S·u and det g so that irrational volume factors never
/// enter the arithmetic; ⋆⋆ and u ∧ ⋆v = ⟨u,v⟩dV stay exact for any metric.
template <class F>
struct ScaledStar {
    ExteriorElement<F> unnormalized;  // σ · S · u
    Rational gram_det;                // the value is unnormalized / √gram_det
};

template <class F>
ScaledStar<F> hodge_star_scaled(const ExteriorElement<F>& u, const MetricSpec& g, const OrientationSpec& o) {
    const int m = u.dim();
    if (m != g.dim()) throw std::invalid_argument("metric dimension mismatch");
    ExteriorElement<F> out(m);
    // ⋆ is extended linearly across degrees; each homogeneous part maps
    // Λ^p -> Λ^(m-p).
    for (const auto& [J, b] : u.terms()) {
        for (const auto& I : multi_indices(m, J.degree())) {
            Rational gij = g.basis_inner(I, J);
            if (gij.is_zero()) continue;
            auto [eps, CI] = complement_sign(I, m);
            F c = b * F(gij);
            if (eps * o.sign() < 0) c = -c;
            out.add_term(CI, c);
        }
    }
    return {std::move(out), g.determinant()};
}

/// √det g when it is rational; the Hodge star is then exact over the field.
std::optional<Rational> volume_scale(const MetricSpec& g);

/// ⋆u; throws std::domain_error when √det g is irrational (use
/// hodge_star_scaled or hodge_star_twice for such metrics).
template <class F>
ExteriorElement<F> hodge_star(const ExteriorElement<F>& u, const MetricSpec& g, const OrientationSpec& o) {
    auto s = volume_scale(g);
    if (!s) throw std::domain_error("metric determinant " + g.determinant().str() + " is not a rational square");
    auto scaled = hodge_star_scaled(u, g, o);
    return scaled.unnormalized * F(s->inverse());
}

/// ⋆⋆u, exact for every rational metric: the two 1/√det factors combine.
template <class F>
ExteriorElement<F> hodge_star_twice(const ExteriorElement<F>& u, const MetricSpec& g, const OrientationSpec& o) {
    auto once = hodge_star_scaled(u, g, o);
    auto twice = hodge_star_scaled(once.unnormalized, g, o);
    return twice.unnormalized * F(g.determinant().inverse());
}

/// Unit-norm top form in the orientation class: σ e_1∧…∧e_m / √det g.
ExteriorElement<Rational> volume_element(const MetricSpec& g, const OrientationSpec& o);

/// Matrix of σ·S restricted to Λ^p -> Λ^(m-p) in the multi_indices bases.
RationalMatrix star_matrix_unnormalized(const MetricSpec& g, const OrientationSpec& o, int p);

template <class F>
ExteriorElement<Gaussian> to_gaussian(const ExteriorElement<F>& u) {
    ExteriorElement<Gaussian> out(u.dim());
    for (const auto& [I, c] : u.terms()) out.add_term(I, Gaussian(c));
    return out;
}

template <class F>
ExteriorElement<F> conjugate(const ExteriorElement<F>& u) {
    ExteriorElement<F> out(u.dim());
    for (const auto& [I, c] : u.terms()) out.add_term(I, conj(c));
    return out;
}

}  // namespace hodge
