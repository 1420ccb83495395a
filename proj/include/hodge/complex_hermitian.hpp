#pragma once

#include <map>
#include <ostream>
#include <utility>

#include "hodge/exterior.hpp"

namespace hodge {

/// Label of the basis form dz_I ∧ dz̄_J.
struct BiIndex {
    MultiIndex holo;      // I
    MultiIndex antiholo;  // J

    int p() const { return holo.degree(); }
    int q() const { return antiholo.degree(); }
    int degree() const { return p() + q(); }

    friend auto operator<=>(const BiIndex&, const BiIndex&) = default;
    friend bool operator==(const BiIndex&, const BiIndex&) = default;
};

std::ostream& operator<<(std::ostream& os, const BiIndex& b);

/// Element of Λ(V*_C) = ⊕ Λ^{p,q} in the basis dz_I ∧ dz̄_J, n = complex dimension.
class BigradedElement {
public:
    using Terms = std::map<BiIndex, Gaussian>;

    BigradedElement() = default;
    explicit BigradedElement(int n);

    static BigradedElement basis(int n, const MultiIndex& I, const MultiIndex& J, Gaussian c = Gaussian(1));
    static BigradedElement scalar(int n, Gaussian c);

    int n() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Gaussian coefficient(const MultiIndex& I, const MultiIndex& J) const;

    void add_term(const BiIndex& b, const Gaussian& c);

    /// Homogeneous bidegree (p, q); throws when the element mixes bidegrees or is zero.
    std::pair<int, int> bidegree() const;
    bool is_bihomogeneous() const;

    BigradedElement& operator+=(const BigradedElement& o);
    BigradedElement& operator-=(const BigradedElement& o);
    BigradedElement& operator*=(const Gaussian& s);
    friend BigradedElement operator+(BigradedElement a, const BigradedElement& b) { return a += b; }
    friend BigradedElement operator-(BigradedElement a, const BigradedElement& b) { return a -= b; }
    friend BigradedElement operator-(BigradedElement a) { return a *= Gaussian(-1); }
    friend BigradedElement operator*(const Gaussian& s, BigradedElement a) { return a *= s; }
    friend BigradedElement operator*(BigradedElement a, const Gaussian& s) { return a *= s; }
    friend bool operator==(const BigradedElement& a, const BigradedElement& b) = default;

    void check_n(const BigradedElement& o) const;

private:
    int n_ = 0;
    Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const BigradedElement& u);

/// Form on the real 2n-dimensional space written in the ordered coframe
/// (x_1*, y_1*, …, x_n*, y_n*), i.e. real index 2j-1 is x_j*, 2j is y_j*.
/// Coefficients are complex; the form is real when all of them are.
using RealForm = ExteriorElement<Gaussian>;

bool is_real_form(const RealForm& u);

BigradedElement wedge(const BigradedElement& u, const BigradedElement& v);

/// dx_j = ½(dz_j + dz̄_j), dy_j = (1/2i)(dz_j - dz̄_j), extended multiplicatively.
BigradedElement to_complex_basis(const RealForm& u);
/// dz_j = dx_j + i dy_j, dz̄_j = dx_j - i dy_j.
RealForm to_real_basis(const BigradedElement& v);

/// π^{p,q}
BigradedElement project_bidegree(const BigradedElement& u, int p, int q);

/// Complex conjugation: c dz_I∧dz̄_J ↦ c̄ (-1)^{|I||J|} dz_J∧dz̄_I.
BigradedElement conjugate(const BigradedElement& u);

/// Hermitian form h_{jk} = h(e_j, e_k) on C^n, h_{jk} = conj(h_{kj}).
class HermitianForm {
public:
    explicit HermitianForm(GaussianMatrix h);
    static HermitianForm euclidean(int n);

    int n() const { return static_cast<int>(h_.rows()); }
    const GaussianMatrix& matrix() const { return h_; }
    bool is_positive_definite() const;
    /// Throws std::domain_error unless positive definite.
    void require_positive_definite() const;

    /// S_h = Re h as a symmetric form on V_R in the real basis (e_1, i e_1, …).
    RationalMatrix real_part_matrix() const;
    /// S_h*: the induced metric on V_R* in the coframe (x_1*, y_1*, …).
    MetricSpec dual_real_metric() const;

private:
    GaussianMatrix h_;
};

/// ω_h = (i/2) Σ h_{jk} dz_j ∧ dz̄_k.
BigradedElement associated_form(const HermitianForm& h);

/// ⟨u, v⟩ = (g*⊗Id)(u, v̄): Hermitian, linear in u.
Gaussian hermitian_inner(const BigradedElement& u, const BigradedElement& v, const HermitianForm& h);

/// ℂ-linear extension of the real star of S_h* with orientation dx_1∧dy_1∧…;
/// maps Λ^{p,q} to Λ^{n-q,n-p}.
BigradedElement complex_star(const BigradedElement& u, const HermitianForm& h);

/// dV of S_h* in the standard orientation, written in the complex basis.
BigradedElement hermitian_volume_element(const HermitianForm& h);

/// C = Σ i^{p-q} π^{p,q}
BigradedElement weil_apply(const BigradedElement& u);

/// Verdict of ω_h^n / n! == dV_{S_h*}, computed exactly.
bool wirtinger_volume_check(const HermitianForm& h);

}  // namespace hodge
