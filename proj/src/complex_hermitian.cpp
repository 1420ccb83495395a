#include "hodge/complex_hermitian.hpp"

#include <stdexcept>

namespace hodge {

std::ostream& operator<<(std::ostream& os, const BiIndex& b) {
    return os << "dz" << b.holo << "dzb" << b.antiholo;
}

BigradedElement::BigradedElement(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative complex dimension");
}

BigradedElement BigradedElement::basis(int n, const MultiIndex& I, const MultiIndex& J, Gaussian c) {
    BigradedElement e(n);
    e.add_term({I, J}, c);
    return e;
}

BigradedElement BigradedElement::scalar(int n, Gaussian c) { return basis(n, {}, {}, std::move(c)); }

Gaussian BigradedElement::coefficient(const MultiIndex& I, const MultiIndex& J) const {
    auto it = terms_.find({I, J});
    return it == terms_.end() ? Gaussian(0) : it->second;
}

void BigradedElement::add_term(const BiIndex& b, const Gaussian& c) {
    b.holo.check_dimension(n_);
    b.antiholo.check_dimension(n_);
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(b, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

std::pair<int, int> BigradedElement::bidegree() const {
    if (terms_.empty()) throw std::domain_error("zero element has no bidegree");
    auto first = terms_.begin()->first;
    for (const auto& [b, c] : terms_)
        if (b.p() != first.p() || b.q() != first.q()) throw std::domain_error("element mixes bidegrees");
    return {first.p(), first.q()};
}

bool BigradedElement::is_bihomogeneous() const {
    if (terms_.empty()) return true;
    auto first = terms_.begin()->first;
    for (const auto& [b, c] : terms_)
        if (b.p() != first.p() || b.q() != first.q()) return false;
    return true;
}

void BigradedElement::check_n(const BigradedElement& o) const {
    if (n_ != o.n_) throw std::invalid_argument("complex dimension mismatch");
}

BigradedElement& BigradedElement::operator+=(const BigradedElement& o) {
    check_n(o);
    for (const auto& [b, c] : o.terms_) add_term(b, c);
    return *this;
}

BigradedElement& BigradedElement::operator-=(const BigradedElement& o) {
    check_n(o);
    for (const auto& [b, c] : o.terms_) add_term(b, -c);
    return *this;
}

BigradedElement& BigradedElement::operator*=(const Gaussian& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [b, c] : terms_) c *= s;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const BigradedElement& u) {
    if (u.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [b, c] : u.terms()) {
        if (!first) os << " + ";
        first = false;
        os << '(' << c << ')' << b;
    }
    return os;
}

bool is_real_form(const RealForm& u) {
    for (const auto& [I, c] : u.terms())
        if (!c.is_real()) return false;
    return true;
}

BigradedElement wedge(const BigradedElement& u, const BigradedElement& v) {
    u.check_n(v);
    BigradedElement out(u.n());
    for (const auto& [a, x] : u.terms())
        for (const auto& [b, y] : v.terms()) {
            if (!a.holo.disjoint(b.holo) || !a.antiholo.disjoint(b.antiholo)) continue;
            // dz_I dz̄_J dz_K dz̄_L: move dz_K left past dz̄_J, then sort both halves.
            int sign = ((a.q() * b.p()) % 2) ? -1 : 1;
            sign *= shuffle_sign(a.holo, b.holo) * shuffle_sign(a.antiholo, b.antiholo);
            Gaussian c = x * y;
            if (sign < 0) c = -c;
            out.add_term({a.holo.merged(b.holo), a.antiholo.merged(b.antiholo)}, c);
        }
    return out;
}

BigradedElement to_complex_basis(const RealForm& u) {
    if (u.dim() % 2 != 0) throw std::invalid_argument("real form dimension must be even");
    const int n = u.dim() / 2;
    const Gaussian half(Rational(1, 2));
    const Gaussian minus_half_i(Rational(0), Rational(-1, 2));
    BigradedElement out(n);
    for (const auto& [I, c] : u.terms()) {
        BigradedElement prod = BigradedElement::scalar(n, c);
        for (int r : I) {
            int j = (r + 1) / 2;
            BigradedElement dz = BigradedElement::basis(n, {j}, {});
            BigradedElement dzb = BigradedElement::basis(n, {}, {j});
            BigradedElement image = (r % 2 == 1) ? half * (dz + dzb) : minus_half_i * (dz - dzb);
            prod = wedge(prod, image);
        }
        out += prod;
    }
    return out;
}

RealForm to_real_basis(const BigradedElement& v) {
    const int n = v.n();
    const Gaussian i = Gaussian::i();
    RealForm out(2 * n);
    for (const auto& [b, c] : v.terms()) {
        RealForm prod = RealForm::scalar(2 * n, c);
        auto factor = [&](int j, bool holomorphic) {
            RealForm dx = RealForm::basis(2 * n, {2 * j - 1});
            RealForm dy = RealForm::basis(2 * n, {2 * j});
            return holomorphic ? dx + i * dy : dx - i * dy;
        };
        for (int j : b.holo) prod = wedge(prod, factor(j, true));
        for (int j : b.antiholo) prod = wedge(prod, factor(j, false));
        out += prod;
    }
    return out;
}

BigradedElement project_bidegree(const BigradedElement& u, int p, int q) {
    BigradedElement out(u.n());
    for (const auto& [b, c] : u.terms())
        if (b.p() == p && b.q() == q) out.add_term(b, c);
    return out;
}

BigradedElement conjugate(const BigradedElement& u) {
    BigradedElement out(u.n());
    for (const auto& [b, c] : u.terms()) {
        Gaussian v = c.conj();
        if ((b.p() * b.q()) % 2) v = -v;
        out.add_term({b.antiholo, b.holo}, v);
    }
    return out;
}

HermitianForm::HermitianForm(GaussianMatrix h) : h_(std::move(h)) {
    if (!h_.is_square()) throw std::invalid_argument("hermitian form must be square");
    if (!h_.is_hermitian()) throw std::invalid_argument("form is not hermitian: h_jk != conj(h_kj)");
}

HermitianForm HermitianForm::euclidean(int n) { return HermitianForm(GaussianMatrix::identity(static_cast<std::size_t>(n))); }

bool HermitianForm::is_positive_definite() const { return sylvester(h_) == Definiteness::positive; }

void HermitianForm::require_positive_definite() const {
    if (!is_positive_definite()) throw std::domain_error("hermitian form is not positive definite");
}

RationalMatrix HermitianForm::real_part_matrix() const {
    // h_jk = A_jk + i B_jk; with a_j = s_j + i t_j,
    // Re h(v,w) = Σ A_jk (s_j s'_k + t_j t'_k) + B_jk (s_j t'_k - t_j s'_k).
    const std::size_t n = h_.rows();
    RationalMatrix S(2 * n, 2 * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const Rational& A = h_(j, k).re();
            const Rational& B = h_(j, k).im();
            S(2 * j, 2 * k) = A;
            S(2 * j + 1, 2 * k + 1) = A;
            S(2 * j, 2 * k + 1) = B;
            S(2 * j + 1, 2 * k) = -B;
        }
    return S;
}

MetricSpec HermitianForm::dual_real_metric() const {
    require_positive_definite();
    return dual_metric(real_part_matrix());
}

BigradedElement associated_form(const HermitianForm& h) {
    const int n = h.n();
    const Gaussian half_i(Rational(0), Rational(1, 2));
    BigradedElement out(n);
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) out.add_term({{j}, {k}}, half_i * h.matrix()(j - 1, k - 1));
    return out;
}

Gaussian hermitian_inner(const BigradedElement& u, const BigradedElement& v, const HermitianForm& h) {
    u.check_n(v);
    if (u.n() != h.n()) throw std::invalid_argument("hermitian form dimension mismatch");
    MetricSpec g = h.dual_real_metric();
    return inner_product(to_real_basis(u), to_real_basis(conjugate(v)), g);
}

BigradedElement complex_star(const BigradedElement& u, const HermitianForm& h) {
    if (u.n() != h.n()) throw std::invalid_argument("hermitian form dimension mismatch");
    MetricSpec g = h.dual_real_metric();
    return to_complex_basis(hodge_star(to_real_basis(u), g, OrientationSpec(1)));
}

BigradedElement hermitian_volume_element(const HermitianForm& h) {
    auto dv = volume_element(h.dual_real_metric(), OrientationSpec(1));
    return to_complex_basis(to_gaussian(dv));
}

BigradedElement weil_apply(const BigradedElement& u) {
    BigradedElement out(u.n());
    for (const auto& [b, c] : u.terms()) out.add_term(b, c * Gaussian::i_pow(b.p() - b.q()));
    return out;
}

bool wirtinger_volume_check(const HermitianForm& h) {
    h.require_positive_definite();
    const int n = h.n();
    BigradedElement omega = associated_form(h);
    BigradedElement power = BigradedElement::scalar(n, Gaussian(1));
    Rational factorial(1);
    for (int k = 1; k <= n; ++k) {
        power = wedge(power, omega);
        factorial *= Rational(k);
    }
    RealForm lhs = to_real_basis(power * Gaussian(factorial.inverse()));
    RealForm rhs = to_gaussian(volume_element(h.dual_real_metric(), OrientationSpec(1)));
    return lhs == rhs;
}

}  // namespace hodge
