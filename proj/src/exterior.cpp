#include "hodge/exterior.hpp"

namespace hodge {

MetricSpec::MetricSpec(RationalMatrix gram) : gram_(std::move(gram)) {
    if (!gram_.is_square()) throw std::invalid_argument("metric gram matrix must be square");
    if (!gram_.is_symmetric()) throw std::invalid_argument("metric gram matrix must be symmetric");
    if (sylvester(gram_) != Definiteness::positive)
        throw std::invalid_argument("metric gram matrix must be positive definite");
    det_ = hodge::determinant(gram_);
}

MetricSpec MetricSpec::euclidean(int m) { return MetricSpec(RationalMatrix::identity(static_cast<std::size_t>(m))); }

bool MetricSpec::is_orthonormal() const { return gram_ == RationalMatrix::identity(gram_.rows()); }

Rational MetricSpec::basis_inner(const MultiIndex& I, const MultiIndex& J) const {
    if (I.degree() != J.degree()) return Rational{};
    if (I.empty()) return Rational{1};
    std::vector<std::size_t> rs, cs;
    for (int i : I) rs.push_back(static_cast<std::size_t>(i - 1));
    for (int j : J) cs.push_back(static_cast<std::size_t>(j - 1));
    if (rs.size() == 1) return gram_(rs[0], cs[0]);
    return hodge::determinant(gram_.submatrix(rs, cs));
}

RationalMatrix MetricSpec::exterior_gram(int p) const {
    auto basis = multi_indices(dim(), p);
    RationalMatrix G(basis.size(), basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a; b < basis.size(); ++b) {
            G(a, b) = basis_inner(basis[a], basis[b]);
            G(b, a) = G(a, b);
        }
    return G;
}

OrientationSpec::OrientationSpec(int sign) : sign_(sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("orientation sign must be +1 or -1");
}

MetricSpec dual_metric(const RationalMatrix& g) {
    if (!g.is_square() || !g.is_symmetric()) throw std::invalid_argument("dual metric needs a symmetric matrix");
    auto inv = try_inverse(g);
    if (!inv) throw std::domain_error("dual metric of a singular form");
    return MetricSpec(*inv);
}

std::optional<Rational> volume_scale(const MetricSpec& g) { return exact_sqrt(g.determinant()); }

ExteriorElement<Rational> volume_element(const MetricSpec& g, const OrientationSpec& o) {
    auto s = volume_scale(g);
    if (!s) throw std::domain_error("metric determinant " + g.determinant().str() + " is not a rational square");
    return ExteriorElement<Rational>::top(g.dim(), Rational(o.sign()) / *s);
}

RationalMatrix star_matrix_unnormalized(const MetricSpec& g, const OrientationSpec& o, int p) {
    const int m = g.dim();
    auto src = multi_indices(m, p);
    auto dst = multi_indices(m, m - p);
    std::map<MultiIndex, std::size_t> pos;
    for (std::size_t k = 0; k < dst.size(); ++k) pos[dst[k]] = k;
    RationalMatrix S(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        auto image = hodge_star_scaled(ExteriorElement<Rational>::basis(m, src[j]), g, o).unnormalized;
        for (const auto& [K, c] : image.terms()) S(pos.at(K), j) = c;
    }
    return S;
}

}  // namespace hodge
