#include "hodge/flat_torus.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hodge {

std::vector<Mode> modes_in_box(int m, int bound) {
    if (m < 1 || bound < 0) throw std::invalid_argument("modes_in_box needs m >= 1 and bound >= 0");
    std::vector<Mode> out;
    Mode k(m, -bound);
    while (true) {
        out.push_back(k);
        int i = m - 1;
        while (i >= 0 && k[i] == bound) {
            k[i] = -bound;
            --i;
        }
        if (i < 0) break;
        ++k[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// FourierForm

FourierForm::FourierForm(int m) : m_(m) {
    if (m < 1) throw std::invalid_argument("torus dimension must be positive");
}

ExteriorElement<Gaussian> FourierForm::coefficient(const Mode& k) const {
    auto it = modes_.find(k);
    return it == modes_.end() ? ExteriorElement<Gaussian>(m_) : it->second;
}

void FourierForm::add_mode(const Mode& k, const ExteriorElement<Gaussian>& c) {
    if (static_cast<int>(k.size()) != m_) throw std::invalid_argument("frequency vector has wrong length");
    if (c.dim() != m_) throw std::invalid_argument("coefficient dimension mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = modes_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) modes_.erase(it);
    }
}

bool FourierForm::is_real() const {
    for (const auto& [k, c] : modes_) {
        Mode neg(k.size());
        std::transform(k.begin(), k.end(), neg.begin(), std::negate<>());
        if (!(coefficient(neg) == conjugate(c))) return false;
    }
    return true;
}

FourierForm& FourierForm::operator+=(const FourierForm& o) {
    if (m_ != o.m_) throw std::invalid_argument("torus dimension mismatch");
    for (const auto& [k, c] : o.modes_) add_mode(k, c);
    return *this;
}

FourierForm& FourierForm::operator-=(const FourierForm& o) {
    if (m_ != o.m_) throw std::invalid_argument("torus dimension mismatch");
    for (const auto& [k, c] : o.modes_) add_mode(k, -c);
    return *this;
}

Gaussian l2_inner(const FourierForm& u, const FourierForm& v, const MetricSpec& g) {
    if (u.m() != v.m()) throw std::invalid_argument("torus dimension mismatch");
    Gaussian acc;
    for (const auto& [k, a] : u.modes()) {
        auto b = v.coefficient(k);
        if (!b.is_zero()) acc += inner_product(a, conjugate(b), g);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// RealTorusModel

RealTorusModel::RealTorusModel(int m) : RealTorusModel(m, MetricSpec::euclidean(m)) {}

RealTorusModel::RealTorusModel(int m, MetricSpec g) : m_(m), g_(std::move(g)), basis_(all_multi_indices(m)) {
    if (g_.dim() != m) throw std::invalid_argument("metric dimension mismatch");
    for (std::size_t a = 0; a < basis_.size(); ++a) index_[basis_[a]] = a;
    gram_ = GaussianMatrix(basis_.size(), basis_.size());
    std::size_t offset = 0;
    for (int p = 0; p <= m; ++p) {
        auto block = g_.exterior_gram(p);
        for (std::size_t a = 0; a < block.rows(); ++a)
            for (std::size_t b = 0; b < block.cols(); ++b) gram_(offset + a, offset + b) = Gaussian(block(a, b));
        offset += block.rows();
    }
    gram_inv_ = inverse(gram_);
}

std::vector<Gaussian> RealTorusModel::to_vector(const ExteriorElement<Gaussian>& u) const {
    if (u.dim() != m_) throw std::invalid_argument("coefficient dimension mismatch");
    std::vector<Gaussian> v(size());
    for (const auto& [I, c] : u.terms()) v[index_.at(I)] = c;
    return v;
}

ExteriorElement<Gaussian> RealTorusModel::from_vector(const std::vector<Gaussian>& v) const {
    ExteriorElement<Gaussian> u(m_);
    for (std::size_t a = 0; a < v.size(); ++a) u.add_term(basis_[a], v[a]);
    return u;
}

GaussianMatrix RealTorusModel::adjoint(const GaussianMatrix& a) const { return gram_inv_ * a.conj_transpose() * gram_; }

GaussianMatrix RealTorusModel::d_block(const Mode& k) const {
    if (static_cast<int>(k.size()) != m_) throw std::invalid_argument("frequency vector has wrong length");
    GaussianMatrix D(size(), size());
    for (std::size_t a = 0; a < basis_.size(); ++a) {
        const auto& I = basis_[a];
        for (int j = 1; j <= m_; ++j) {
            if (k[j - 1] == 0 || I.contains(j)) continue;
            MultiIndex J{j};
            Gaussian c(Rational(0), Rational(k[j - 1]));
            if (shuffle_sign(J, I) < 0) c = -c;
            D(index_.at(J.merged(I)), a) += c;
        }
    }
    return D;
}

GaussianMatrix RealTorusModel::dstar_block(const Mode& k) const { return adjoint(d_block(k)); }

std::pair<GaussianMatrix, Rational> RealTorusModel::star_scaled() const {
    GaussianMatrix S(size(), size());
    OrientationSpec o(1);
    for (std::size_t a = 0; a < basis_.size(); ++a) {
        auto image = hodge_star_scaled(ExteriorElement<Gaussian>::basis(m_, basis_[a]), g_, o).unnormalized;
        for (const auto& [K, c] : image.terms()) S(index_.at(K), a) = c;
    }
    return {S, g_.determinant()};
}

GaussianMatrix RealTorusModel::dstar_formula_block(const Mode& k) const {
    auto [S, det] = star_scaled();
    GaussianMatrix out = S * d_block(k) * S * Gaussian(det.inverse());
    for (std::size_t a = 0; a < basis_.size(); ++a) {
        int p = basis_[a].degree();
        int e = m_ * (p + 1) + 1;
        if (e % 2)
            for (std::size_t r = 0; r < size(); ++r) out(r, a) = -out(r, a);
    }
    return out;
}

GaussianMatrix RealTorusModel::laplacian_block(const Mode& k) const {
    auto D = d_block(k);
    auto Ds = adjoint(D);
    return D * Ds + Ds * D;
}

Rational RealTorusModel::frequency_norm2(const Mode& k) const {
    Rational acc;
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j)
            if (k[i] && k[j]) acc += g_.gram()(i, j) * Rational(k[i]) * Rational(k[j]);
    return acc;
}

GaussianMatrix RealTorusModel::degree_projector(int p) const {
    GaussianMatrix P(size(), size());
    for (std::size_t a = 0; a < basis_.size(); ++a)
        if (basis_[a].degree() == p) P(a, a) = Gaussian(1);
    return P;
}

namespace {

template <class BlockFn>
FourierForm apply_per_mode(const FourierForm& f, const RealTorusModel& model, BlockFn block) {
    FourierForm out(f.m());
    for (const auto& [k, c] : f.modes()) out.add_mode(k, model.from_vector(block(k) * model.to_vector(c)));
    return out;
}

}  // namespace

FourierForm exterior_d(const FourierForm& f) {
    RealTorusModel model(f.m());
    return apply_per_mode(f, model, [&](const Mode& k) { return model.d_block(k); });
}

FourierForm codifferential(const FourierForm& f, const MetricSpec& g) {
    RealTorusModel model(f.m(), g);
    return apply_per_mode(f, model, [&](const Mode& k) { return model.dstar_block(k); });
}

LaplacianFlavor parse_laplacian_flavor(const std::string& s) {
    if (s == "Delta" || s == "full" || s == "d") return LaplacianFlavor::full;
    if (s == "Delta'" || s == "holomorphic" || s == "d'") return LaplacianFlavor::holomorphic;
    if (s == "Delta''" || s == "antiholomorphic" || s == "d''") return LaplacianFlavor::antiholomorphic;
    throw std::invalid_argument("unknown laplacian flavor: " + s);
}

FourierForm laplacian(const FourierForm& f, LaplacianFlavor flavor, const MetricSpec& g) {
    if (flavor == LaplacianFlavor::full) {
        RealTorusModel model(f.m(), g);
        return apply_per_mode(f, model, [&](const Mode& k) { return model.laplacian_block(k); });
    }
    if (f.m() % 2 != 0) throw std::invalid_argument("Delta' and Delta'' need a complex structure (even real dimension)");
    if (!g.is_orthonormal()) throw std::invalid_argument("Delta' and Delta'' are implemented for the Euclidean metric only");
    ComplexTorusModel model(f.m() / 2);
    OperatorLabel label;
    label.kind = flavor == LaplacianFlavor::holomorphic ? OperatorKind::laplacian_prime : OperatorKind::laplacian_dprime;
    FourierForm out(f.m());
    for (const auto& [k, c] : f.modes()) {
        auto block = model.block(label, k).matrix;
        auto v = block * model.to_vector(to_complex_basis(c));
        out.add_mode(k, to_real_basis(model.from_vector(v)));
    }
    return out;
}

FourierForm laplacian(const FourierForm& f, LaplacianFlavor flavor) {
    return laplacian(f, flavor, MetricSpec::euclidean(f.m()));
}

HodgeDecomposition hodge_decompose(const FourierForm& f, const MetricSpec& g) {
    RealTorusModel model(f.m(), g);
    HodgeDecomposition out{FourierForm(f.m()), FourierForm(f.m()), FourierForm(f.m()), FourierForm(f.m()),
                           FourierForm(f.m())};
    for (const auto& [k, c] : f.modes()) {
        auto lap = model.laplacian_block(k);
        auto v = model.to_vector(c);
        if (lap.is_zero()) {
            out.harmonic.add_mode(k, c);
            continue;
        }
        auto inv = try_inverse(lap);
        // On a flat torus Δ is |k|² times the identity, so a nonzero block is invertible.
        if (!inv) throw std::logic_error("Laplacian block is singular but nonzero");
        auto D = model.d_block(k);
        auto Ds = model.adjoint(D);
        auto x = *inv * v;
        auto a = Ds * x;
        auto b = D * x;
        out.primitive_exact.add_mode(k, model.from_vector(a));
        out.primitive_coexact.add_mode(k, model.from_vector(b));
        out.exact.add_mode(k, model.from_vector(D * a));
        out.coexact.add_mode(k, model.from_vector(Ds * b));
    }
    return out;
}

HodgeDecomposition hodge_decompose(const FourierForm& f) { return hodge_decompose(f, MetricSpec::euclidean(f.m())); }

std::vector<long long> betti_numbers(int m, int max_mode) {
    RealTorusModel model(m);
    std::vector<long long> out(m + 1, 0);
    for (const auto& k : modes_in_box(m, max_mode)) {
        auto lap = model.laplacian_block(k);
        for (int p = 0; p <= m; ++p) {
            std::vector<std::size_t> idx;
            for (std::size_t a = 0; a < model.size(); ++a)
                if (model.basis()[a].degree() == p) idx.push_back(a);
            auto block = lap.submatrix(idx, idx);
            out[p] += static_cast<long long>(idx.size() - rank(block));
        }
    }
    return out;
}

std::vector<std::vector<long long>> hodge_numbers(int n, int max_mode) {
    ComplexTorusModel model(n);
    std::vector<std::vector<long long>> out(n + 1, std::vector<long long>(n + 1, 0));
    OperatorLabel label;
    label.kind = OperatorKind::laplacian;
    for (const auto& k : modes_in_box(2 * n, max_mode)) {
        auto lap = model.block(label, k).matrix.to_dense();
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q) {
                std::vector<std::size_t> idx;
                for (std::size_t a = 0; a < model.size(); ++a)
                    if (model.basis()[a].p() == p && model.basis()[a].q() == q) idx.push_back(a);
                out[p][q] += static_cast<long long>(idx.size() - rank(lap.submatrix(idx, idx)));
            }
    }
    return out;
}

namespace {

/// Basis of harmonic forms of degree p at k = 0, as elements.
std::vector<ExteriorElement<Gaussian>> harmonic_basis(const RealTorusModel& model, int p) {
    auto lap = model.laplacian_block(Mode(model.m(), 0));
    std::vector<std::size_t> idx;
    for (std::size_t a = 0; a < model.size(); ++a)
        if (model.basis()[a].degree() == p) idx.push_back(a);
    auto ker = kernel(lap.submatrix(idx, idx));
    std::vector<ExteriorElement<Gaussian>> out;
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        std::vector<Gaussian> v(model.size());
        for (std::size_t r = 0; r < idx.size(); ++r) v[idx[r]] = ker(r, c);
        out.push_back(model.from_vector(v));
    }
    return out;
}

Gaussian integrate_top(const ExteriorElement<Gaussian>& u) {
    return u.coefficient(ExteriorElement<Gaussian>::top(u.dim()).terms().begin()->first);
}

}  // namespace

RationalMatrix poincare_pairing(int m, int p) {
    if (p < 0 || p > m) throw std::out_of_range("degree out of range");
    RealTorusModel model(m);
    auto left = harmonic_basis(model, p);
    auto right = harmonic_basis(model, m - p);
    RationalMatrix P(left.size(), right.size());
    for (std::size_t a = 0; a < left.size(); ++a)
        for (std::size_t b = 0; b < right.size(); ++b) {
            Gaussian v = integrate_top(wedge(left[a], right[b]));
            if (!v.is_real()) throw std::logic_error("pairing of real forms is not real");
            P(a, b) = v.re();
        }
    return P;
}

GaussianMatrix serre_pairing(int n, int p, int q) {
    if (p < 0 || q < 0 || p > n || q > n) throw std::out_of_range("bidegree out of range");
    auto build = [n](int a, int b) {
        std::vector<BigradedElement> out;
        for (const auto& I : multi_indices(n, a))
            for (const auto& J : multi_indices(n, b)) out.push_back(BigradedElement::basis(n, I, J));
        return out;
    };
    auto left = build(p, q);
    auto right = build(n - p, n - q);
    GaussianMatrix P(left.size(), right.size());
    for (std::size_t a = 0; a < left.size(); ++a)
        for (std::size_t b = 0; b < right.size(); ++b) P(a, b) = integrate_top(to_real_basis(wedge(left[a], right[b])));
    return P;
}

// ---------------------------------------------------------------------------
// Operator labels

std::string OperatorLabel::str() const {
    std::string s;
    switch (kind) {
        case OperatorKind::d: s = "d"; break;
        case OperatorKind::d_prime: s = "d'"; break;
        case OperatorKind::d_dprime: s = "d''"; break;
        case OperatorKind::laplacian: s = "Delta"; break;
        case OperatorKind::laplacian_prime: s = "Delta'"; break;
        case OperatorKind::laplacian_dprime: s = "Delta''"; break;
        case OperatorKind::lefschetz: s = "L"; break;
        case OperatorKind::wedge_dz: s = "wedge"; break;
        case OperatorKind::wedge_dzbar: s = "wedgebar"; break;
        case OperatorKind::partial: s = "partial"; break;
        case OperatorKind::partial_bar: s = "partialbar"; break;
        case OperatorKind::projector: s = "pi"; break;
        case OperatorKind::star: s = "star"; break;
        case OperatorKind::weil: s = "C"; break;
    }
    if (adjoint) s += "*";
    switch (kind) {
        case OperatorKind::wedge_dz:
        case OperatorKind::wedge_dzbar:
        case OperatorKind::partial:
        case OperatorKind::partial_bar: s += ":" + std::to_string(j); break;
        case OperatorKind::projector: s += ":" + std::to_string(p) + "," + std::to_string(q); break;
        default: break;
    }
    return s;
}

OperatorLabel OperatorLabel::parse(const std::string& text) {
    OperatorLabel out;
    std::string head = text, arg;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        head = text.substr(0, colon);
        arg = text.substr(colon + 1);
    }
    if (!head.empty() && head.back() == '*') {
        out.adjoint = true;
        head.pop_back();
    }
    static const std::map<std::string, OperatorKind> kinds{
        {"d", OperatorKind::d},
        {"d'", OperatorKind::d_prime},
        {"d''", OperatorKind::d_dprime},
        {"Delta", OperatorKind::laplacian},
        {"Delta'", OperatorKind::laplacian_prime},
        {"Delta''", OperatorKind::laplacian_dprime},
        {"L", OperatorKind::lefschetz},
        {"wedge", OperatorKind::wedge_dz},
        {"wedgebar", OperatorKind::wedge_dzbar},
        {"partial", OperatorKind::partial},
        {"partialbar", OperatorKind::partial_bar},
        {"pi", OperatorKind::projector},
        {"star", OperatorKind::star},
        {"C", OperatorKind::weil},
    };
    auto it = kinds.find(head);
    if (it == kinds.end()) throw std::invalid_argument("unsupported operator label: " + text);
    out.kind = it->second;
    try {
        switch (out.kind) {
            case OperatorKind::wedge_dz:
            case OperatorKind::wedge_dzbar:
            case OperatorKind::partial:
            case OperatorKind::partial_bar:
                if (arg.empty()) throw std::invalid_argument("missing index");
                out.j = std::stoi(arg);
                break;
            case OperatorKind::projector: {
                auto comma = arg.find(',');
                if (comma == std::string::npos) throw std::invalid_argument("missing bidegree");
                out.p = std::stoi(arg.substr(0, comma));
                out.q = std::stoi(arg.substr(comma + 1));
                break;
            }
            default:
                if (!arg.empty()) throw std::invalid_argument("unexpected argument");
        }
    } catch (const std::logic_error&) {
        throw std::invalid_argument("malformed operator label: " + text);
    }
    return out;
}

// ---------------------------------------------------------------------------
// ComplexTorusModel

ComplexTorusModel::ComplexTorusModel(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("complex dimension must be positive");
    for (int l = 0; l <= 2 * n; ++l)
        for (int p = std::min(l, n); p >= std::max(0, l - n); --p)
            for (const auto& I : multi_indices(n, p))
                for (const auto& J : multi_indices(n, l - p)) basis_.push_back({I, J});
    for (std::size_t a = 0; a < basis_.size(); ++a) index_[basis_[a]] = a;
    const std::size_t N = basis_.size();

    // Real expansions of the bigraded basis (columns of R) and bigraded
    // expansions of the real basis (columns of Q); Q R must be the identity.
    const auto real_basis = all_multi_indices(2 * n);
    std::map<MultiIndex, std::size_t> real_index;
    for (std::size_t a = 0; a < real_basis.size(); ++a) real_index[real_basis[a]] = a;
    GaussianMatrix R(N, N), Q(N, N);
    for (std::size_t a = 0; a < N; ++a) {
        auto re = to_real_basis(BigradedElement::basis(n, basis_[a].holo, basis_[a].antiholo));
        for (const auto& [I, c] : re.terms()) R(real_index.at(I), a) = c;
        auto cx = to_complex_basis(RealForm::basis(2 * n, real_basis[a]));
        for (const auto& [b, c] : cx.terms()) Q(index_.at(b), a) = c;
    }
    if (!(Q * R == GaussianMatrix::identity(N))) throw std::logic_error("basis change is not invertible");

    // Hermitian Gram matrix: Euclidean real metric, so G = Rᵀ conj(R).
    GaussianMatrix G = R.transpose() * R.conjugate();
    gram_.resize(N);
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) {
            if (a == b) {
                gram_[a] = G(a, a);
            } else if (!G(a, b).is_zero()) {
                throw std::logic_error("bigraded basis is not orthogonal");
            }
        }

    for (int j = 1; j <= n; ++j) {
        GaussianSparse W(N, N), Wb(N, N);
        for (std::size_t a = 0; a < N; ++a) {
            const auto& b = basis_[a];
            MultiIndex J{j};
            if (!b.holo.contains(j)) {
                Gaussian c(shuffle_sign(J, b.holo));
                W.add(index_.at({J.merged(b.holo), b.antiholo}), a, c);
            }
            if (!b.antiholo.contains(j)) {
                // dz̄_j ∧ dz_I ∧ dz̄_K = (−1)^{|I|} dz_I ∧ dz̄_j ∧ dz̄_K
                int s = shuffle_sign(J, b.antiholo) * ((b.p() % 2) ? -1 : 1);
                Wb.add(index_.at({b.holo, J.merged(b.antiholo)}), a, Gaussian(s));
            }
        }
        W.finalize();
        Wb.finalize();
        wedge_dz_.push_back(std::move(W));
        wedge_dzbar_.push_back(std::move(Wb));
    }

    // L = ω ∧ with ω = (i/2) Σ dz_j ∧ dz̄_j, built from the bigraded wedge product.
    BigradedElement omega = associated_form(HermitianForm::euclidean(n));
    lefschetz_ = GaussianSparse(N, N);
    for (std::size_t a = 0; a < N; ++a) {
        auto image = wedge(omega, BigradedElement::basis(n, basis_[a].holo, basis_[a].antiholo));
        for (const auto& [b, c] : image.terms()) lefschetz_.add(index_.at(b), a, c);
    }
    lefschetz_.finalize();

    // Complex star: the real Euclidean star transported through the basis change.
    GaussianMatrix S_real(N, N);
    MetricSpec euclid = MetricSpec::euclidean(2 * n);
    for (std::size_t a = 0; a < N; ++a) {
        auto image = hodge_star(RealForm::basis(2 * n, real_basis[a]), euclid, OrientationSpec(1));
        for (const auto& [I, c] : image.terms()) S_real(real_index.at(I), a) = c;
    }
    GaussianMatrix S = Q * S_real * R;
    star_ = GaussianSparse::from_dense(S);
    star_inverse_ = GaussianSparse::from_dense(inverse(S));

    std::vector<Gaussian> weil(N);
    for (std::size_t a = 0; a < N; ++a) weil[a] = Gaussian::i_pow(basis_[a].p() - basis_[a].q());
    weil_ = GaussianSparse::diagonal(weil);
    identity_ = GaussianSparse::identity(N);
}

std::vector<Gaussian> ComplexTorusModel::to_vector(const BigradedElement& u) const {
    if (u.n() != n_) throw std::invalid_argument("complex dimension mismatch");
    std::vector<Gaussian> v(size());
    for (const auto& [b, c] : u.terms()) v[index_.at(b)] = c;
    return v;
}

BigradedElement ComplexTorusModel::from_vector(const std::vector<Gaussian>& v) const {
    BigradedElement u(n_);
    for (std::size_t a = 0; a < v.size(); ++a) u.add_term(basis_[a], v[a]);
    return u;
}

GaussianMatrix ComplexTorusModel::real_to_bigraded() const {
    const auto real_basis = all_multi_indices(2 * n_);
    GaussianMatrix Q(size(), size());
    for (std::size_t a = 0; a < real_basis.size(); ++a) {
        auto cx = to_complex_basis(RealForm::basis(2 * n_, real_basis[a]));
        for (const auto& [b, c] : cx.terms()) Q(index_.at(b), a) = c;
    }
    return Q;
}

GaussianSparse ComplexTorusModel::adjoint(const GaussianSparse& a) const {
    GaussianSparse t = a.conj_transpose();
    t.transform([&](std::size_t i, std::size_t j, Gaussian& v) {
        v *= gram_[j];
        v /= gram_[i];
    });
    return t;
}

GaussianSparse ComplexTorusModel::projector(int p, int q) const {
    std::vector<Gaussian> d(size());
    for (std::size_t a = 0; a < size(); ++a)
        if (basis_[a].p() == p && basis_[a].q() == q) d[a] = Gaussian(1);
    return GaussianSparse::diagonal(d);
}

GaussianSparse ComplexTorusModel::contains_projector(int j, bool holomorphic) const {
    std::vector<Gaussian> d(size());
    for (std::size_t a = 0; a < size(); ++a) {
        const auto& idx = holomorphic ? basis_[a].holo : basis_[a].antiholo;
        if (idx.contains(j)) d[a] = Gaussian(1);
    }
    return GaussianSparse::diagonal(d);
}

GaussianSparse ComplexTorusModel::degree_sign() const {
    std::vector<Gaussian> d(size());
    for (std::size_t a = 0; a < size(); ++a) d[a] = Gaussian(basis_[a].degree() % 2 ? -1 : 1);
    return GaussianSparse::diagonal(d);
}

Gaussian ComplexTorusModel::partial_symbol(const Mode& k, int j) {
    return {Rational(k.at(2 * j - 1), 2), Rational(k.at(2 * j - 2), 2)};
}

Gaussian ComplexTorusModel::partial_bar_symbol(const Mode& k, int j) {
    return {Rational(-k.at(2 * j - 1), 2), Rational(k.at(2 * j - 2), 2)};
}

ModeBlockOperator ComplexTorusModel::block(const OperatorLabel& label, const Mode& k) const {
    if (static_cast<int>(k.size()) != 2 * n_)
        throw std::invalid_argument("frequency vector must have length 2n");
    auto check_j = [&] {
        if (label.j < 1 || label.j > n_) throw std::out_of_range("operator index out of range: " + label.str());
    };
    auto dprime = [&] {
        GaussianSparse out(size(), size());
        for (int j = 1; j <= n_; ++j) out += partial_symbol(k, j) * wedge_dz(j);
        return out;
    };
    auto ddprime = [&] {
        GaussianSparse out(size(), size());
        for (int j = 1; j <= n_; ++j) out += partial_bar_symbol(k, j) * wedge_dzbar(j);
        return out;
    };
    auto laplace = [&](const GaussianSparse& A) {
        GaussianSparse As = adjoint(A);
        return A * As + As * A;
    };

    GaussianSparse M;
    switch (label.kind) {
        case OperatorKind::d: M = dprime() + ddprime(); break;
        case OperatorKind::d_prime: M = dprime(); break;
        case OperatorKind::d_dprime: M = ddprime(); break;
        case OperatorKind::laplacian: M = laplace(dprime() + ddprime()); break;
        case OperatorKind::laplacian_prime: M = laplace(dprime()); break;
        case OperatorKind::laplacian_dprime: M = laplace(ddprime()); break;
        case OperatorKind::lefschetz: M = lefschetz_; break;
        case OperatorKind::wedge_dz: check_j(); M = wedge_dz(label.j); break;
        case OperatorKind::wedge_dzbar: check_j(); M = wedge_dzbar(label.j); break;
        case OperatorKind::partial: check_j(); M = partial_symbol(k, label.j) * identity_; break;
        case OperatorKind::partial_bar: check_j(); M = partial_bar_symbol(k, label.j) * identity_; break;
        case OperatorKind::projector: M = projector(label.p, label.q); break;
        case OperatorKind::star: M = star_; break;
        case OperatorKind::weil: M = weil_; break;
    }
    if (label.adjoint) M = adjoint(M);
    return {label, k, std::move(M)};
}

ModeBlockOperator operator_block(const std::string& label, const Mode& k, int n) {
    ComplexTorusModel model(n);
    return model.block(OperatorLabel::parse(label), k);
}

// ---------------------------------------------------------------------------
// Kähler identity suite

bool KahlerSuiteReport::all_passed() const {
    return std::all_of(relations.begin(), relations.end(), [](const RelationResult& r) { return r.passed(); });
}

namespace {

class ResidualLog {
public:
    std::size_t declare(std::string relation, std::string tag, bool mode_independent) {
        RelationResult r;
        r.relation = std::move(relation);
        r.tag = std::move(tag);
        r.mode_independent = mode_independent;
        results_.push_back(std::move(r));
        return results_.size() - 1;
    }

    void record(std::size_t id, const GaussianSparse& residual, const Mode* k) {
        auto& r = results_[id];
        if (k && (last_.size() <= id || last_[id] != *k)) {
            if (last_.size() <= id) last_.resize(id + 1);
            last_[id] = *k;
            ++r.modes_checked;
        }
        Rational v = residual.max_abs2();
        if (v > r.max_residual || (!v.is_zero() && !r.worst_mode)) {
            r.max_residual = v;
            if (k) r.worst_mode = *k;
        }
    }

    std::vector<RelationResult> take() { return std::move(results_); }

private:
    std::vector<RelationResult> results_;
    std::vector<Mode> last_;
};

}  // namespace

KahlerSuiteReport kahler_identity_suite(int n, const std::vector<Mode>& modes) {
    ComplexTorusModel model(n);
    const std::size_t N = model.size();
    const Gaussian i = Gaussian::i();
    const Gaussian half_i(Rational(0), Rational(1, 2));
    ResidualLog log;

    // Pointwise (mode-independent) relations among ∧_j, ∧̄_j, L, ⋆, C.
    {
        std::vector<GaussianSparse> W, Wb, Ws, Wbs;
        for (int j = 1; j <= n; ++j) {
            W.push_back(model.wedge_dz(j));
            Wb.push_back(model.wedge_dzbar(j));
            Ws.push_back(model.adjoint(W.back()));
            Wbs.push_back(model.adjoint(Wb.back()));
        }
        auto ez3 = log.declare("wedge_j wedgebar_k* + wedgebar_k* wedge_j = 0", "ez3", true);
        auto ez33 = log.declare("wedgebar_j wedge_k* + wedge_k* wedgebar_j = 0", "ez33", true);
        auto r333 = log.declare("wedge_j* wedge_k + wedge_k wedge_j* = 2 delta_jk Id", "333", true);
        auto r333b = log.declare("wedgebar_j* wedgebar_k + wedgebar_k wedgebar_j* = 2 delta_jk Id", "333", true);
        auto r3a = log.declare("wedge_j*(dz_J dzb_K) = 0 for j not in J", "3A", true);
        auto r3aa = log.declare("wedgebar_j*(dz_J dzb_K) = 0 for j not in K", "3AA", true);
        auto r3b = log.declare("wedge_j*(dz_j dz_J dzb_K) = 2 dz_J dzb_K for j not in J", "3B", true);
        auto r3bb = log.declare("wedgebar_j*(dzb_j dz_J dzb_K) = 2 dz_J dzb_K for j not in K", "3BB", true);
        auto rL = log.declare("L = (i/2) sum_j wedge_j wedgebar_j", "commrel", true);
        auto rLs = log.declare("L* = -(i/2) sum_j wedgebar_j* wedge_j*", "commrel", true);
        auto rLstar = log.declare("L* = star^-1 L star", "deflandl", true);
        auto rCstar = log.declare("C star - star C = 0", "cstco", true);
        auto rww = log.declare("star star = C^2 = w", "weil", true);

        const GaussianSparse I = model.identity();
        GaussianSparse Lsum(N, N), Lssum(N, N);
        for (int a = 0; a < n; ++a) {
            const int j = a + 1;
            Lsum += W[a] * Wb[a];
            Lssum += Wbs[a] * Ws[a];
            GaussianSparse not_in_J = I - model.contains_projector(j, true);
            GaussianSparse not_in_K = I - model.contains_projector(j, false);
            log.record(r3a, Ws[a] * not_in_J, nullptr);
            log.record(r3aa, Wbs[a] * not_in_K, nullptr);
            log.record(r3b, Ws[a] * W[a] * not_in_J - Gaussian(2) * not_in_J, nullptr);
            log.record(r3bb, Wbs[a] * Wb[a] * not_in_K - Gaussian(2) * not_in_K, nullptr);
            for (int b = 0; b < n; ++b) {
                log.record(ez3, W[a] * Wbs[b] + Wbs[b] * W[a], nullptr);
                log.record(ez33, Wb[a] * Ws[b] + Ws[b] * Wb[a], nullptr);
                GaussianSparse delta = a == b ? Gaussian(2) * I : GaussianSparse(N, N);
                log.record(r333, Ws[a] * W[b] + W[b] * Ws[a] - delta, nullptr);
                log.record(r333b, Wbs[a] * Wb[b] + Wb[b] * Wbs[a] - delta, nullptr);
            }
        }
        const GaussianSparse& L = model.lefschetz();
        GaussianSparse Ls = model.adjoint(L);
        log.record(rL, L - half_i * Lsum, nullptr);
        log.record(rLs, Ls + half_i * Lssum, nullptr);
        log.record(rLstar, Ls - model.star_inverse() * L * model.star(), nullptr);
        log.record(rCstar, model.weil() * model.star() - model.star() * model.weil(), nullptr);
        GaussianSparse w = model.degree_sign();
        log.record(rww, model.star() * model.star() - w, nullptr);
        log.record(rww, model.weil() * model.weil() - w, nullptr);
    }

    // Per-mode relations.  Graded commutator [A,B] = AB − (−1)^{ab} BA.
    auto fikg3a = log.declare("[d''*, L] = i d'", "fikg3", false);
    auto fikg3b = log.declare("[d'*, L] = -i d''", "fikg3", false);
    auto fikg3c = log.declare("[L*, d''] = -i d'*", "fikg3", false);
    auto crel = log.declare("[L*, d'] = i d''*", "crel", false);
    auto fikg1a = log.declare("[d', d''*] = 0", "fikg1", false);
    auto fikg1b = log.declare("[d'', d'*] = 0", "fikg1", false);
    auto fikg2a = log.declare("Delta = 2 Delta'", "fikg2", false);
    auto fikg2b = log.declare("Delta = 2 Delta''", "fikg2", false);
    auto star_lap = log.declare("star Delta = Delta star", "lsc", false);
    auto pi_lap = log.declare("[Delta, pi^{p,q}] = 0 for all p,q", "bciokg", false);
    auto lap_comm = log.declare("Delta commutes with d, d', d'', d'*, d''*, L, L*", "bciokg", false);
    auto dddsq = log.declare("d'^2 = d''^2 = 0, d'd'' + d''d' = 0", "dddsq", false);
    auto dsq = log.declare("d^2 = 0, (d*)^2 = 0", "drcdef", false);
    auto r111 = log.declare("partial_j* = -partialbar_j, partialbar_j* = -partial_j", "111", false);
    auto dps_formula = log.declare("d'* = -star d'' star", "fohg", false);
    auto dpps_formula = log.declare("d''* = -star d' star", "fohg", false);
    auto ds_formula = log.declare("d* = (-1)^{m(p+1)+1} star d star", "d*", false);
    auto eigen = log.declare("Delta = |k|^2 Id", "itslap", false);

    const GaussianSparse& L = model.lefschetz();
    const GaussianSparse Ls = model.adjoint(L);
    const GaussianSparse& S = model.star();
    const GaussianSparse& I = model.identity();
    std::vector<GaussianSparse> projectors;
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) projectors.push_back(model.projector(p, q));

    for (const auto& k : modes) {
        if (static_cast<int>(k.size()) != 2 * n) throw std::invalid_argument("frequency vector must have length 2n");
        GaussianSparse Dp(N, N), Dpp(N, N);
        for (int j = 1; j <= n; ++j) {
            Gaussian dj = ComplexTorusModel::partial_symbol(k, j);
            Gaussian dbj = ComplexTorusModel::partial_bar_symbol(k, j);
            Dp += dj * model.wedge_dz(j);
            Dpp += dbj * model.wedge_dzbar(j);
            GaussianSparse P = dj * I, Pb = dbj * I;
            log.record(r111, model.adjoint(P) + Pb, &k);
            log.record(r111, model.adjoint(Pb) + P, &k);
        }
        GaussianSparse Dps = model.adjoint(Dp);
        GaussianSparse Dpps = model.adjoint(Dpp);
        GaussianSparse D = Dp + Dpp;
        GaussianSparse Ds = model.adjoint(D);
        GaussianSparse Lap = D * Ds + Ds * D;
        GaussianSparse Lap1 = Dp * Dps + Dps * Dp;
        GaussianSparse Lap2 = Dpp * Dpps + Dpps * Dpp;

        log.record(fikg3a, Dpps * L - L * Dpps - i * Dp, &k);
        log.record(fikg3b, Dps * L - L * Dps + i * Dpp, &k);
        log.record(fikg3c, Ls * Dpp - Dpp * Ls + i * Dps, &k);
        log.record(crel, Ls * Dp - Dp * Ls - i * Dpps, &k);
        log.record(fikg1a, Dp * Dpps + Dpps * Dp, &k);
        log.record(fikg1b, Dpp * Dps + Dps * Dpp, &k);
        log.record(fikg2a, Lap - Gaussian(2) * Lap1, &k);
        log.record(fikg2b, Lap - Gaussian(2) * Lap2, &k);
        log.record(star_lap, S * Lap - Lap * S, &k);
        for (const auto& P : projectors) log.record(pi_lap, Lap * P - P * Lap, &k);
        for (const GaussianSparse* A : std::initializer_list<const GaussianSparse*>{&D, &Dp, &Dpp, &Dps, &Dpps, &L, &Ls})
            log.record(lap_comm, Lap * *A - *A * Lap, &k);
        log.record(dddsq, Dp * Dp, &k);
        log.record(dddsq, Dpp * Dpp, &k);
        log.record(dddsq, Dp * Dpp + Dpp * Dp, &k);
        log.record(dsq, D * D, &k);
        log.record(dsq, Ds * Ds, &k);
        log.record(dps_formula, Dps + S * Dpp * S, &k);
        log.record(dpps_formula, Dpps + S * Dp * S, &k);
        // m = 2n is even, so (−1)^{m(p+1)+1} = −1 in every degree.
        log.record(ds_formula, Ds + S * D * S, &k);
        Rational k2;
        for (int c : k) k2 += Rational(c) * Rational(c);
        log.record(eigen, Lap - Gaussian(k2) * I, &k);
    }

    KahlerSuiteReport report;
    report.n = n;
    report.modes = modes;
    report.relations = log.take();
    return report;
}

KahlerSuiteReport kahler_identity_suite(int n, int max_mode) {
    return kahler_identity_suite(n, modes_in_box(2 * n, max_mode));
}

}  // namespace hodge
