#include "hodge/degeneration.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace hodge {

namespace {

constexpr double kTolerance = 1e-9;

Eigen::MatrixXcd to_eigen(const std::vector<RingVector>& vs, const std::vector<std::size_t>& coords) {
    Eigen::MatrixXcd m(coords.size(), vs.size());
    for (std::size_t c = 0; c < vs.size(); ++c)
        for (std::size_t r = 0; r < coords.size(); ++r) {
            const Gaussian& z = vs[c][coords[r]];
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = {z.re().to_double(), z.im().to_double()};
        }
    return m;
}

Eigen::MatrixXcd projector(const Eigen::MatrixXcd& b) {
    if (b.cols() == 0) return Eigen::MatrixXcd::Zero(b.rows(), b.rows());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(b);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(b.rows(), b.cols());
    return q * q.adjoint();
}

}  // namespace

ContractibilityVerdict contractibility_check(const IntersectionMatrix& M) {
    ContractibilityVerdict v;
    const int sign = (M.m % 2 == 0) ? 1 : -1;
    if (M.m < 1) throw std::invalid_argument("half-dimension m must be positive");
    if (!M.approximate) {
        if (!M.exact.is_square() || !M.exact.is_symmetric())
            throw std::invalid_argument("intersection matrix must be symmetric");
        if (M.exact.rows() == 0) throw std::invalid_argument("intersection matrix is empty");
        RationalMatrix twisted = M.exact * Rational(sign);
        v.method = "exact";
        v.minors = leading_minors(twisted);
        v.consistent = sylvester(twisted) == Definiteness::positive;
        return v;
    }
    const std::size_t r = M.approx.size();
    if (r == 0) throw std::invalid_argument("intersection matrix is empty");
    Eigen::MatrixXd a(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        if (M.approx[i].size() != r) throw std::invalid_argument("intersection matrix must be square");
        for (std::size_t j = 0; j < r; ++j) a(i, j) = sign * M.approx[i][j];
    }
    if (!a.isApprox(a.transpose(), kTolerance) && (a - a.transpose()).cwiseAbs().maxCoeff() > kTolerance)
        throw std::invalid_argument("intersection matrix must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    v.method = "approximate";
    v.min_eigenvalue = es.eigenvalues().minCoeff();
    v.consistent = v.min_eigenvalue > kTolerance;
    return v;
}

double gap_distance(const std::vector<RingVector>& a, const std::vector<RingVector>& b,
                    const std::vector<std::size_t>& coords) {
    Eigen::MatrixXcd d = projector(to_eigen(a, coords)) - projector(to_eigen(b, coords));
    if (d.rows() == 0) return 0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d);
    double g = es.eigenvalues().cwiseAbs().maxCoeff();
    return g < kTolerance ? 0.0 : g;
}

std::vector<Rational> dyadic_sequence(int count) {
    std::vector<Rational> out;
    Rational e(1);
    for (int j = 1; j <= count; ++j) {
        e *= Rational(1, 2);
        out.push_back(e);
    }
    return out;
}

bool PrimitiveLimitTrace::passed() const {
    return dims_constant && limit_dim_ok && monotone && polarization_definiteness == Definiteness::positive;
}

PrimitiveLimitTrace primitive_limit(const GradedRing& ring, const RingVector& M, const RingVector& L,
                                    const std::vector<Rational>& eps) {
    require_lefschetz_class(ring, M);
    require_lefschetz_class(ring, L);
    if (ring.n() % 2 != 0) throw std::invalid_argument("middle degree 2m needs an even complex dimension");
    if (eps.empty()) throw std::invalid_argument("epsilon sequence is empty");
    for (std::size_t k = 0; k < eps.size(); ++k) {
        if (eps[k].sign() <= 0) throw std::invalid_argument("epsilon must be positive");
        if (k > 0 && !(eps[k] < eps[k - 1])) throw std::invalid_argument("epsilon sequence must be decreasing");
    }
    auto hl = hard_lefschetz_check(ring, L);
    if (!hl.passed())
        throw LefschetzFailure("hard Lefschetz fails for L at r = " + std::to_string(*hl.first_failure()));

    PrimitiveLimitTrace t;
    const int n = ring.n();
    t.m = n / 2;
    t.expected_dim = ring.betti(n) - (n >= 2 ? ring.betti(n - 2) : 0);
    auto coords = ring.indices_of_degree(n);

    t.hard_lefschetz_M = hard_lefschetz_check(ring, M).passed();
    t.limit_basis = primitive_subspace(ring, M, n);
    t.limit_dim_ok = !t.hard_lefschetz_M || static_cast<long long>(t.limit_basis.size()) == t.expected_dim;

    t.dims_constant = true;
    t.monotone = true;
    for (const auto& e : eps) {
        RingVector w = M;
        for (std::size_t i = 0; i < w.size(); ++i) w[i].add_product(Gaussian(e), L[i]);
        PrimitiveLimitStep s;
        s.eps = e;
        s.basis = primitive_subspace(ring, w, n);
        s.gap = gap_distance(s.basis, t.limit_basis, coords);
        if (static_cast<long long>(s.basis.size()) != t.expected_dim) t.dims_constant = false;
        if (!t.steps.empty() && s.gap > t.steps.back().gap + kTolerance) t.monotone = false;
        t.steps.push_back(std::move(s));
    }

    // C acts as the identity on (m,m)-classes, so Ψ̃ = Ψ = (−1)^m ∫ x y there.
    std::vector<RingVector> candidates;
    for (const auto& b : t.limit_basis) {
        if (!ring.is_bihomogeneous(b, t.m, t.m)) continue;
        RingVector bb = ring.conjugate(b);
        if (bb == b) {
            candidates.push_back(b);
            continue;
        }
        RingVector re(b.size()), im(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) {
            re[i] = b[i] + bb[i];
            im[i] = Gaussian::i() * (b[i] - bb[i]);
        }
        candidates.push_back(std::move(re));
        candidates.push_back(std::move(im));
    }
    if (!candidates.empty()) {
        GaussianMatrix cols(ring.dim(), candidates.size());
        for (std::size_t c = 0; c < candidates.size(); ++c)
            for (std::size_t r = 0; r < ring.dim(); ++r) cols(r, c) = candidates[c][r];
        for (auto c : independent_columns(cols)) t.polarization_basis.push_back(candidates[c]);
    }
    const std::size_t d = t.polarization_basis.size();
    t.polarization = RationalMatrix(d, d);
    const Gaussian sign((t.m % 2 == 0) ? 1 : -1);
    bool real = true;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            Gaussian v = sign * ring.integrate(ring.multiply(t.polarization_basis[a], t.polarization_basis[b]));
            if (!v.is_real()) real = false;
            t.polarization(a, b) = v.re();
        }
    t.polarization_definiteness = (real && d > 0 && t.polarization.is_symmetric()) ? sylvester(t.polarization)
                                                                                   : Definiteness::indefinite_or_degenerate;
    return t;
}

}  // namespace hodge
