#pragma once

// Reference computations used to cross-check the library.  They share no
// code with it beyond the scalar types: forms are plain maps from sorted index
// vectors, signs come from counting inversions, determinants from the Leibniz
// sum, and inner products from an LDLᵀ change of basis.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "hodge/exterior.hpp"
#include "hodge/rational.hpp"

namespace oracle {

using hodge::Gaussian;
using hodge::Rational;

template <class F>
using Form = std::map<std::vector<int>, F>;

/// Sign of the permutation sorting `v`; 0 when an entry repeats.
inline int perm_sign(const std::vector<int>& v) {
    int inversions = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            if (v[i] == v[j]) return 0;
            if (v[i] > v[j]) ++inversions;
        }
    return inversions % 2 ? -1 : 1;
}

template <class F>
Form<F> monomial(std::vector<int> idx, const F& c) {
    Form<F> f;
    if (!c.is_zero()) f.emplace(std::move(idx), c);
    return f;
}

template <class F>
void add(Form<F>& f, const std::vector<int>& idx, const F& c) {
    if (c.is_zero()) return;
    F& slot = f[idx];
    slot += c;
    if (slot.is_zero()) f.erase(idx);
}

template <class F>
Form<F> wedge(const Form<F>& a, const Form<F>& b) {
    Form<F> out;
    for (const auto& [I, x] : a)
        for (const auto& [J, y] : b) {
            std::vector<int> cat = I;
            cat.insert(cat.end(), J.begin(), J.end());
            int s = perm_sign(cat);
            if (s == 0) continue;
            std::sort(cat.begin(), cat.end());
            F c = x * y;
            if (s < 0) c = -c;
            add(out, cat, c);
        }
    return out;
}

template <class F>
Form<F> from_lib(const hodge::ExteriorElement<F>& u) {
    Form<F> f;
    for (const auto& [I, c] : u.terms()) f[I.indices()] = c;
    return f;
}

template <class F>
hodge::ExteriorElement<F> to_lib(int m, const Form<F>& f) {
    hodge::ExteriorElement<F> u(m);
    for (const auto& [I, c] : f) u.add_term(hodge::MultiIndex(I), c);
    return u;
}

/// Leibniz-formula determinant; fine for n ≤ 7.
template <class F>
F det(const std::vector<std::vector<F>>& a) {
    const std::size_t n = a.size();
    if (n == 0) return F(1);
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    F total(0);
    do {
        F term(perm_sign(p));
        for (std::size_t i = 0; i < n && !term.is_zero(); ++i) term *= a[i][p[i]];
        total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long count = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask)
        if (__builtin_popcount(mask) == k) ++count;
    return count;
}

/// g = L D Lᵀ with L unit lower triangular.  Requires g symmetric positive definite.
struct LDL {
    std::vector<std::vector<Rational>> L;
    std::vector<Rational> D;
};

inline LDL ldl(const std::vector<std::vector<Rational>>& g) {
    const std::size_t n = g.size();
    LDL r{std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)), std::vector<Rational>(n)};
    for (std::size_t j = 0; j < n; ++j) {
        Rational d = g[j][j];
        for (std::size_t k = 0; k < j; ++k) d -= r.L[j][k] * r.L[j][k] * r.D[k];
        r.D[j] = d;
        r.L[j][j] = Rational(1);
        for (std::size_t i = j + 1; i < n; ++i) {
            Rational s = g[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= r.L[i][k] * r.L[j][k] * r.D[k];
            r.L[i][j] = s / d;
        }
    }
    return r;
}

/// ⟨u, v⟩ for the metric g on covectors, computed by rewriting both forms in
/// the orthogonal coframe f = L⁻¹ e (so e_i = Σ_k L_ik f_k and ⟨f_k, f_l⟩ = δ_kl D_k).
template <class F>
F change_of_basis_inner(const Form<F>& u, const Form<F>& v, const std::vector<std::vector<Rational>>& g) {
    auto [L, D] = ldl(g);
    const int m = static_cast<int>(g.size());
    auto rewrite = [&](const Form<F>& w) {
        Form<F> out;
        for (const auto& [I, c] : w) {
            Form<F> prod = monomial<F>({}, c);
            for (int i : I) {
                Form<F> one;
                for (int k = 1; k <= m; ++k) add(one, std::vector<int>{k}, F(L[i - 1][k - 1]));
                prod = wedge(prod, one);
            }
            for (const auto& [K, x] : prod) add(out, K, x);
        }
        return out;
    };
    Form<F> a = rewrite(u), b = rewrite(v);
    F total(0);
    for (const auto& [K, x] : a) {
        auto it = b.find(K);
        if (it == b.end()) continue;
        F weight(1);
        for (int k : K) weight *= F(D[k - 1]);
        total += x * it->second * weight;
    }
    return total;
}

/// Random small rational: numerator in [-lim, lim], denominator in [1, den].
inline Rational random_rational(std::mt19937& rng, int lim = 5, int den = 4) {
    std::uniform_int_distribution<int> num(-lim, lim), d(1, den);
    return Rational(num(rng), d(rng));
}

inline Gaussian random_gaussian(std::mt19937& rng, int lim = 3, int den = 3) {
    return Gaussian(random_rational(rng, lim, den), random_rational(rng, lim, den));
}

/// Random lower-triangular A with nonzero diagonal.
inline std::vector<std::vector<Rational>> random_triangular(std::mt19937& rng, int m) {
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m));
    std::uniform_int_distribution<int> pos(1, 4), den(1, 3);
    for (int i = 0; i < m; ++i) {
        a[i][i] = Rational(pos(rng), den(rng));
        for (int j = 0; j < i; ++j) a[i][j] = random_rational(rng, 3, 3);
    }
    return a;
}

inline std::vector<std::vector<Rational>> gram_of(const std::vector<std::vector<Rational>>& a) {
    const std::size_t m = a.size();
    std::vector<std::vector<Rational>> g(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) g[i][j] += a[i][k] * a[j][k];
    return g;
}

/// Random symmetric positive definite matrix with (generically) non-square determinant.
inline std::vector<std::vector<Rational>> random_metric(std::mt19937& rng, int m) {
    auto g = gram_of(random_triangular(rng, m));
    std::uniform_int_distribution<int> bump(1, 5);
    for (int i = 0; i < m; ++i) g[i][i] += Rational(bump(rng), 7);
    return g;
}

/// Random SPD matrix A Aᵀ, whose determinant is a rational square.
inline std::vector<std::vector<Rational>> random_square_det_metric(std::mt19937& rng, int m) {
    return gram_of(random_triangular(rng, m));
}

inline hodge::RationalMatrix to_matrix(const std::vector<std::vector<Rational>>& rows) {
    return hodge::RationalMatrix::from_rows(rows);
}

/// All increasing index vectors of length p from 1..m.
inline std::vector<std::vector<int>> subsets(int m, int p) {
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        if (__builtin_popcount(mask) != p) continue;
        std::vector<int> s;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) s.push_back(i + 1);
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

template <class F>
Form<F> random_homogeneous(std::mt19937& rng, int m, int p, F (*gen)(std::mt19937&, int, int)) {
    Form<F> f;
    std::bernoulli_distribution keep(0.7);
    for (const auto& I : subsets(m, p))
        if (keep(rng)) add(f, I, gen(rng, 4, 3));
    return f;
}

inline Rational rational_gen(std::mt19937& rng, int lim, int den) { return random_rational(rng, lim, den); }
inline Gaussian gaussian_gen(std::mt19937& rng, int lim, int den) { return random_gaussian(rng, lim, den); }

}  // namespace oracle
