#include "hodge/lefschetz_ring.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "hodge/complex_hermitian.hpp"

namespace hodge {

namespace {

int parity_sign(long long e) { return (e % 2 == 0) ? 1 : -1; }

using SparseMap = std::map<std::size_t, Gaussian>;

void accumulate(SparseMap& acc, std::size_t idx, const Gaussian& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = acc.try_emplace(idx, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

std::vector<std::pair<std::size_t, Gaussian>> flatten(const SparseMap& m) { return {m.begin(), m.end()}; }

GaussianMatrix columns(const std::vector<RingVector>& vs, std::size_t dim) {
    GaussianMatrix m(dim, vs.size());
    for (std::size_t c = 0; c < vs.size(); ++c)
        for (std::size_t r = 0; r < dim; ++r) m(r, c) = vs[c][r];
    return m;
}

std::size_t span_rank(const std::vector<RingVector>& vs, std::size_t dim) {
    if (vs.empty()) return 0;
    return rank(columns(vs, dim));
}

Gaussian bilinear(const RingVector& x, const GaussianMatrix& a, const RingVector& y) {
    Gaussian acc;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        Gaussian row;
        for (std::size_t j = 0; j < y.size(); ++j)
            if (!y[j].is_zero() && !a(i, j).is_zero()) row.add_product(a(i, j), y[j]);
        acc.add_product(x[i], row);
    }
    return acc;
}

RingVector scaled(RingVector v, const Gaussian& s) {
    for (auto& x : v) x *= s;
    return v;
}

RingVector plus(RingVector a, const RingVector& b, const Gaussian& sb = Gaussian(1)) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i].add_product(sb, b[i]);
    return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// GradedRing

GradedRing GradedRing::certify(const RingSpec& spec) {
    GradedRing R;
    R.name_ = spec.name;
    R.n_ = spec.n;
    if (spec.n < 0) throw RingCertificationError("basis", "complex dimension must be non-negative");
    if (spec.basis.empty()) throw RingCertificationError("basis", "ring basis is empty");
    R.basis_ = spec.basis;
    const std::size_t N = R.basis_.size();
    std::optional<std::size_t> unit;
    for (std::size_t a = 0; a < N; ++a) {
        const auto& b = R.basis_[a];
        if (b.name.empty()) throw RingCertificationError("basis", "basis element with empty name");
        if (b.p < 0 || b.q < 0 || b.p > spec.n || b.q > spec.n)
            throw RingCertificationError("basis", "bidegree of '" + b.name + "' out of range");
        if (!R.index_.emplace(b.name, a).second)
            throw RingCertificationError("basis", "duplicate basis name '" + b.name + "'");
        if (b.p == 0 && b.q == 0) {
            if (unit) throw RingCertificationError("unit", "more than one element of bidegree (0,0)");
            unit = a;
        }
    }
    if (!unit) throw RingCertificationError("unit", "no element of bidegree (0,0)");
    R.unit_ = *unit;

    auto to_sparse = [&](const std::vector<RingTerm>& terms, const std::string& where) {
        SparseMap m;
        for (const auto& t : terms) {
            auto it = R.index_.find(t.name);
            if (it == R.index_.end()) throw RingCertificationError("basis", "unknown basis name '" + t.name + "' in " + where);
            accumulate(m, it->second, t.coeff);
        }
        return flatten(m);
    };

    R.table_.assign(N, std::vector<Sparse>(N));
    std::vector<std::vector<char>> given(N, std::vector<char>(N, 0));
    for (const auto& e : spec.mult) {
        auto ia = R.index_.find(e.a), ib = R.index_.find(e.b);
        if (ia == R.index_.end() || ib == R.index_.end())
            throw RingCertificationError("basis", "unknown basis name in product " + e.a + "*" + e.b);
        auto prod = to_sparse(e.out, "product " + e.a + "*" + e.b);
        std::size_t a = ia->second, b = ib->second;
        if (given[a][b] && R.table_[a][b] != prod)
            throw RingCertificationError("mult", "conflicting entries for " + e.a + "*" + e.b);
        R.table_[a][b] = std::move(prod);
        given[a][b] = 1;
    }
    for (std::size_t a = 0; a < N; ++a) {
        Sparse ea{{a, Gaussian(1)}};
        for (auto [x, y] : {std::pair{R.unit_, a}, std::pair{a, R.unit_}}) {
            if (given[x][y] && R.table_[x][y] != ea)
                throw RingCertificationError("unit", "1*" + R.basis_[a].name + " must equal " + R.basis_[a].name);
            R.table_[x][y] = ea;
            given[x][y] = 1;
        }
    }
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = a + 1; b < N; ++b) {
            int s = parity_sign(static_cast<long long>(R.basis_[a].degree()) * R.basis_[b].degree());
            Sparse swapped = R.table_[a][b];
            for (auto& t : swapped) t.second *= Gaussian(s);
            if (given[a][b] && given[b][a]) {
                if (R.table_[b][a] != swapped)
                    throw RingCertificationError("graded-commutativity", R.basis_[b].name + "*" + R.basis_[a].name +
                                                                             " != (-1)^{deg deg} " + R.basis_[a].name +
                                                                             "*" + R.basis_[b].name);
            } else if (given[a][b]) {
                R.table_[b][a] = std::move(swapped);
            } else if (given[b][a]) {
                Sparse back = R.table_[b][a];
                for (auto& t : back) t.second *= Gaussian(s);
                R.table_[a][b] = std::move(back);
            }
        }
    for (std::size_t a = 0; a < N; ++a) {
        // e_a * e_a for odd degree must vanish by graded commutativity.
        if (R.basis_[a].degree() % 2 == 1 && !R.table_[a][a].empty())
            throw RingCertificationError("graded-commutativity", "odd element " + R.basis_[a].name + " squares to nonzero");
    }

    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b)
            for (const auto& [c, v] : R.table_[a][b]) {
                if (R.basis_[c].p != R.basis_[a].p + R.basis_[b].p || R.basis_[c].q != R.basis_[a].q + R.basis_[b].q)
                    throw RingCertificationError("bidegree", "product " + R.basis_[a].name + "*" + R.basis_[b].name +
                                                                 " has a component " + R.basis_[c].name +
                                                                 " of the wrong bidegree");
            }

    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b)
            for (std::size_t c = 0; c < N; ++c) {
                SparseMap left, right;
                for (const auto& [x, u] : R.table_[a][b])
                    for (const auto& [y, w] : R.table_[x][c]) accumulate(left, y, u * w);
                for (const auto& [x, u] : R.table_[b][c])
                    for (const auto& [y, w] : R.table_[a][x]) accumulate(right, y, u * w);
                if (left != right)
                    throw RingCertificationError("associativity", "(" + R.basis_[a].name + "*" + R.basis_[b].name + ")*" +
                                                                      R.basis_[c].name + " != " + R.basis_[a].name + "*(" +
                                                                      R.basis_[b].name + "*" + R.basis_[c].name + ")");
            }

    R.integral_ = RingVector(N);
    for (const auto& [idx, v] : to_sparse(spec.integral, "integral")) {
        if (R.basis_[idx].degree() != 2 * spec.n)
            throw RingCertificationError("integral", "integral is nonzero on '" + R.basis_[idx].name +
                                                         "' outside top degree");
        R.integral_[idx] = v;
    }

    R.conj_.resize(N);
    for (std::size_t a = 0; a < N; ++a) {
        auto it = spec.conj.find(R.basis_[a].name);
        R.conj_[a] = it == spec.conj.end() ? Sparse{{a, Gaussian(1)}} : to_sparse(it->second, "conj");
    }
    for (const auto& [name, terms] : spec.conj)
        if (!R.index_.count(name)) throw RingCertificationError("basis", "unknown basis name '" + name + "' in conj");

    GaussianMatrix pairing(N, N);
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) {
            Gaussian s;
            for (const auto& [c, v] : R.table_[a][b]) s.add_product(v, R.integral_[c]);
            pairing(a, b) = s;
        }
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) {
            int s = parity_sign(static_cast<long long>(R.basis_[a].degree()) * R.basis_[b].degree());
            if (!(pairing(a, b) == Gaussian(s) * pairing(b, a)))
                throw RingCertificationError("poincare", "integral pairing is not graded-symmetric");
        }
    if (rank(pairing) != N) throw RingCertificationError("poincare", "Poincare pairing is degenerate");

    for (std::size_t a = 0; a < N; ++a) {
        for (const auto& [c, v] : R.conj_[a])
            if (R.basis_[c].p != R.basis_[a].q || R.basis_[c].q != R.basis_[a].p)
                throw RingCertificationError("conjugation", "conj(" + R.basis_[a].name + ") does not have the swapped bidegree");
    }
    for (std::size_t a = 0; a < N; ++a) {
        RingVector e(N);
        e[a] = Gaussian(1);
        if (R.conjugate(R.conjugate(e)) != e)
            throw RingCertificationError("conjugation", "conjugation is not an involution on " + R.basis_[a].name);
        if (!(R.integrate(R.conjugate(e)) == R.integrate(e).conj()))
            throw RingCertificationError("conjugation", "integral does not commute with conjugation on " + R.basis_[a].name);
        for (std::size_t b = 0; b < N; ++b) {
            RingVector f(N);
            f[b] = Gaussian(1);
            if (R.conjugate(R.multiply(e, f)) != R.multiply(R.conjugate(e), R.conjugate(f)))
                throw RingCertificationError("conjugation", "conjugation is not multiplicative on " + R.basis_[a].name +
                                                                "*" + R.basis_[b].name);
        }
    }
    return R;
}

std::size_t GradedRing::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("unknown basis element '" + name + "'");
    return it->second;
}

RingVector GradedRing::element(const std::string& name, Gaussian c) const {
    RingVector v(dim());
    v[index_of(name)] = std::move(c);
    return v;
}

RingVector GradedRing::to_dense(const Sparse& s) const {
    RingVector v(dim());
    for (const auto& [i, c] : s) v[i] = c;
    return v;
}

RingVector GradedRing::multiply(const RingVector& a, const RingVector& b) const {
    if (a.size() != dim() || b.size() != dim()) throw std::invalid_argument("ring element has wrong length");
    RingVector out(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (b[j].is_zero()) continue;
            Gaussian ab = a[i] * b[j];
            for (const auto& [c, v] : table_[i][j]) out[c].add_product(ab, v);
        }
    }
    return out;
}

RingVector GradedRing::power(const RingVector& a, int k) const {
    if (k < 0) throw std::invalid_argument("negative power");
    RingVector out = unit();
    for (int i = 0; i < k; ++i) out = multiply(out, a);
    return out;
}

Gaussian GradedRing::integrate(const RingVector& a) const {
    if (a.size() != dim()) throw std::invalid_argument("ring element has wrong length");
    Gaussian s;
    for (std::size_t i = 0; i < dim(); ++i)
        if (!a[i].is_zero() && !integral_[i].is_zero()) s.add_product(a[i], integral_[i]);
    return s;
}

RingVector GradedRing::conjugate(const RingVector& a) const {
    if (a.size() != dim()) throw std::invalid_argument("ring element has wrong length");
    RingVector out(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (a[i].is_zero()) continue;
        Gaussian c = a[i].conj();
        for (const auto& [j, v] : conj_[i]) out[j].add_product(c, v);
    }
    return out;
}

std::vector<std::size_t> GradedRing::indices_of_degree(int l) const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < dim(); ++a)
        if (basis_[a].degree() == l) out.push_back(a);
    return out;
}

std::vector<std::size_t> GradedRing::indices_of_bidegree(int p, int q) const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < dim(); ++a)
        if (basis_[a].p == p && basis_[a].q == q) out.push_back(a);
    return out;
}

long long GradedRing::betti(int l) const { return static_cast<long long>(indices_of_degree(l).size()); }

long long GradedRing::hodge_number(int p, int q) const { return static_cast<long long>(indices_of_bidegree(p, q).size()); }

bool GradedRing::is_bihomogeneous(const RingVector& a, int p, int q) const {
    for (std::size_t i = 0; i < dim(); ++i)
        if (!a[i].is_zero() && (basis_[i].p != p || basis_[i].q != q)) return false;
    return true;
}

RingVector GradedRing::project(const RingVector& a, int p, int q) const {
    RingVector out(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        if (basis_[i].p == p && basis_[i].q == q) out[i] = a[i];
    return out;
}

GaussianMatrix GradedRing::multiplication_matrix(const RingVector& a, const std::vector<std::size_t>& source,
                                                 const std::vector<std::size_t>& target) const {
    GaussianMatrix m(target.size(), source.size());
    for (std::size_t c = 0; c < source.size(); ++c) {
        RingVector e(dim());
        e[source[c]] = Gaussian(1);
        RingVector img = multiply(a, e);
        for (std::size_t r = 0; r < target.size(); ++r) m(r, c) = img[target[r]];
    }
    return m;
}

GaussianMatrix GradedRing::conjugation_matrix() const {
    GaussianMatrix k(dim(), dim());
    for (std::size_t a = 0; a < dim(); ++a)
        for (const auto& [b, v] : conj_[a]) k(b, a) = v;
    return k;
}

GaussianMatrix GradedRing::cup_form(const RingVector& w) const {
    GaussianMatrix m(dim(), dim());
    for (std::size_t a = 0; a < dim(); ++a) {
        RingVector wa = multiply(w, to_dense({{a, Gaussian(1)}}));
        for (std::size_t b = 0; b < dim(); ++b) {
            Gaussian s;
            for (std::size_t i = 0; i < dim(); ++i) {
                if (wa[i].is_zero()) continue;
                for (const auto& [c, v] : table_[i][b])
                    if (!integral_[c].is_zero()) s.add_product(wa[i] * v, integral_[c]);
            }
            m(a, b) = s;
        }
    }
    return m;
}

std::string GradedRing::format(const RingVector& a) const {
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        const Gaussian& c = a[i];
        std::string term;
        bool negative = false;
        if (c.is_one()) {
            term = basis_[i].name;
        } else if (c == Gaussian(-1)) {
            term = basis_[i].name;
            negative = true;
        } else if (c.is_real()) {
            negative = c.re().sign() < 0;
            term = (negative ? (-c.re()).str() : c.re().str()) + "*" + basis_[i].name;
        } else {
            term = "(" + c.str() + ")*" + basis_[i].name;
        }
        if (out.empty()) {
            out = negative ? "-" + term : term;
        } else {
            out += negative ? " - " + term : " + " + term;
        }
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Builtins

namespace {

std::string power_name(const std::string& base, int k) {
    if (k == 0) return "1";
    if (k == 1) return base;
    return base + "^" + std::to_string(k);
}

GradedRing certify_or_die(const RingSpec& spec) { return GradedRing::certify(spec); }

BuiltinRing two_class_surface(const std::string& name) {
    RingSpec s;
    s.name = name;
    s.n = 2;
    s.basis = {{"1", 0, 0}, {"a", 1, 1}, {"b", 1, 1}, {"pt", 2, 2}};
    s.mult = {{"a", "a", {}}, {"b", "b", {}}, {"a", "b", {{"pt", Gaussian(1)}}}};
    s.integral = {{"pt", Gaussian(1)}};
    GradedRing r = certify_or_die(s);
    RingVector omega = plus(r.element("a"), r.element("b"));
    return {std::move(r), std::move(omega)};
}

std::string dz_name(const MultiIndex& I, const MultiIndex& J) {
    std::string s;
    for (int j : I) s += (s.empty() ? "" : "^") + std::string("dz") + std::to_string(j);
    for (int j : J) s += (s.empty() ? "" : "^") + std::string("dzb") + std::to_string(j);
    return s.empty() ? "1" : s;
}

}  // namespace

BuiltinRing projective_space(int n) {
    if (n < 1) throw std::invalid_argument("projective_space needs n >= 1");
    RingSpec s;
    s.name = "projective_space(" + std::to_string(n) + ")";
    s.n = n;
    for (int k = 0; k <= n; ++k) s.basis.push_back({power_name("h", k), k, k});
    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b) {
            RingMultEntry e{power_name("h", a), power_name("h", b), {}};
            if (a + b <= n) e.out.push_back({power_name("h", a + b), Gaussian(1)});
            s.mult.push_back(std::move(e));
        }
    s.integral = {{power_name("h", n), Gaussian(1)}};
    GradedRing r = certify_or_die(s);
    RingVector omega = r.element("h");
    return {std::move(r), std::move(omega)};
}

BuiltinRing torus_ring(int n) {
    if (n < 1) throw std::invalid_argument("torus needs n >= 1");
    RingSpec s;
    s.name = "torus(" + std::to_string(n) + ")";
    s.n = n;
    std::vector<BiIndex> basis;
    for (int l = 0; l <= 2 * n; ++l)
        for (int p = std::min(l, n); p >= std::max(0, l - n); --p)
            for (const auto& I : multi_indices(n, p))
                for (const auto& J : multi_indices(n, l - p)) basis.push_back({I, J});
    for (const auto& b : basis) s.basis.push_back({dz_name(b.holo, b.antiholo), b.p(), b.q()});
    auto terms_of = [&](const BigradedElement& u) {
        std::vector<RingTerm> out;
        for (const auto& [b, c] : u.terms()) out.push_back({dz_name(b.holo, b.antiholo), c});
        return out;
    };
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a; b < basis.size(); ++b) {
            if (basis[a].degree() == 0 || basis[b].degree() == 0) continue;
            auto prod = wedge(BigradedElement::basis(n, basis[a].holo, basis[a].antiholo),
                              BigradedElement::basis(n, basis[b].holo, basis[b].antiholo));
            s.mult.push_back({s.basis[a].name, s.basis[b].name, terms_of(prod)});
        }
    MultiIndex all;
    for (int j = 1; j <= n; ++j) all = all.merged(MultiIndex{j});
    // Unit real volume: ∫ is the coefficient of dx_1∧dy_1∧…∧dx_n∧dy_n.
    RealForm top = to_real_basis(BigradedElement::basis(n, all, all));
    s.integral = {{dz_name(all, all), top.coefficient(all_multi_indices(2 * n).back())}};
    for (const auto& b : basis) {
        auto c = conjugate(BigradedElement::basis(n, b.holo, b.antiholo));
        s.conj[dz_name(b.holo, b.antiholo)] = terms_of(c);
    }
    GradedRing r = certify_or_die(s);
    RingVector omega(r.dim());
    const Gaussian half_i(Rational(0), Rational(1, 2));
    for (int j = 1; j <= n; ++j) omega[r.index_of(dz_name(MultiIndex{j}, MultiIndex{j}))] = half_i;
    return {std::move(r), std::move(omega)};
}

BuiltinRing quadric_surface() { return two_class_surface("quadric_surface"); }

BuiltinRing product_P1_P1() { return two_class_surface("product_P1_P1"); }

BuiltinRing blowup_P2() {
    RingSpec s;
    s.name = "blowup_P2";
    s.n = 2;
    s.basis = {{"1", 0, 0}, {"h", 1, 1}, {"e", 1, 1}, {"pt", 2, 2}};
    s.mult = {{"h", "h", {{"pt", Gaussian(1)}}}, {"e", "e", {{"pt", Gaussian(-1)}}}, {"h", "e", {}}};
    s.integral = {{"pt", Gaussian(1)}};
    GradedRing r = certify_or_die(s);
    RingVector omega = plus(r.element("h", Gaussian(2)), r.element("e"), Gaussian(-1));
    return {std::move(r), std::move(omega)};
}

BuiltinRing blowup_P3_point() {
    RingSpec s;
    s.name = "blowup_P3_point";
    s.n = 3;
    s.basis = {{"1", 0, 0}, {"h", 1, 1}, {"e", 1, 1}, {"h2", 2, 2}, {"e2", 2, 2}, {"pt", 3, 3}};
    s.mult = {{"h", "h", {{"h2", Gaussian(1)}}},  {"e", "e", {{"e2", Gaussian(1)}}}, {"h", "e", {}},
              {"h", "h2", {{"pt", Gaussian(1)}}}, {"e", "e2", {{"pt", Gaussian(1)}}}, {"h", "e2", {}},
              {"e", "h2", {}}};
    s.integral = {{"pt", Gaussian(1)}};
    GradedRing r = certify_or_die(s);
    RingVector omega = plus(r.element("h", Gaussian(2)), r.element("e"), Gaussian(-1));
    return {std::move(r), std::move(omega)};
}

BuiltinRing ring_builtin(const std::string& kind, int n) {
    if (kind == "projective_space") return projective_space(n);
    if (kind == "torus") return torus_ring(n);
    if (kind == "quadric_surface") return quadric_surface();
    if (kind == "blowup_P2") return blowup_P2();
    if (kind == "blowup_P3_point") return blowup_P3_point();
    if (kind == "product_P1_P1") return product_P1_P1();
    throw std::invalid_argument("unknown ring kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Hard Lefschetz

bool HardLefschetzReport::passed() const {
    return std::all_of(steps.begin(), steps.end(), [](const HardLefschetzStep& s) { return s.iso; });
}

std::optional<int> HardLefschetzReport::first_failure() const {
    for (const auto& s : steps)
        if (!s.iso) return s.r;
    return std::nullopt;
}

void require_lefschetz_class(const GradedRing& ring, const RingVector& omega) {
    if (omega.size() != ring.dim()) throw std::invalid_argument("Lefschetz class has wrong length");
    if (!ring.is_bihomogeneous(omega, 1, 1)) throw std::invalid_argument("Lefschetz class must have bidegree (1,1)");
    if (!ring.is_real(omega)) throw std::invalid_argument("Lefschetz class must be real");
}

HardLefschetzReport hard_lefschetz_check(const GradedRing& ring, const RingVector& omega) {
    require_lefschetz_class(ring, omega);
    HardLefschetzReport rep;
    const int n = ring.n();
    for (int r = 0; r <= n; ++r) {
        HardLefschetzStep s;
        s.r = r;
        s.source_degree = n - r;
        s.target_degree = n + r;
        auto src = ring.indices_of_degree(n - r);
        auto tgt = ring.indices_of_degree(n + r);
        s.b_source = static_cast<long long>(src.size());
        s.b_target = static_cast<long long>(tgt.size());
        RingVector wr = ring.power(omega, r);
        s.rank = static_cast<long long>(rank(ring.multiplication_matrix(wr, src, tgt)));
        s.iso = s.rank == s.b_source && s.rank == s.b_target;
        GaussianMatrix form = ring.cup_form(wr);
        s.pairing_nondegenerate = rank(form.submatrix(src, src)) == src.size();
        rep.steps.push_back(s);
    }
    return rep;
}

std::vector<RingVector> primitive_subspace(const GradedRing& ring, const RingVector& omega, int p, int q) {
    require_lefschetz_class(ring, omega);
    const int n = ring.n();
    const int l = p + q;
    if (p < 0 || q < 0 || l > n) throw std::out_of_range("primitive degree out of range (need p+q <= n)");
    const int k = n - l + 1;
    auto src = ring.indices_of_bidegree(p, q);
    auto tgt = ring.indices_of_bidegree(p + k, q + k);
    auto ker = kernel(ring.multiplication_matrix(ring.power(omega, k), src, tgt));
    std::vector<RingVector> out;
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        RingVector v(ring.dim());
        for (std::size_t r = 0; r < src.size(); ++r) v[src[r]] = ker(r, c);
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<RingVector> primitive_subspace(const GradedRing& ring, const RingVector& omega, int l) {
    if (l < 0 || l > ring.n()) throw std::out_of_range("primitive degree out of range (need 0 <= l <= n)");
    std::vector<RingVector> out;
    for (int p = l; p >= 0; --p)
        for (auto& v : primitive_subspace(ring, omega, p, l - p)) out.push_back(std::move(v));
    return out;
}

namespace {

void require_hard_lefschetz(const GradedRing& ring, const RingVector& omega) {
    auto hl = hard_lefschetz_check(ring, omega);
    if (!hl.passed())
        throw LefschetzFailure("hard Lefschetz fails for " + ring.format(omega) + " at r = " +
                               std::to_string(*hl.first_failure()));
}

}  // namespace

bool PrimitiveDecomposition::passed() const { return dimensions_match && direct_sum && orthogonal; }

PrimitiveDecomposition primitive_decompose(const GradedRing& ring, const RingVector& omega, int l) {
    require_hard_lefschetz(ring, omega);
    const int n = ring.n();
    if (l < 0 || l > n) throw std::out_of_range("decomposition degree out of range (need 0 <= l <= n)");
    PrimitiveDecomposition dec;
    dec.l = l;
    dec.b_l = ring.betti(l);
    const std::size_t N = ring.dim();
    long long total = 0;
    bool dims_ok = true;
    for (int j = 0; 2 * j <= l; ++j) {
        PrimitiveSummand s;
        s.j = j;
        s.primitive_degree = l - 2 * j;
        RingVector wj = ring.power(omega, j);
        for (const auto& v : primitive_subspace(ring, omega, s.primitive_degree)) s.basis.push_back(ring.multiply(wj, v));
        s.expected_dim = ring.betti(s.primitive_degree) - (s.primitive_degree >= 2 ? ring.betti(s.primitive_degree - 2) : 0);
        if (static_cast<long long>(s.basis.size()) != s.expected_dim) dims_ok = false;
        total += static_cast<long long>(s.basis.size());
        std::vector<RingVector> with_projections = s.basis;
        for (const auto& v : s.basis)
            for (int p = 0; p <= l; ++p) with_projections.push_back(ring.project(v, p, l - p));
        s.closed_under_bidegree = span_rank(with_projections, N) == span_rank(s.basis, N);
        dec.summands.push_back(std::move(s));
    }
    dec.dimensions_match = dims_ok && total == dec.b_l;
    std::vector<RingVector> all;
    for (const auto& s : dec.summands) all.insert(all.end(), s.basis.begin(), s.basis.end());
    dec.direct_sum = static_cast<long long>(span_rank(all, N)) == dec.b_l && static_cast<long long>(all.size()) == dec.b_l;
    GaussianMatrix q = ring.cup_form(ring.power(omega, n - l));
    dec.orthogonal = true;
    for (std::size_t a = 0; a < dec.summands.size(); ++a)
        for (std::size_t b = 0; b < dec.summands.size(); ++b) {
            if (a == b) continue;
            for (const auto& u : dec.summands[a].basis)
                for (const auto& v : dec.summands[b].basis)
                    if (!bilinear(u, q, v).is_zero()) dec.orthogonal = false;
        }
    return dec;
}

// ---------------------------------------------------------------------------
// Hodge–Riemann

bool HodgeRiemannReport::passed() const {
    return std::all_of(blocks.begin(), blocks.end(), [](const HodgeRiemannBlock& b) { return b.passed(); });
}

HodgeRiemannReport hodge_riemann_check(const GradedRing& ring, const RingVector& omega, int l) {
    require_hard_lefschetz(ring, omega);
    const int n = ring.n();
    if (l < 0 || l > n) throw std::out_of_range("Hodge-Riemann degree out of range (need 0 <= l <= n)");
    HodgeRiemannReport rep;
    rep.l = l;
    rep.sign = parity_sign(static_cast<long long>(l) * (l - 1) / 2);
    GaussianMatrix q = ring.cup_form(ring.power(omega, n - l));
    for (int p = l; p >= 0; --p) {
        HodgeRiemannBlock b;
        b.p = p;
        b.q = l - p;
        b.basis = primitive_subspace(ring, omega, b.p, b.q);
        const std::size_t d = b.basis.size();
        b.raw = GaussianMatrix(d, d);
        b.form = GaussianMatrix(d, d);
        Gaussian factor = Gaussian(rep.sign) * Gaussian::i_pow(b.p - b.q);
        for (std::size_t x = 0; x < d; ++x)
            for (std::size_t y = 0; y < d; ++y) {
                b.raw(x, y) = bilinear(b.basis[x], q, ring.conjugate(b.basis[y]));
                b.form(x, y) = factor * b.raw(x, y);
            }
        b.hermitian = b.form.is_hermitian();
        b.verdict = sylvester(b.form);
        b.raw_verdict = b.raw.is_hermitian() ? sylvester(b.raw) : Definiteness::indefinite_or_degenerate;
        rep.blocks.push_back(std::move(b));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Polarizations

std::size_t HodgeStructureSlice::dim() const {
    std::size_t d = 0;
    for (const auto& [pq, vs] : parts) d += vs.size();
    return d;
}

RingVector HodgeStructureSlice::conjugate(const RingVector& x) const {
    RingVector bar(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) bar[i] = x[i].conj();
    return conj * bar;
}

void HodgeStructureSlice::validate() const {
    if (!conj.is_square()) throw std::invalid_argument("slice conjugation must be square");
    const std::size_t N = ambient_dim();
    for (const auto& [pq, vs] : parts) {
        if (pq.first + pq.second != weight)
            throw std::invalid_argument("slice part (" + std::to_string(pq.first) + "," + std::to_string(pq.second) +
                                        ") does not have the slice weight");
        for (const auto& v : vs)
            if (v.size() != N) throw std::invalid_argument("slice vector has wrong ambient length");
        if (span_rank(vs, N) != vs.size()) throw std::invalid_argument("slice part basis is not independent");
    }
    for (const auto& [pq, vs] : parts) {
        if (vs.empty()) continue;
        auto it = parts.find({pq.second, pq.first});
        if (it == parts.end() || it->second.size() != vs.size())
            throw std::invalid_argument("conjugation does not map H^{p,q} onto H^{q,p}");
        std::vector<RingVector> joined = it->second;
        for (const auto& v : vs) joined.push_back(conjugate(v));
        if (span_rank(joined, N) != it->second.size())
            throw std::invalid_argument("conjugation does not map H^{p,q} onto H^{q,p}");
    }
    std::vector<RingVector> all;
    for (const auto& [pq, vs] : parts) all.insert(all.end(), vs.begin(), vs.end());
    if (span_rank(all, N) != all.size()) throw std::invalid_argument("slice parts are not independent");
}

bool PolarizationReport::passed() const { return failure().empty(); }

std::string PolarizationReport::failure() const {
    if (!psi_real) return "psi is not real on the real points";
    if (!parity_ok) return weight % 2 ? "psi is not antisymmetric" : "psi is not symmetric";
    if (!weil_square_ok) return "C^2 != (-1)^l on the slice";
    if (!psi_tilde_symmetric) return "psi(x, Cy) is not symmetric";
    if (psi_tilde_definiteness != Definiteness::positive) return "psi(x, Cy) is not positive definite";
    if (!hodge_orthogonal) return "psi(H^{p,q}, H^{p',q'}) != 0 for (p',q') != (q,p)";
    if (!hermitian_positive) return "(-1)^l i^{p-q} psi(x, conj x) is not positive";
    for (std::size_t k = 0; k < substructures.size(); ++k)
        if (!substructures[k].passed())
            return "substructure " + std::to_string(k) + ": " + substructures[k].failure();
    return {};
}

PolarizationReport polarization_check(const HodgeStructureSlice& slice, const GaussianMatrix& psi,
                                      const std::vector<HodgeStructureSlice>& substructures) {
    slice.validate();
    const std::size_t N = slice.ambient_dim();
    if (psi.rows() != N || psi.cols() != N) throw std::invalid_argument("psi dimension mismatch with the slice");
    PolarizationReport rep;
    rep.weight = slice.weight;
    const int l = slice.weight;

    std::vector<RingVector> basis;
    std::vector<Gaussian> weil;
    for (const auto& [pq, vs] : slice.parts)
        for (const auto& v : vs) {
            basis.push_back(v);
            weil.push_back(Gaussian::i_pow(pq.first - pq.second));
        }
    const std::size_t d = basis.size();

    // Coordinates in the slice basis via the exact left inverse (BᴴB)⁻¹Bᴴ.
    GaussianMatrix B = columns(basis, N);
    GaussianMatrix left = d ? inverse(B.conj_transpose() * B) * B.conj_transpose() : GaussianMatrix(0, N);
    auto weil_apply_slice = [&](const RingVector& x) {
        auto c = left * x;
        RingVector out(N);
        for (std::size_t k = 0; k < d; ++k) out = plus(std::move(out), basis[k], c[k] * weil[k]);
        return out;
    };

    rep.weil_square_ok = true;
    for (std::size_t k = 0; k < d; ++k)
        if (weil_apply_slice(weil_apply_slice(basis[k])) != scaled(basis[k], Gaussian(parity_sign(l))))
            rep.weil_square_ok = false;

    std::vector<RingVector> candidates;
    for (const auto& b : basis) {
        RingVector bb = slice.conjugate(b);
        candidates.push_back(plus(b, bb));
        candidates.push_back(scaled(plus(b, bb, Gaussian(-1)), Gaussian::i()));
    }
    for (auto c : independent_columns(columns(candidates, N))) rep.real_basis.push_back(candidates[c]);
    if (rep.real_basis.size() != d) throw std::logic_error("real points do not span the slice");

    rep.psi = RationalMatrix(d, d);
    rep.psi_tilde = RationalMatrix(d, d);
    rep.psi_real = true;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            Gaussian v = bilinear(rep.real_basis[a], psi, rep.real_basis[b]);
            Gaussian t = bilinear(rep.real_basis[a], psi, weil_apply_slice(rep.real_basis[b]));
            if (!v.is_real() || !t.is_real()) rep.psi_real = false;
            rep.psi(a, b) = v.re();
            rep.psi_tilde(a, b) = t.re();
        }
    rep.parity_ok = l % 2 == 0 ? rep.psi.is_symmetric() : rep.psi.is_antisymmetric();
    rep.psi_tilde_symmetric = rep.psi_tilde.is_symmetric();
    rep.psi_tilde_definiteness = rep.psi_tilde_symmetric ? sylvester(rep.psi_tilde) : Definiteness::indefinite_or_degenerate;

    rep.hodge_orthogonal = true;
    rep.hermitian_positive = true;
    for (const auto& [pq, xs] : slice.parts)
        for (const auto& [pq2, ys] : slice.parts) {
            if (pq2.first == pq.second && pq2.second == pq.first) continue;
            for (const auto& x : xs)
                for (const auto& y : ys)
                    if (!bilinear(x, psi, y).is_zero()) rep.hodge_orthogonal = false;
        }
    for (const auto& [pq, xs] : slice.parts) {
        const std::size_t k = xs.size();
        if (k == 0) continue;
        GaussianMatrix h(k, k);
        Gaussian factor = Gaussian(parity_sign(l)) * Gaussian::i_pow(pq.first - pq.second);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) h(a, b) = factor * bilinear(xs[a], psi, slice.conjugate(xs[b]));
        if (!h.is_hermitian() || sylvester(h) != Definiteness::positive) rep.hermitian_positive = false;
    }

    for (const auto& sub : substructures) {
        if (sub.weight != slice.weight) throw std::invalid_argument("substructure weight differs from the slice");
        std::vector<RingVector> joined = basis;
        for (const auto& [pq, vs] : sub.parts) {
            auto it = slice.parts.find(pq);
            std::vector<RingVector> part = it == slice.parts.end() ? std::vector<RingVector>{} : it->second;
            std::size_t before = span_rank(part, N);
            part.insert(part.end(), vs.begin(), vs.end());
            if (span_rank(part, N) != before)
                throw std::invalid_argument("substructure is not contained in the slice bidegree by bidegree");
        }
        rep.substructures.push_back(polarization_check(sub, psi));
    }
    return rep;
}

HodgeStructureSlice primitive_slice(const GradedRing& ring, const RingVector& omega, int l) {
    HodgeStructureSlice s;
    s.weight = l;
    s.conj = ring.conjugation_matrix();
    for (int p = l; p >= 0; --p) {
        auto vs = primitive_subspace(ring, omega, p, l - p);
        if (!vs.empty()) s.parts[{p, l - p}] = std::move(vs);
    }
    return s;
}

HodgeStructureSlice cohomology_slice(const GradedRing& ring, int l) {
    if (l < 0 || l > 2 * ring.n()) throw std::out_of_range("slice degree out of range");
    HodgeStructureSlice s;
    s.weight = l;
    s.conj = ring.conjugation_matrix();
    for (int p = l; p >= 0; --p) {
        std::vector<RingVector> vs;
        for (auto idx : ring.indices_of_bidegree(p, l - p)) vs.push_back(ring.element(ring.basis()[idx].name));
        if (!vs.empty()) s.parts[{p, l - p}] = std::move(vs);
    }
    return s;
}

GaussianMatrix canonical_polarization_form(const GradedRing& ring, const RingVector& omega, int l) {
    require_lefschetz_class(ring, omega);
    if (l < 0 || l > ring.n()) throw std::out_of_range("polarization degree out of range (need 0 <= l <= n)");
    GaussianMatrix q = ring.cup_form(ring.power(omega, ring.n() - l));
    return q * Gaussian(parity_sign(static_cast<long long>(l) * (l + 1) / 2));
}

// ---------------------------------------------------------------------------
// Hodge diamond

bool HodgeDiamond::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed; });
}

std::string HodgeDiamond::text() const {
    std::size_t width = 1;
    for (const auto& row : h)
        for (auto v : row) width = std::max(width, std::to_string(v).size());
    const std::size_t cell = width + 1;
    std::ostringstream os;
    for (int s = 2 * n; s >= 0; --s) {
        std::string line((2 * n + 1) * cell, ' ');
        for (int p = std::min(s, n); p >= std::max(0, s - n); --p) {
            int q = s - p;
            std::string v = std::to_string(h[p][q]);
            std::size_t centre = static_cast<std::size_t>(q - p + n) * cell + cell / 2;
            std::size_t start = centre + 1 >= v.size() ? centre + 1 - v.size() : 0;
            line.replace(start, v.size(), v);
        }
        line.erase(line.find_last_not_of(' ') + 1);
        os << line << '\n';
    }
    return os.str();
}

HodgeDiamond hodge_diamond(const GradedRing& ring) {
    HodgeDiamond d;
    const int n = ring.n();
    d.n = n;
    d.h.assign(n + 1, std::vector<long long>(n + 1, 0));
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) d.h[p][q] = ring.hodge_number(p, q);
    for (int l = 0; l <= 2 * n; ++l) d.betti.push_back(ring.betti(l));
    auto hpq = [&](int p, int q) { return "h^{" + std::to_string(p) + "," + std::to_string(q) + "}"; };

    IdentityCheck c2{"pqid2", "h^{0,0} = h^{n,n} = 1", d.h[0][0] == 1 && d.h[n][n] == 1, ""};
    if (!c2.passed) c2.detail = "h^{0,0} = " + std::to_string(d.h[0][0]) + ", h^{n,n} = " + std::to_string(d.h[n][n]);
    IdentityCheck c3{"pqid3", "h^{p,q} = h^{n-p,n-q}", true, ""};
    IdentityCheck c4{"pqid4", "h^{p,q} = h^{q,p}", true, ""};
    IdentityCheck c6{"pqid6", "h^{p,p} >= 1", true, ""};
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            if (c3.passed && d.h[p][q] != d.h[n - p][n - q]) {
                c3.passed = false;
                c3.detail = hpq(p, q) + " != " + hpq(n - p, n - q);
            }
            if (c4.passed && d.h[p][q] != d.h[q][p]) {
                c4.passed = false;
                c4.detail = hpq(p, q) + " != " + hpq(q, p);
            }
        }
    for (int p = 0; p <= n; ++p)
        if (c6.passed && d.h[p][p] < 1) {
            c6.passed = false;
            c6.detail = hpq(p, p) + " = 0";
        }
    IdentityCheck c5{"pqid5", "b_l = sum_{p+q=l} h^{p,q}", true, ""};
    IdentityCheck odd{"pqid5", "b_odd is even", true, ""};
    IdentityCheck even{"cckmt", "b_{2k} > 0", true, ""};
    for (int l = 0; l <= 2 * n; ++l) {
        long long sum = 0;
        for (int p = std::max(0, l - n); p <= std::min(l, n); ++p) sum += d.h[p][l - p];
        if (c5.passed && sum != d.betti[l]) {
            c5.passed = false;
            c5.detail = "b_" + std::to_string(l) + " = " + std::to_string(d.betti[l]) + " but the sum is " + std::to_string(sum);
        }
        if (l % 2 == 1 && odd.passed && d.betti[l] % 2 != 0) {
            odd.passed = false;
            odd.detail = "b_" + std::to_string(l) + " = " + std::to_string(d.betti[l]);
        }
        if (l % 2 == 0 && even.passed && d.betti[l] <= 0) {
            even.passed = false;
            even.detail = "b_" + std::to_string(l) + " = 0";
        }
    }
    d.checks = {c2, c3, c4, c5, odd, c6, even};
    return d;
}

}  // namespace hodge
