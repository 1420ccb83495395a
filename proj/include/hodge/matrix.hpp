#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hodge/rational.hpp"

namespace hodge {

/// Dense row-major matrix over an exact field (Rational or GaussianRational).
template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<F>>& rows) {
        std::size_t r = rows.size();
        std::size_t c = r ? rows.front().size() : 0;
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    static Matrix from_columns(const std::vector<std::vector<F>>& cols, std::size_t rows) {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<F> column(std::size_t j) const {
        std::vector<F> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    std::vector<F> row(std::size_t i) const {
        return std::vector<F>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const F& x) { return x.is_zero(); });
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix conj_transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = conj((*this)(i, j));
        return t;
    }

    Matrix conjugate() const {
        Matrix t(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) t.data_[k] = conj(data_[k]);
        return t;
    }

    Matrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
        Matrix s(rs.size(), cs.size());
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) s(i, j) = (*this)(rs[i], cs[j]);
        return s;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const F& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const F& s) { return a *= s; }
    friend Matrix operator*(const F& s, Matrix a) { return a *= s; }
    friend Matrix operator-(Matrix a) {
        for (auto& x : a.data_) x = -x;
        return a;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const F& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const F& bkj = b(k, j);
                    if (!bkj.is_zero()) c(i, j) += aik * bkj;
                }
            }
        return c;
    }

    friend std::vector<F> operator*(const Matrix& a, const std::vector<F>& v) {
        if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
        std::vector<F> out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                if (!a(i, k).is_zero() && !v[k].is_zero()) out[i] += a(i, k) * v[k];
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (!((*this)(i, j) == (*this)(j, i))) return false;
        return true;
    }

    bool is_antisymmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                if (!((*this)(i, j) == -(*this)(j, i))) return false;
        return true;
    }

    bool is_hermitian() const { return is_square() && *this == conj_transpose(); }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<F> data_;
};

template <class F>
std::ostream& operator<<(std::ostream& os, const Matrix<F>& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
        os << ']';
    }
    return os << ']';
}

using RationalMatrix = Matrix<Rational>;
using GaussianMatrix = Matrix<Gaussian>;

inline GaussianMatrix to_gaussian(const RationalMatrix& m) {
    GaussianMatrix g(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) g(i, j) = Gaussian(m(i, j));
    return g;
}

/// Reduced row echelon form computed by fraction-free pivoting over the field.
template <class F>
struct RowEchelon {
    Matrix<F> reduced;
    std::vector<std::size_t> pivot_cols;
    F determinant_factor{1};  // product of pivots with row-swap signs (square case)
};

template <class F>
RowEchelon<F> row_reduce(Matrix<F> a) {
    RowEchelon<F> out;
    std::size_t r = 0;
    F det(1);
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c).is_zero()) ++p;
        if (p == a.rows()) continue;
        if (p != r) {
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
            det = -det;
        }
        F pivot = a(r, c);
        det *= pivot;
        F inv = F(1) / pivot;
        for (std::size_t j = c; j < a.cols(); ++j)
            if (!a(r, j).is_zero()) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            F f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.reduced = std::move(a);
    out.determinant_factor = det;
    return out;
}

template <class F>
std::size_t rank(const Matrix<F>& a) {
    return row_reduce(a).pivot_cols.size();
}

template <class F>
F determinant(const Matrix<F>& a) {
    if (!a.is_square()) throw std::invalid_argument("determinant of non-square matrix");
    if (a.rows() == 0) return F(1);
    auto e = row_reduce(a);
    if (e.pivot_cols.size() < a.rows()) return F(0);
    return e.determinant_factor;
}

/// Basis of the null space, one vector per free column; columns of the result.
template <class F>
Matrix<F> kernel(const Matrix<F>& a) {
    auto e = row_reduce(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<F> v(a.cols());
        v[free] = F(1);
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = -e.reduced(r, free);
        basis.push_back(std::move(v));
    }
    return Matrix<F>::from_columns(basis, a.cols());
}

/// Columns of `a` forming a basis of its column space (a subset, in order).
template <class F>
std::vector<std::size_t> independent_columns(const Matrix<F>& a) {
    return row_reduce(a).pivot_cols;
}

template <class F>
std::optional<Matrix<F>> try_inverse(const Matrix<F>& a) {
    if (!a.is_square()) throw std::invalid_argument("inverse of non-square matrix");
    std::size_t n = a.rows();
    Matrix<F> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = F(1);
    }
    auto e = row_reduce(std::move(aug));
    if (e.pivot_cols.size() < n || (n > 0 && e.pivot_cols[n - 1] != n - 1)) return std::nullopt;
    Matrix<F> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& a) {
    auto inv = try_inverse(a);
    if (!inv) throw std::domain_error("matrix is singular");
    return *inv;
}

/// Solves A X = B; throws if A is singular.
template <class F>
Matrix<F> solve(const Matrix<F>& a, const Matrix<F>& b) {
    return inverse(a) * b;
}

/// Leading principal minors det A[0..k, 0..k] for k = 1..n.
template <class F>
std::vector<F> leading_minors(const Matrix<F>& a) {
    if (!a.is_square()) throw std::invalid_argument("leading minors of non-square matrix");
    std::vector<F> out;
    for (std::size_t k = 1; k <= a.rows(); ++k) {
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        out.push_back(determinant(a.submatrix(idx, idx)));
    }
    return out;
}

enum class Definiteness { positive, negative, indefinite_or_degenerate };

/// Sylvester's criterion on a symmetric (or Hermitian) matrix. Minors of a
/// Hermitian matrix are real, so only their real parts are inspected.
template <class F>
Definiteness sylvester(const Matrix<F>& a) {
    if (a.rows() == 0) return Definiteness::positive;
    auto minors = leading_minors(a);
    bool pos = true, neg = true;
    for (std::size_t k = 0; k < minors.size(); ++k) {
        int s = real_part(minors[k]).sign();
        if (s <= 0) pos = false;
        int want = (k % 2 == 0) ? -1 : 1;
        if (s != want) neg = false;
    }
    if (pos) return Definiteness::positive;
    if (neg) return Definiteness::negative;
    return Definiteness::indefinite_or_degenerate;
}

template <class F>
bool is_positive_definite(const Matrix<F>& a) {
    if (!a.is_square()) return false;
    if (!a.is_hermitian()) return false;
    return sylvester(a) == Definiteness::positive;
}

/// Compressed sparse row matrix; each row's (column, value) pairs are sorted by column.
template <class F>
class SparseMatrix {
public:
    using Entry = std::pair<std::size_t, F>;

    class RowView {
    public:
        RowView(const Entry* b, const Entry* e) : b_(b), e_(e) {}
        const Entry* begin() const { return b_; }
        const Entry* end() const { return e_; }
        std::size_t size() const { return static_cast<std::size_t>(e_ - b_); }
        bool empty() const { return b_ == e_; }

    private:
        const Entry* b_;
        const Entry* e_;
    };

    SparseMatrix() : start_(1, 0) {}
    SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), start_(rows + 1, 0) {}

    static SparseMatrix identity(std::size_t n) {
        std::vector<F> d(n, F(1));
        return diagonal(d);
    }

    static SparseMatrix diagonal(const std::vector<F>& d) {
        SparseMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (!d[i].is_zero()) m.entries_.push_back({i, d[i]});
            m.start_[i + 1] = m.entries_.size();
        }
        return m;
    }

    static SparseMatrix from_dense(const Matrix<F>& d) {
        SparseMatrix m(d.rows(), d.cols());
        for (std::size_t i = 0; i < d.rows(); ++i) {
            for (std::size_t j = 0; j < d.cols(); ++j)
                if (!d(i, j).is_zero()) m.entries_.push_back({j, d(i, j)});
            m.start_[i + 1] = m.entries_.size();
        }
        return m;
    }

    std::size_t rows() const { return start_.size() - 1; }
    std::size_t cols() const { return cols_; }
    RowView row(std::size_t i) const {
        check_final();
        return {entries_.data() + start_[i], entries_.data() + start_[i + 1]};
    }
    std::size_t nonzeros() const { return entries_.size(); }
    bool is_zero() const {
        check_final();
        return entries_.empty();
    }

    /// Queues v at (i, j); call finalize() before using the matrix.
    void add(std::size_t i, std::size_t j, const F& v) {
        if (i >= rows() || j >= cols_) throw std::out_of_range("sparse index out of range");
        if (!v.is_zero()) pending_.push_back({i, j, v});
    }

    /// Merges queued entries into the stored ones.
    void finalize() {
        if (pending_.empty()) return;
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t k = start_[i]; k < start_[i + 1]; ++k)
                pending_.push_back({i, entries_[k].first, entries_[k].second});
        std::stable_sort(pending_.begin(), pending_.end(), [](const Triplet& a, const Triplet& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
        entries_.clear();
        std::fill(start_.begin(), start_.end(), 0);
        std::size_t p = 0;
        for (std::size_t i = 0; i < rows(); ++i) {
            while (p < pending_.size() && pending_[p].row == i) {
                std::size_t j = pending_[p].col;
                F v = pending_[p].value;
                for (++p; p < pending_.size() && pending_[p].row == i && pending_[p].col == j; ++p) v += pending_[p].value;
                if (!v.is_zero()) entries_.push_back({j, std::move(v)});
            }
            start_[i + 1] = entries_.size();
        }
        pending_.clear();
    }

    Matrix<F> to_dense() const {
        check_final();
        Matrix<F> d(rows(), cols_);
        for (std::size_t i = 0; i < rows(); ++i)
            for (const auto& [j, v] : row(i)) d(i, j) = v;
        return d;
    }

    SparseMatrix conj_transpose() const {
        check_final();
        SparseMatrix t(cols_, rows());
        for (const auto& e : entries_) ++t.start_[e.first + 1];
        for (std::size_t j = 0; j < cols_; ++j) t.start_[j + 1] += t.start_[j];
        t.entries_.resize(entries_.size());
        std::vector<std::size_t> fill(t.start_.begin(), t.start_.end() - 1);
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t k = start_[i]; k < start_[i + 1]; ++k) {
                const auto& [j, v] = entries_[k];
                t.entries_[fill[j]++] = {i, conj(v)};
            }
        return t;
    }

    /// Applies fn(row, col, value&) to every stored entry.
    template <class Fn>
    void transform(Fn&& fn) {
        check_final();
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t k = start_[i]; k < start_[i + 1]; ++k) fn(i, entries_[k].first, entries_[k].second);
        compact();
    }

    SparseMatrix& operator*=(const F& s) {
        check_final();
        if (s.is_zero()) {
            entries_.clear();
            std::fill(start_.begin(), start_.end(), 0);
            return *this;
        }
        for (auto& e : entries_) e.second *= s;
        return *this;
    }

    friend SparseMatrix operator*(SparseMatrix a, const F& s) { return a *= s; }
    friend SparseMatrix operator*(const F& s, SparseMatrix a) { return a *= s; }

    friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, false); }
    friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, true); }
    friend SparseMatrix operator-(SparseMatrix a) {
        for (auto& e : a.entries_) e.second = -e.second;
        return a;
    }
    SparseMatrix& operator+=(const SparseMatrix& o) { return *this = combine(*this, o, false); }
    SparseMatrix& operator-=(const SparseMatrix& o) { return *this = combine(*this, o, true); }

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
        a.check_final();
        b.check_final();
        if (a.cols_ != b.rows()) throw std::invalid_argument("sparse product shape mismatch");
        SparseMatrix c(a.rows(), b.cols_);
        std::vector<F> acc(b.cols_);
        std::vector<char> touched(b.cols_, 0);
        std::vector<std::size_t> cols;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            cols.clear();
            for (std::size_t ka = a.start_[i]; ka < a.start_[i + 1]; ++ka) {
                const auto& [k, av] = a.entries_[ka];
                for (std::size_t kb = b.start_[k]; kb < b.start_[k + 1]; ++kb) {
                    const auto& [j, bv] = b.entries_[kb];
                    if (!touched[j]) {
                        touched[j] = 1;
                        cols.push_back(j);
                        acc[j] = F{};
                    }
                    multiply_add(acc[j], av, bv);
                }
            }
            std::sort(cols.begin(), cols.end());
            for (auto j : cols) {
                if (!acc[j].is_zero()) c.entries_.push_back({j, std::move(acc[j])});
                touched[j] = 0;
            }
            c.start_[i + 1] = c.entries_.size();
        }
        return c;
    }

    friend std::vector<F> operator*(const SparseMatrix& a, const std::vector<F>& v) {
        a.check_final();
        if (a.cols_ != v.size()) throw std::invalid_argument("sparse matrix-vector shape mismatch");
        std::vector<F> out(a.rows());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (const auto& [j, x] : a.row(i))
                if (!v[j].is_zero()) multiply_add(out[i], x, v[j]);
        return out;
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        a.check_final();
        b.check_final();
        return a.cols_ == b.cols_ && a.start_ == b.start_ && a.entries_ == b.entries_;
    }

    /// Largest |entry|^2 (exact); zero iff the matrix is zero.
    Rational max_abs2() const {
        check_final();
        Rational best;
        for (const auto& e : entries_) {
            Rational a = abs2(e.second);
            if (a > best) best = a;
        }
        return best;
    }

private:
    struct Triplet {
        std::size_t row, col;
        F value;
    };

    void check_final() const {
        if (!pending_.empty()) throw std::logic_error("sparse matrix used before finalize()");
    }

    void compact() {
        std::size_t w = 0;
        std::size_t row_begin = 0;
        for (std::size_t i = 0; i < rows(); ++i) {
            std::size_t row_end = start_[i + 1];
            for (std::size_t k = row_begin; k < row_end; ++k)
                if (!entries_[k].second.is_zero()) {
                    if (w != k) entries_[w] = std::move(entries_[k]);
                    ++w;
                }
            row_begin = row_end;
            start_[i + 1] = w;
        }
        entries_.resize(w);
    }

    static void multiply_add(F& acc, const F& a, const F& b) {
        if constexpr (requires { acc.add_product(a, b); }) {
            acc.add_product(a, b);
        } else {
            acc += a * b;
        }
    }
    static Rational abs2(const Rational& x) { return x * x; }
    static Rational abs2(const Gaussian& z) { return z.norm2(); }

    static SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, bool subtract) {
        a.check_final();
        b.check_final();
        if (a.rows() != b.rows() || a.cols_ != b.cols_) throw std::invalid_argument("sparse shape mismatch");
        SparseMatrix c(a.rows(), a.cols_);
        c.entries_.reserve(a.entries_.size() + b.entries_.size());
        for (std::size_t i = 0; i < a.rows(); ++i) {
            std::size_t p = a.start_[i], pe = a.start_[i + 1];
            std::size_t q = b.start_[i], qe = b.start_[i + 1];
            while (p < pe || q < qe) {
                if (q == qe || (p < pe && a.entries_[p].first < b.entries_[q].first)) {
                    c.entries_.push_back(a.entries_[p++]);
                } else if (p == pe || b.entries_[q].first < a.entries_[p].first) {
                    const auto& e = b.entries_[q++];
                    c.entries_.push_back({e.first, subtract ? -e.second : e.second});
                } else {
                    F v = subtract ? a.entries_[p].second - b.entries_[q].second
                                   : a.entries_[p].second + b.entries_[q].second;
                    if (!v.is_zero()) c.entries_.push_back({a.entries_[p].first, std::move(v)});
                    ++p;
                    ++q;
                }
            }
            c.start_[i + 1] = c.entries_.size();
        }
        return c;
    }

    std::size_t cols_ = 0;
    std::vector<std::size_t> start_;
    std::vector<Entry> entries_;
    std::vector<Triplet> pending_;
};

using GaussianSparse = SparseMatrix<Gaussian>;

}  // namespace hodge
