#include "hodge/multi_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace hodge {

MultiIndex::MultiIndex(std::initializer_list<int> idx) : MultiIndex(std::vector<int>(idx)) {}

MultiIndex::MultiIndex(std::vector<int> idx) : idx_(std::move(idx)) {
    for (std::size_t k = 1; k < idx_.size(); ++k)
        if (idx_[k - 1] >= idx_[k]) throw std::invalid_argument("multi-index must be strictly increasing: " + str());
}

void MultiIndex::check_dimension(int m) const {
    for (int i : idx_)
        if (i < 1 || i > m)
            throw std::out_of_range("multi-index " + str() + " out of range for dimension " + std::to_string(m));
}

bool MultiIndex::contains(int i) const { return std::binary_search(idx_.begin(), idx_.end(), i); }

bool MultiIndex::disjoint(const MultiIndex& o) const {
    std::size_t a = 0, b = 0;
    while (a < idx_.size() && b < o.idx_.size()) {
        if (idx_[a] == o.idx_[b]) return false;
        if (idx_[a] < o.idx_[b]) ++a; else ++b;
    }
    return true;
}

MultiIndex MultiIndex::merged(const MultiIndex& o) const {
    std::vector<int> out;
    out.reserve(idx_.size() + o.idx_.size());
    std::merge(idx_.begin(), idx_.end(), o.idx_.begin(), o.idx_.end(), std::back_inserter(out));
    return MultiIndex(std::move(out));
}

MultiIndex MultiIndex::without(int i) const {
    std::vector<int> out;
    for (int x : idx_)
        if (x != i) out.push_back(x);
    return MultiIndex(std::move(out));
}

std::string MultiIndex::str() const {
    std::string s = "(";
    for (std::size_t k = 0; k < idx_.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(idx_[k]);
    }
    return s + ")";
}

std::ostream& operator<<(std::ostream& os, const MultiIndex& I) { return os << I.str(); }

int shuffle_sign(const MultiIndex& I, const MultiIndex& J) {
    // count inversions: for each j in J, the number of entries of I above j
    long inversions = 0;
    const auto& a = I.indices();
    for (int j : J) inversions += static_cast<long>(a.end() - std::upper_bound(a.begin(), a.end(), j));
    return (inversions % 2) ? -1 : 1;
}

std::pair<int, MultiIndex> complement_sign(const MultiIndex& I, int m) {
    I.check_dimension(m);
    std::vector<int> c;
    for (int i = 1; i <= m; ++i)
        if (!I.contains(i)) c.push_back(i);
    MultiIndex C(std::move(c));
    return {shuffle_sign(I, C), C};
}

std::vector<MultiIndex> multi_indices(int m, int p) {
    std::vector<MultiIndex> out;
    if (p < 0 || p > m) return out;
    std::vector<int> cur(p);
    for (int k = 0; k < p; ++k) cur[k] = k + 1;
    while (true) {
        out.emplace_back(cur);
        int k = p - 1;
        while (k >= 0 && cur[k] == m - p + k + 1) --k;
        if (k < 0) break;
        ++cur[k];
        for (int t = k + 1; t < p; ++t) cur[t] = cur[t - 1] + 1;
    }
    return out;
}

std::vector<MultiIndex> all_multi_indices(int m) {
    std::vector<MultiIndex> out;
    for (int p = 0; p <= m; ++p) {
        auto d = multi_indices(m, p);
        out.insert(out.end(), d.begin(), d.end());
    }
    return out;
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace hodge
