#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace hodge {

/// Strictly increasing sequence of basis labels drawn from 1..m.
class MultiIndex {
public:
    MultiIndex() = default;
    MultiIndex(std::initializer_list<int> idx);
    explicit MultiIndex(std::vector<int> idx);

    /// Throws std::out_of_range unless every entry lies in 1..m.
    void check_dimension(int m) const;

    int degree() const { return static_cast<int>(idx_.size()); }
    bool empty() const { return idx_.empty(); }
    const std::vector<int>& indices() const { return idx_; }
    bool contains(int i) const;
    auto begin() const { return idx_.begin(); }
    auto end() const { return idx_.end(); }

    bool disjoint(const MultiIndex& o) const;
    /// Union of disjoint indices; caller is responsible for the sign.
    MultiIndex merged(const MultiIndex& o) const;
    MultiIndex without(int i) const;
    std::string str() const;

    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
    std::vector<int> idx_;
};

std::ostream& operator<<(std::ostream& os, const MultiIndex& I);

/// Sign of the shuffle taking the concatenation (I, J) to increasing order,
/// i.e. (-1)^(number of pairs i in I, j in J with i > j). I and J disjoint.
int shuffle_sign(const MultiIndex& I, const MultiIndex& J);

/// The complement CI of I in {1..m} together with the sign of the
/// permutation (I, CI) of {1..m}.
std::pair<int, MultiIndex> complement_sign(const MultiIndex& I, int m);

/// All increasing multi-indices of length p in 1..m, in lexicographic order.
std::vector<MultiIndex> multi_indices(int m, int p);

/// All multi-indices of 1..m ordered by degree, then lexicographically.
std::vector<MultiIndex> all_multi_indices(int m);

long long binomial(int n, int k);

}  // namespace hodge
