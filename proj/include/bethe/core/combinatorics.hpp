#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

namespace bethe {

/// All k-element subsets of {0..n-1}, each sorted, in lexicographic order.
inline std::vector<std::vector<int>> k_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        out.push_back(idx);
        int i = k - 1;
        while (i >= 0 && idx[std::size_t(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[std::size_t(i)];
        for (int j = i + 1; j < k; ++j) idx[std::size_t(j)] = idx[std::size_t(j - 1)] + 1;
    }
    return out;
}

/// Sign of a permutation of 0..k-1 (inversion count parity).
inline int permutation_sign(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

/// All permutations of 0..k-1 in lexicographic order.
inline std::vector<std::vector<int>> permutations(int k) {
    std::vector<int> p(static_cast<std::size_t>(std::max(k, 0)));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline long factorial(int k) {
    long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

} // namespace bethe
