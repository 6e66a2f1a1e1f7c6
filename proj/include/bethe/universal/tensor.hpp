#pragma once

#include "bethe/classical/twist.hpp"
#include "bethe/core/combinatorics.hpp"
#include "bethe/core/errors.hpp"
#include "bethe/core/scalar.hpp"

#include <map>
#include <utility>
#include <vector>

namespace bethe {

/// Sparse operator on (C^n)^{tensor k}. Multi-indices are 0-based vectors
/// encoded base n, first factor most significant.
class TensorOperator {
public:
    TensorOperator(int n, int k) : n_(n), k_(k) {
        dim_ = 1;
        for (int i = 0; i < k; ++i) dim_ *= n;
    }

    int n() const { return n_; }
    int k() const { return k_; }
    long dim() const { return dim_; }
    const std::map<std::pair<long, long>, Scalar>& entries() const { return entries_; }

    long encode(const std::vector<int>& idx) const {
        long v = 0;
        for (int a : idx) v = v * n_ + a;
        return v;
    }
    std::vector<int> decode(long v) const {
        std::vector<int> idx(static_cast<std::size_t>(k_));
        for (int p = k_ - 1; p >= 0; --p) {
            idx[std::size_t(p)] = int(v % n_);
            v /= n_;
        }
        return idx;
    }

    Scalar at(long row, long col) const {
        auto it = entries_.find({row, col});
        return it == entries_.end() ? Scalar(0) : it->second;
    }
    void add(long row, long col, const Scalar& c) {
        if (c == 0) return;
        auto& x = entries_[{row, col}];
        x += c;
        if (x == 0) entries_.erase({row, col});
    }

    static TensorOperator identity(int n, int k) {
        TensorOperator op(n, k);
        for (long v = 0; v < op.dim_; ++v) op.add(v, v, 1);
        return op;
    }

    /// sigma acts by moving the vector in factor p to factor sigma(p).
    static TensorOperator permutation(int n, const std::vector<int>& sigma) {
        int k = int(sigma.size());
        TensorOperator op(n, k);
        for (long v = 0; v < op.dim_; ++v) {
            auto in = op.decode(v);
            std::vector<int> out(in.size());
            for (int p = 0; p < k; ++p) out[std::size_t(sigma[std::size_t(p)])] = in[std::size_t(p)];
            op.add(op.encode(out), v, 1);
        }
        return op;
    }

    /// C tensor ... tensor C (k factors).
    static TensorOperator tensor_power(const TwistMatrix& c, int k) {
        int n = c.n();
        TensorOperator op(n, k);
        for (long row = 0; row < op.dim_; ++row)
            for (long col = 0; col < op.dim_; ++col) {
                auto a = op.decode(row), b = op.decode(col);
                Scalar x = 1;
                for (int p = 0; p < k && x != 0; ++p) x *= c(a[std::size_t(p)], b[std::size_t(p)]);
                op.add(row, col, x);
            }
        return op;
    }

    friend TensorOperator operator*(const TensorOperator& a, const TensorOperator& b) {
        if (a.n_ != b.n_ || a.k_ != b.k_) throw DomainError("tensor operator shapes differ");
        TensorOperator out(a.n_, a.k_);
        std::map<long, std::vector<std::pair<long, Scalar>>> rows_of_b;
        for (auto& [rc, x] : b.entries_) rows_of_b[rc.first].emplace_back(rc.second, x);
        for (auto& [rc, x] : a.entries_) {
            auto it = rows_of_b.find(rc.second);
            if (it == rows_of_b.end()) continue;
            for (auto& [col, y] : it->second) out.add(rc.first, col, x * y);
        }
        return out;
    }
    friend TensorOperator operator+(TensorOperator a, const TensorOperator& b) {
        for (auto& [rc, x] : b.entries_) a.add(rc.first, rc.second, x);
        return a;
    }
    TensorOperator scaled(const Scalar& s) const {
        TensorOperator out(n_, k_);
        for (auto& [rc, x] : entries_) out.add(rc.first, rc.second, x * s);
        return out;
    }
    bool operator==(const TensorOperator& o) const {
        return n_ == o.n_ && k_ == o.k_ && entries_ == o.entries_;
    }

    Scalar trace() const {
        Scalar t = 0;
        for (auto& [rc, x] : entries_)
            if (rc.first == rc.second) t += x;
        return t;
    }

private:
    int n_, k_;
    long dim_;
    std::map<std::pair<long, long>, Scalar> entries_;
};

/// A_k = (1/k!) sum sgn(sigma) P_sigma.
inline TensorOperator antisymmetrizer(int k, int n) {
    if (k < 1 || k > n) throw PreconditionError("antisymmetrizer needs 1 <= k <= n");
    TensorOperator a(n, k);
    Scalar norm = Scalar(1) / Scalar(factorial(k));
    for (auto& s : permutations(k)) a = a + TensorOperator::permutation(n, s).scaled(norm * permutation_sign(s));
    return a;
}

} // namespace bethe
