#pragma once

#include "bethe/classical/twist.hpp"
#include "bethe/core/errors.hpp"

#include <string>
#include <vector>

namespace bethe {

/// Antidominant shift mu = (d_1 <= ... <= d_n).
class ShiftVector {
public:
    ShiftVector() = default;
    explicit ShiftVector(std::vector<int> d) : d_(std::move(d)) {
        for (std::size_t i = 1; i < d_.size(); ++i)
            if (d_[i - 1] > d_[i])
                throw PreconditionError("shift is not antidominant: d_" + std::to_string(i) + " = " +
                                        std::to_string(d_[i - 1]) + " > d_" + std::to_string(i + 1) + " = " +
                                        std::to_string(d_[i]));
    }
    static ShiftVector zero(int n) { return ShiftVector(std::vector<int>(std::size_t(n), 0)); }

    int n() const { return int(d_.size()); }
    /// 1-based.
    int d(int i) const { return d_.at(std::size_t(i - 1)); }
    const std::vector<int>& values() const { return d_; }
    int max_d() const { return d_.empty() ? 0 : d_.back(); }

    /// <omega_k^*, mu> = -(d_{n-k+1} + ... + d_n).
    int omega_star(int k) const {
        int s = 0;
        for (int i = n() - k + 1; i <= n(); ++i) s += d(i);
        return -s;
    }

    /// Maximal runs of equal entries, 0-based half-open.
    std::vector<Block> levi_blocks() const {
        std::vector<Block> out;
        int start = 0;
        for (int i = 1; i <= n(); ++i)
            if (i == n() || d_[std::size_t(i)] != d_[std::size_t(start)]) {
                out.emplace_back(start, i);
                start = i;
            }
        return out;
    }
    /// 1-based indices in the same Levi block.
    bool same_block(int i, int j) const { return d(i) == d(j); }

    std::string str() const {
        std::string out = "(";
        for (std::size_t i = 0; i < d_.size(); ++i) out += (i ? "," : "") + std::to_string(d_[i]);
        return out + ")";
    }

private:
    std::vector<int> d_;
};

inline ShiftVector validate_shift(const std::vector<int>& d) { return ShiftVector(d); }

} // namespace bethe
