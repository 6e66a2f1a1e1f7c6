#pragma once

#include "bethe/core/errors.hpp"
#include "bethe/core/linear_algebra.hpp"
#include "bethe/core/scalar.hpp"

#include <string>
#include <utility>
#include <vector>

namespace bethe {

/// Half-open index range [begin, end) of a diagonal block (0-based).
using Block = std::pair<int, int>;

/// The twist C as an n x n rational matrix.
class TwistMatrix {
public:
    TwistMatrix() = default;
    explicit TwistMatrix(ScalarMatrix m) : m_(std::move(m)) {
        for (auto& row : m_)
            if (row.size() != m_.size()) throw PreconditionError("twist matrix is not square");
    }
    static TwistMatrix diagonal(const std::vector<Scalar>& d) {
        ScalarMatrix m(d.size(), std::vector<Scalar>(d.size(), Scalar(0)));
        for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
        return TwistMatrix(std::move(m));
    }
    /// diag(1, 2, ..., n)
    static TwistMatrix standard(int n) {
        std::vector<Scalar> d;
        for (int i = 1; i <= n; ++i) d.emplace_back(i);
        return diagonal(d);
    }
    static TwistMatrix identity(int n) { return diagonal(std::vector<Scalar>(std::size_t(n), Scalar(1))); }

    int n() const { return int(m_.size()); }
    /// 0-based entry.
    const Scalar& operator()(int a, int b) const { return m_[std::size_t(a)][std::size_t(b)]; }
    const ScalarMatrix& matrix() const { return m_; }

    bool is_diagonal() const {
        for (int a = 0; a < n(); ++a)
            for (int b = 0; b < n(); ++b)
                if (a != b && m_[a][b] != 0) return false;
        return true;
    }
    std::vector<Scalar> diagonal_entries() const {
        std::vector<Scalar> d;
        for (int a = 0; a < n(); ++a) d.push_back(m_[a][a]);
        return d;
    }

    TwistMatrix scaled(const Scalar& c) const {
        ScalarMatrix m = m_;
        for (auto& row : m)
            for (auto& x : row) x *= c;
        return TwistMatrix(std::move(m));
    }
    TwistMatrix conjugated(const ScalarMatrix& p, const ScalarMatrix& p_inv) const {
        return TwistMatrix(matrix_multiply(matrix_multiply(p, m_), p_inv));
    }

    /// dim { X : XC = CX } restricted to the block.
    int centralizer_dimension(Block blk) const {
        int k = blk.second - blk.first;
        int dim = k * k;
        ScalarMatrix sys(std::size_t(dim), std::vector<Scalar>(std::size_t(dim), Scalar(0)));
        // row (a,b) of XC - CX = sum_c X_ac C_cb - C_ac X_cb
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                for (int c = 0; c < k; ++c) {
                    sys[a * k + b][a * k + c] += (*this)(blk.first + c, blk.first + b);
                    sys[a * k + b][c * k + b] -= (*this)(blk.first + a, blk.first + c);
                }
        return dim - matrix_rank(std::move(sys));
    }

    bool is_regular() const { return n() == 0 || centralizer_dimension({0, n()}) == n(); }

    /// Zero outside the given diagonal blocks.
    bool is_block_diagonal(const std::vector<Block>& blocks) const {
        std::vector<int> owner(static_cast<std::size_t>(n()));
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (int i = blocks[b].first; i < blocks[b].second; ++i) owner[std::size_t(i)] = int(b);
        for (int a = 0; a < n(); ++a)
            for (int c = 0; c < n(); ++c)
                if (owner[a] != owner[c] && m_[a][c] != 0) return false;
        return true;
    }

    bool is_block_regular(const std::vector<Block>& blocks) const {
        if (!is_block_diagonal(blocks)) return false;
        for (auto& b : blocks)
            if (centralizer_dimension(b) != b.second - b.first) return false;
        return true;
    }

    std::string str() const {
        std::string out = "[";
        for (int a = 0; a < n(); ++a) {
            out += a ? ";" : "";
            for (int b = 0; b < n(); ++b) out += (b ? "," : "") + m_[a][b].get_str();
        }
        return out + "]";
    }

private:
    ScalarMatrix m_;
};

} // namespace bethe
