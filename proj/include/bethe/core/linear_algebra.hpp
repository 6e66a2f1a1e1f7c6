#pragma once

#include "bethe/core/errors.hpp"
#include "bethe/core/polynomial.hpp"
#include "bethe/core/scalar.hpp"

#include <map>
#include <random>
#include <vector>

namespace bethe {

using ScalarMatrix = std::vector<std::vector<Scalar>>;

/// Rank by exact Gaussian elimination (the argument is consumed).
inline int matrix_rank(ScalarMatrix m) {
    int rows = int(m.size());
    if (rows == 0) return 0;
    int cols = int(m[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        for (int r = rank + 1; r < rows; ++r) {
            if (m[r][c] == 0) continue;
            Scalar f = m[r][c] / m[rank][c];
            for (int k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// Inverse of a square matrix; throws PreconditionError when singular.
inline ScalarMatrix matrix_inverse(const ScalarMatrix& a) {
    int n = int(a.size());
    ScalarMatrix m(n, std::vector<Scalar>(2 * n, Scalar(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = a[i][j];
        m[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (m[r][c] != 0) { piv = r; break; }
        if (piv < 0) throw PreconditionError("singular matrix");
        std::swap(m[piv], m[c]);
        Scalar inv = 1 / m[c][c];
        for (auto& x : m[c]) x *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Scalar f = m[r][c];
            for (int k = 0; k < 2 * n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    ScalarMatrix out(n, std::vector<Scalar>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i][j] = m[i][n + j];
    return out;
}

inline ScalarMatrix matrix_multiply(const ScalarMatrix& a, const ScalarMatrix& b) {
    std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    ScalarMatrix out(n, std::vector<Scalar>(m, Scalar(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
        }
    return out;
}

/// Rank of (d f_i / d x_j)(point).
inline int jacobian_rank(const std::vector<Polynomial>& family, const std::vector<VariableId>& vars,
                         const std::map<VariableId, Scalar>& point) {
    ScalarMatrix m(family.size(), std::vector<Scalar>(vars.size(), Scalar(0)));
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = 0; j < vars.size(); ++j) {
            Polynomial d = family[i].derivative(vars[j]);
            if (!d.is_zero()) m[i][j] = d.evaluate(point);
        }
    return matrix_rank(std::move(m));
}

struct JacobianResult {
    int rank = 0;
    int attempts = 0;
    std::map<VariableId, Scalar> point; // point achieving the reported rank
};

/// Random points with coordinates in [-9, 9]; resample (up to `retries` more
/// times) while the rank stays below the family size.
inline JacobianResult jacobian_rank_random(const std::vector<Polynomial>& family,
                                           const std::vector<VariableId>& vars, std::uint64_t seed,
                                           int retries = 8) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-9, 9);
    JacobianResult best;
    for (int attempt = 0; attempt <= retries; ++attempt) {
        std::map<VariableId, Scalar> point;
        for (auto v : vars) point[v] = dist(rng);
        int r = jacobian_rank(family, vars, point);
        best.attempts = attempt + 1;
        if (attempt == 0 || r > best.rank) {
            best.rank = r;
            best.point = std::move(point);
        }
        if (best.rank == int(family.size())) break;
    }
    return best;
}

} // namespace bethe
