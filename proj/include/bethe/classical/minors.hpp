#pragma once

#include "bethe/classical/twist.hpp"
#include "bethe/core/combinatorics.hpp"
#include "bethe/core/series_window.hpp"

#include <functional>

namespace bethe {

/// C * M for a matrix of series (C acts on rows).
inline SeriesMatrix<Polynomial> twist_left(const TwistMatrix& c, const SeriesMatrix<Polynomial>& m) {
    int n = c.n();
    SeriesMatrix<Polynomial> out;
    for (int a = 0; a < n; ++a) {
        std::vector<SeriesWindow<Polynomial>> row;
        for (int b = 0; b < n; ++b) {
            std::optional<SeriesWindow<Polynomial>> acc;
            for (int k = 0; k < n; ++k) {
                if (c(a, k) == 0) continue;
                auto term = series_convolve(constant_series(c(a, k)), m[k][b]);
                acc = acc ? series_add(*acc, term) : term;
            }
            if (!acc) acc.emplace(m[a][b].lo(), m[a][b].hi());
            row.push_back(std::move(*acc));
        }
        out.push_back(std::move(row));
    }
    return out;
}

/// Sum over the given row subsets I of det(M_{I,I}), as a series.
inline SeriesWindow<Polynomial> principal_minor_sum(const SeriesMatrix<Polynomial>& m,
                                                    const std::vector<std::vector<int>>& subsets) {
    std::optional<SeriesWindow<Polynomial>> total;
    for (auto& rows : subsets) {
        int k = int(rows.size());
        for (auto& p : permutations(k)) {
            auto sign = constant_series(Scalar(permutation_sign(p)));
            std::optional<SeriesWindow<Polynomial>> prod;
            for (int a = 0; a < k; ++a) {
                const auto& e = m[rows[a]][rows[p[a]]];
                prod = prod ? series_convolve(*prod, e) : series_convolve(sign, e);
            }
            if (!prod) prod = constant_series(Polynomial(1)); // k = 0
            total = total ? series_add(*total, *prod) : *prod;
        }
    }
    return *total;
}

} // namespace bethe
