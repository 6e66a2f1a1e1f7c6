#pragma once

#include "bethe/classical/slice.hpp"
#include "bethe/core/qseries.hpp"
#include "bethe/core/report.hpp"

namespace bethe {

/// Degrees r - <omega_k^*, mu> of the generators sigma_{mu,k}^(r), r above the pairing.
inline std::vector<int> bethe_generator_degrees(int n, int cap) {
    std::vector<int> out;
    for (int k = 1; k <= n; ++k)
        for (int d = 1; d <= cap; ++d) out.push_back(d);
    return out;
}

/// dim_q of the shifted classical Bethe algebra against n partition towers.
/// Generator degrees up to `measured_cap` are measured on the actual sigma
/// polynomials; above it the degree formula is used.
inline Report poincare_compare(const TwistMatrix& c, const ClassicalSlice& slice, int cap, int measured_cap) {
    const ShiftVector& mu = slice.mu();
    int n = mu.n();
    std::vector<int> degrees;
    Json measured = Json::array();
    bool measured_ok = true;
    for (int k = 1; k <= n; ++k) {
        int w = mu.omega_star(k);
        for (int d = 1; d <= cap; ++d) {
            if (d <= measured_cap) {
                long deg = filtration_degree(slice.sigma(c, k, w + d), mu);
                measured.push_back(Json::array({k, w + d, deg == kMinusInfinity ? Json("-inf") : Json(deg)}));
                if (deg != d) measured_ok = false;
                if (deg > 0) degrees.push_back(int(deg));
            } else {
                degrees.push_back(d);
            }
        }
    }
    QSeries bethe = qseries_free_algebra(degrees, cap);
    QSeries expect = qseries_partition_product(n, cap);
    Report rep;
    rep.add(CheckRecord{"poincare.classical.n" + std::to_string(n) + ".mu" + mu.str(),
                        "Poincare series of the shifted classical Bethe algebra is that of n free towers",
                        Json{{"n", n}, {"mu", mu.values()}, {"C", c.str()}, {"cap", cap},
                             {"measured_cap", measured_cap}},
                        bethe == expect && measured_ok ? Status::Pass : Status::Fail,
                        Json{{"bethe", to_json(bethe)}, {"partition_product", to_json(expect)},
                             {"measured_degrees", measured}}});
    return rep;
}

} // namespace bethe
