#pragma once

#include "bethe/classical/twist.hpp"
#include "bethe/core/nc_expression.hpp"
#include "bethe/universal/tensor.hpp"

#include <functional>
#include <map>
#include <tuple>

namespace bethe {

/// Supplies the coefficient of u^{-level} of t_ij(u) (1-based i, j).
using LevelCoefficient = std::function<NCExpression(int i, int j, int level)>;

/// Memoized coefficients of u^{-R} in t_ij(u - s), re-expanded binomially:
///   (u - s)^{-rho} = sum_{m >= 0} binom(-rho, m) (-s)^m u^{-rho-m}.
class ShiftedSeries {
public:
    ShiftedSeries(LevelCoefficient t, int floor) : t_(std::move(t)), floor_(floor) {}

    int floor() const { return floor_; }

    const NCExpression& coefficient(int i, int j, int s, int R) {
        auto key = std::make_tuple(i, j, s, R);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        NCExpression out;
        for (int m = 0; R - m >= floor_; ++m) {
            int rho = R - m;
            Scalar c = binomial(-rho, m) * power(Scalar(-s), unsigned(m));
            if (s == 0 && m > 0) break;
            if (c == 0) continue;
            out.add_scaled(level(i, j, rho), c);
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

private:
    const NCExpression& level(int i, int j, int r) {
        auto key = std::make_tuple(i, j, r);
        auto it = levels_.find(key);
        if (it == levels_.end()) it = levels_.emplace(key, t_(i, j, r)).first;
        return it->second;
    }

    LevelCoefficient t_;
    int floor_;
    std::map<std::tuple<int, int, int, int>, NCExpression> memo_;
    std::map<std::tuple<int, int, int>, NCExpression> levels_;
};

/// u^{-r} coefficient of tr A_k C_1...C_k T_1(u) T_2(u-1) ... T_k(u-k+1),
/// before any rewriting. tr(M X) = sum_{a,b} M_{a,b} X_{b,a} with
/// X_{b,a} = t_{b1 a1}(u) t_{b2 a2}(u-1) ... in this order.
inline NCExpression transfer_trace_coefficient(const TwistMatrix& c, int k, int r, ShiftedSeries& series) {
    int n = c.n();
    TensorOperator m = antisymmetrizer(k, n) * TensorOperator::tensor_power(c, k);
    int floor = series.floor();
    NCExpression out;
    std::vector<int> parts(static_cast<std::size_t>(k));
    for (auto& [rc, coef] : m.entries()) {
        auto a = m.decode(rc.first), b = m.decode(rc.second);
        // compositions r = R_1 + ... + R_k with R_p >= floor
        std::function<void(int, int, NCExpression)> rec = [&](int p, int remaining, NCExpression acc) {
            if (p == k - 1) {
                if (remaining < floor) return;
                const auto& f = series.coefficient(b[std::size_t(p)] + 1, a[std::size_t(p)] + 1, p, remaining);
                if (f.is_zero()) return;
                out.add_scaled(acc * f, coef);
                return;
            }
            int rest = k - 1 - p;
            for (int R = floor; remaining - R >= rest * floor; ++R) {
                const auto& f = series.coefficient(b[std::size_t(p)] + 1, a[std::size_t(p)] + 1, p, R);
                if (f.is_zero()) continue;
                rec(p + 1, remaining - R, acc * f);
            }
        };
        rec(0, r, NCExpression(1));
    }
    return out;
}

} // namespace bethe
