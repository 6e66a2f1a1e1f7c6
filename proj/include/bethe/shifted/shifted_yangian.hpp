#pragma once

#include "bethe/shifted/alphabet.hpp"
#include "bethe/universal/transfer.hpp"

#include <map>
#include <memory>
#include <tuple>

namespace bethe {

struct ShiftedContext {
    ShiftVector mu;
    int rmax = 6; // highest certified u^{-r} coefficient of tau
};

/// Dtilde_i^(level) as a polynomial in the g_i coordinates, from D(u) Dtilde(u) = 1.
inline Polynomial dtilde_expand(int i, int level, const ShiftVector& mu, int cap = 256) {
    int d = mu.d(i);
    if (level < d) return Polynomial();
    if (level - d > cap) throw WindowError("dtilde recursion depth exceeds the cap");
    auto g = [&](int s) -> Polynomial {
        if (s < -d) return Polynomial();
        if (s == -d) return Polynomial(1);
        return Polynomial::variable(gbar_var(i, s));
    };
    std::vector<Polynomial> dt{Polynomial(1)}; // dt[m] = Dtilde^(d+m)
    for (int m = 1; m <= level - d; ++m) {
        Polynomial acc;
        for (int t = 0; t < m; ++t) acc -= dt[std::size_t(t)] * g(m - t - d);
        dt.push_back(std::move(acc));
    }
    return dt.back();
}

/// Commutative polynomial in g coordinates as a sum of sorted G-words.
inline NCExpression cartan_to_nc(const Polynomial& p) {
    NCExpression out;
    for (auto& [m, c] : p.terms()) {
        Word w;
        for (auto& [v, e] : m.factors()) {
            if (v.family() != VarFamily::SliceG) throw DomainError("expected g coordinates");
            for (unsigned k = 0; k < e; ++k) w.push_back(pbw_id({PBWKind::G, v.i(), 0, int(v.level())}));
        }
        std::sort(w.begin(), w.end());
        out.add_term(w, c);
    }
    return out;
}

/// Lowest u-exponent index where t_ij can be nonzero.
inline int gauss_floor(int i, int j, const ShiftVector& mu) {
    int best = INT_MAX;
    for (int k = std::max(i, j); k <= mu.n(); ++k) best = std::min(best, -mu.d(k) + (i < k) + (j < k));
    return best;
}

/// u^{-r} coefficient of sum_k e_ik(u) g_k(u) f_kj(u); each summand already E*G*F ordered.
inline NCExpression gauss_t(int i, int j, int r, const ShiftVector& mu) {
    int n = mu.n();
    if (i < 1 || j < 1 || i > n || j > n) throw PreconditionError("index out of range");
    NCExpression out;
    for (int k = std::max(i, j); k <= n; ++k) {
        int le = i < k ? 1 : 0, lf = j < k ? 1 : 0, lg = -mu.d(k);
        for (int a = le; a + lg + lf <= r; ++a) {
            NCExpression e = e_letter(i, k, a);
            if (e.is_zero()) continue;
            for (int c = lf; a + lg + c <= r; ++c) {
                NCExpression f = f_letter(k, j, c);
                if (f.is_zero()) continue;
                out += e * g_letter(k, r - a - c, mu) * f;
            }
        }
    }
    return out;
}

/// Free-alphabet model of Y_mu(gl_n): T = E G F, no relations imposed.
class ShiftedYangian {
public:
    explicit ShiftedYangian(ShiftedContext ctx) : ctx_(std::move(ctx)) {
        margin_ = (ctx_.mu.n() - 1) * std::max(0, ctx_.mu.max_d());
        series_ = std::make_unique<ShiftedSeries>(
            [this](int i, int j, int r) { return t(i, j, r); }, -ctx_.mu.max_d());
    }

    const ShiftedContext& context() const { return ctx_; }
    const ShiftVector& mu() const { return ctx_.mu; }
    int n() const { return ctx_.mu.n(); }

    NCExpression t(int i, int j, int r) const {
        if (r > ctx_.rmax + margin_)
            throw WindowError("t coefficient " + std::to_string(r) + " outside the window");
        return gauss_t(i, j, r, ctx_.mu);
    }

    /// u^{-r} coefficient of tau_{mu,k}(u, C), as a free expression.
    const NCExpression& tau(const TwistMatrix& c, int k, int r) {
        if (c.n() != n()) throw PreconditionError("twist size differs from n");
        if (k < 1 || k > n()) throw PreconditionError("k out of range");
        if (r > ctx_.rmax) throw WindowError("tau coefficient " + std::to_string(r) + " outside the window");
        auto key = std::make_tuple(c.str(), k, r);
        std::lock_guard lock(*mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        return memo_.emplace(key, transfer_trace_coefficient(c, k, r, *series_)).first->second;
    }

private:
    ShiftedContext ctx_;
    int margin_ = 0;
    std::unique_ptr<ShiftedSeries> series_;
    std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
    std::map<std::tuple<std::string, int, int>, NCExpression> memo_;
};

inline NCExpression tau_shifted(const TwistMatrix& c, int k, int r, ShiftedYangian& y) { return y.tau(c, k, r); }

struct ShiftedSymbol {
    Polynomial symbol;
    long degree = kMinusInfinity;
    bool inconclusive = false; // top words cancel commutatively
};

/// Commutative image of the top-degree words.
inline ShiftedSymbol symbol_shifted(const NCExpression& x, const ShiftVector& mu) {
    ShiftedSymbol out;
    auto word_degree = [&](const Word& w) {
        long d = 0;
        for (auto g : w) d += pbw_degree(g, mu);
        return d;
    };
    for (auto& [w, c] : x.terms()) out.degree = std::max(out.degree, word_degree(w));
    for (auto& [w, c] : x.terms()) {
        if (word_degree(w) != out.degree) continue;
        std::vector<Monomial::Factor> fs;
        for (auto g : w) fs.emplace_back(slice_variable(g), 1);
        out.symbol.add_term(Monomial::from_factors(std::move(fs)), c);
    }
    if (out.symbol.is_zero() && !x.is_zero()) out.inconclusive = true;
    if (out.symbol.is_zero()) out.degree = kMinusInfinity;
    return out;
}

/// Commutative image of every word.
inline Polynomial abelianize(const NCExpression& x) {
    Polynomial out;
    for (auto& [w, c] : x.terms()) {
        std::vector<Monomial::Factor> fs;
        for (auto g : w) fs.emplace_back(slice_variable(g), 1);
        out.add_term(Monomial::from_factors(std::move(fs)), c);
    }
    return out;
}

} // namespace bethe
