#pragma once

#include "bethe/classical/minors.hpp"
#include "bethe/classical/twist.hpp"
#include "bethe/core/errors.hpp"
#include "bethe/core/linear_algebra.hpp"
#include "bethe/core/polynomial.hpp"
#include "bethe/core/report.hpp"

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace bethe {

/// Coordinate ring of Mat_n((z^{-1})) with levels r >= -N.
struct LoopContext {
    int n = 2;
    int N = 0;
    int rmin = 0; // requested coefficient window for sigma
    int rmax = 4;

    void validate() const {
        if (n < 1) throw PreconditionError("n must be >= 1");
        if (N < 0) throw PreconditionError("N must be >= 0");
        if (rmin > rmax) throw PreconditionError("empty coefficient window");
    }
};

/// Delta_ij^(r) as a variable (1-based i, j). Throws below the level floor.
inline VariableId delta_var(int i, int j, int r, const LoopContext& ctx) {
    if (r < -ctx.N) throw PreconditionError("Delta level below floor -N");
    return VariableId::make(VarFamily::Delta, i, j, r);
}

/// Delta_ij^(r) as a polynomial; zero below the level floor.
inline Polynomial delta(int i, int j, int r, const LoopContext& ctx) {
    if (r < -ctx.N) return Polynomial();
    return Polynomial::variable(VariableId::make(VarFamily::Delta, i, j, r));
}

/// Bracket of two loop coordinates. Telescoping the defining recursion down to
/// the level floor gives
///   {D_ij^(p), D_kl^(q)} = sum_{m=-N}^{p-1} D_kj^(p+q-1-m) D_il^(m) - D_kj^(m) D_il^(p+q-1-m).
inline Polynomial poisson_bracket_generators(VariableId a, VariableId b, const LoopContext& ctx) {
    if (a.family() != VarFamily::Delta || b.family() != VarFamily::Delta)
        throw DomainError("bracket is defined on loop coordinates only");
    int i = a.i(), j = a.j(), p = a.level();
    int k = b.i(), l = b.j(), q = b.level();
    if (p < -ctx.N || q < -ctx.N) throw PreconditionError("level below floor");
    Polynomial out;
    for (int m = -ctx.N; m <= p - 1; ++m) {
        int s = p + q - 1 - m;
        out += delta(k, j, s, ctx) * delta(i, l, m, ctx);
        out -= delta(k, j, m, ctx) * delta(i, l, s, ctx);
    }
    return out;
}

/// Poisson algebra structure with a memoized generator bracket.
class LoopPoissonAlgebra {
public:
    explicit LoopPoissonAlgebra(LoopContext ctx) : ctx_(ctx) { ctx_.validate(); }
    const LoopContext& context() const { return ctx_; }

    const Polynomial& bracket(VariableId a, VariableId b) {
        auto key = std::make_pair(a, b);
        std::lock_guard lock(mutex_);
        auto it = memo_.find(key);
        if (it == memo_.end()) it = memo_.emplace(key, poisson_bracket_generators(a, b, ctx_)).first;
        return it->second;
    }

    /// Leibniz extension: sum_{x,y} (df/dx)(dg/dy) {x,y}.
    Polynomial bracket(const Polynomial& f, const Polynomial& g) {
        Polynomial out;
        auto vf = f.variables(), vg = g.variables();
        std::map<VariableId, Polynomial> dg;
        for (auto y : vg) dg.emplace(y, g.derivative(y));
        for (auto x : vf) {
            Polynomial dfx = f.derivative(x);
            for (auto y : vg) {
                const Polynomial& xy = bracket(x, y);
                if (xy.is_zero()) continue;
                out += dfx * dg.at(y) * xy;
            }
        }
        return out;
    }

private:
    LoopContext ctx_;
    std::mutex mutex_;
    std::map<std::pair<VariableId, VariableId>, Polynomial> memo_;
};

inline Polynomial poisson_bracket(const Polynomial& f, const Polynomial& g, const LoopContext& ctx) {
    LoopPoissonAlgebra alg(ctx);
    return alg.bracket(f, g);
}

/// g(z) with entries certified up to z^{-hi}.
inline SeriesMatrix<Polynomial> loop_matrix(const LoopContext& ctx, int hi) {
    SeriesMatrix<Polynomial> g;
    for (int i = 1; i <= ctx.n; ++i) {
        std::vector<SeriesWindow<Polynomial>> row;
        for (int j = 1; j <= ctx.n; ++j) {
            SeriesWindow<Polynomial> s(-ctx.N, std::max(hi, -ctx.N));
            for (int r = -ctx.N; r <= hi; ++r) s.set(r, delta(i, j, r, ctx));
            row.push_back(std::move(s));
        }
        g.push_back(std::move(row));
    }
    return g;
}

/// z^{-r} coefficient of e_k(C g(z)) = sum of principal k-minors.
inline Polynomial sigma_universal(const TwistMatrix& c, int k, int r, const LoopContext& ctx) {
    ctx.validate();
    if (c.n() != ctx.n) throw PreconditionError("twist size differs from n");
    if (k < 1 || k > ctx.n) throw PreconditionError("k out of range");
    if (r < ctx.rmin || r > ctx.rmax)
        throw WindowError("sigma coefficient " + std::to_string(r) + " outside the window");
    if (r < -k * ctx.N) return Polynomial();
    // k factors of lo = -N shrink the window by (k-1)N.
    auto g = loop_matrix(ctx, r + (k - 1) * ctx.N);
    auto m = twist_left(c, g);
    return principal_minor_sum(m, k_subsets(ctx.n, k)).coefficient(r);
}

struct SigmaPair {
    int k, r, l, s;
};

/// All pairs with k <= l and (k,r) <= (l,s) over the given ranges.
inline std::vector<SigmaPair> sigma_pair_grid(int n, int rlo, int rhi) {
    std::vector<SigmaPair> out;
    for (int k = 1; k <= n; ++k)
        for (int r = rlo; r <= rhi; ++r)
            for (int l = k; l <= n; ++l)
                for (int s = (l == k ? r : rlo); s <= rhi; ++s) out.push_back({k, r, l, s});
    return out;
}

inline Report verify_poisson_commutativity(const TwistMatrix& c, const LoopContext& ctx,
                                           const std::vector<SigmaPair>& pairs) {
    Report rep;
    LoopPoissonAlgebra alg(ctx);
    std::map<std::pair<int, int>, Polynomial> sig;
    auto sigma = [&](int k, int r) -> const Polynomial& {
        auto it = sig.find({k, r});
        if (it == sig.end()) it = sig.emplace(std::make_pair(k, r), sigma_universal(c, k, r, ctx)).first;
        return it->second;
    };
    for (auto& p : pairs) {
        CheckRecord rec;
        rec.id = "classical.poisson-commutativity.n" + std::to_string(ctx.n) + ".N" + std::to_string(ctx.N) +
                 ".k" + std::to_string(p.k) + "r" + std::to_string(p.r) + ".l" + std::to_string(p.l) + "s" +
                 std::to_string(p.s);
        rec.claim = "classical universal Bethe subalgebra is Poisson commutative";
        rec.inputs = Json{{"n", ctx.n}, {"N", ctx.N}, {"C", c.str()}, {"k", p.k}, {"r", p.r}, {"l", p.l}, {"s", p.s}};
        Polynomial b = alg.bracket(sigma(p.k, p.r), sigma(p.l, p.s));
        rec.status = b.is_zero() ? Status::Pass : Status::Fail;
        if (!b.is_zero()) rec.witness["bracket"] = to_json(b);
        rep.add(std::move(rec));
    }
    return rep;
}

inline Report verify_universal_independence(const TwistMatrix& c, const LoopContext& ctx, int degree_cap,
                                            std::uint64_t seed = 1) {
    if (c.is_diagonal()) {
        auto d = c.diagonal_entries();
        for (std::size_t a = 0; a < d.size(); ++a)
            for (std::size_t b = a + 1; b < d.size(); ++b)
                if (d[a] == d[b]) throw PreconditionError("twist is not regular: repeated diagonal entry");
    } else if (!c.is_regular()) {
        throw PreconditionError("twist is not regular");
    }
    std::vector<Polynomial> family;
    Json members = Json::array();
    std::set<VariableId> vars;
    for (int k = 1; k <= ctx.n; ++k)
        for (int r = ctx.rmin; r <= ctx.rmax; ++r) {
            Polynomial s = sigma_universal(c, k, r, ctx);
            if (s.is_zero() || s.total_degree() > degree_cap) continue;
            for (auto v : s.variables()) vars.insert(v);
            family.push_back(std::move(s));
            members.push_back(Json::array({k, r}));
        }
    std::vector<VariableId> vlist(vars.begin(), vars.end());
    auto res = jacobian_rank_random(family, vlist, seed);
    CheckRecord rec;
    rec.id = "classical.universal-independence.n" + std::to_string(ctx.n) + ".N" + std::to_string(ctx.N);
    rec.claim = "coefficients of the classical universal Bethe generators are algebraically independent";
    rec.inputs = Json{{"n", ctx.n}, {"N", ctx.N}, {"C", c.str()}, {"window", {ctx.rmin, ctx.rmax}},
                      {"degree_cap", degree_cap}};
    rec.status = res.rank == int(family.size()) ? Status::Pass : Status::Fail;
    rec.witness = Json{{"family", members}, {"family_size", family.size()}, {"rank", res.rank},
                       {"variables", vlist.size()}, {"attempts", res.attempts}};
    Report rep;
    rep.add(std::move(rec));
    return rep;
}

} // namespace bethe
