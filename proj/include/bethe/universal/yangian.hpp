#pragma once

#include "bethe/classical/loop.hpp"
#include "bethe/classical/shift_vector.hpp"
#include "bethe/classical/slice.hpp"
#include "bethe/core/errors.hpp"
#include "bethe/core/report.hpp"
#include "bethe/core/rewriting.hpp"
#include "bethe/universal/transfer.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <unordered_map>

namespace bethe {

/// Quotient Y_N of the RTT Yangian: generators t_ij^(r), r >= -N.
struct YContext {
    int n = 2;
    int N = 0;
    int rmin = -2; // tau coefficients that may be requested
    int rmax = 4;

    void validate() const {
        if (n < 1) throw PreconditionError("n must be >= 1");
        if (N < 0) throw PreconditionError("N must be >= 0");
        if (rmin > rmax) throw PreconditionError("empty coefficient window");
    }
};

struct TGen {
    int i, j, r;
};

/// Ids ordered by (level, row, col).
inline GeneratorId tgen_id(const TGen& g, const YContext& ctx) {
    if (g.r < -ctx.N) throw PreconditionError("t level below floor -N");
    if (g.i < 1 || g.i > ctx.n || g.j < 1 || g.j > ctx.n) throw PreconditionError("t index out of range");
    return GeneratorId((g.r + ctx.N) * ctx.n * ctx.n + (g.i - 1) * ctx.n + (g.j - 1));
}

inline TGen tgen_decode(GeneratorId id, const YContext& ctx) {
    int nn = ctx.n * ctx.n;
    int lev = int(id) / nn, rem = int(id) % nn;
    return TGen{rem / ctx.n + 1, rem % ctx.n + 1, lev - ctx.N};
}

/// Telescoped commutator
///   [t_ij^(p), t_kl^(q)] = sum_{m=-N}^{p-1} t_kj^(p+q-1-m) t_il^(m) - t_kj^(m) t_il^(p+q-1-m),
/// terms below the floor dropped.
inline NCExpression derived_commutator(const TGen& a, const TGen& b, const YContext& ctx) {
    if (a.r < -ctx.N || b.r < -ctx.N) throw PreconditionError("level below floor");
    NCExpression out;
    for (int m = -ctx.N; m <= a.r - 1; ++m) {
        int s = a.r + b.r - 1 - m;
        if (s < -ctx.N) continue;
        out.add_term({tgen_id({b.i, a.j, s}, ctx), tgen_id({a.i, b.j, m}, ctx)}, 1);
        out.add_term({tgen_id({b.i, a.j, m}, ctx), tgen_id({a.i, b.j, s}, ctx)}, -1);
    }
    return out;
}

/// Rewriting rules of Y_N with a memoized commutator table.
class RttRules {
public:
    explicit RttRules(YContext ctx) : ctx_(ctx), mutex_(std::make_unique<std::mutex>()) {}

    const YContext& context() const { return ctx_; }

    const NCExpression& swap_correction(GeneratorId a, GeneratorId b) {
        std::uint64_t key = (std::uint64_t(a) << 32) | b;
        {
            std::lock_guard lock(*mutex_);
            auto it = table_.find(key);
            if (it != table_.end()) return it->second;
        }
        NCExpression c = derived_commutator(tgen_decode(a, ctx_), tgen_decode(b, ctx_), ctx_);
        std::lock_guard lock(*mutex_);
        return table_.try_emplace(key, std::move(c)).first->second;
    }

    /// Snapshot of the memoized table, sorted by key.
    std::map<std::uint64_t, NCExpression> table() const {
        std::lock_guard lock(*mutex_);
        return {table_.begin(), table_.end()};
    }
    void preload(const std::map<std::uint64_t, NCExpression>& entries) {
        std::lock_guard lock(*mutex_);
        for (auto& [k, v] : entries) table_.try_emplace(k, v);
    }

private:
    YContext ctx_;
    std::unique_ptr<std::mutex> mutex_;
    std::unordered_map<std::uint64_t, NCExpression> table_;
};

/// Y_N with PBW normal forms and Bethe generators.
class UniversalYangian {
public:
    explicit UniversalYangian(YContext ctx) : ctx_(ctx), engine_(RttRules(ctx)) { ctx_.validate(); }

    const YContext& context() const { return ctx_; }
    RewritingEngine<RttRules>& engine() { return engine_; }
    RttRules& rules() { return engine_.rules(); }

    GeneratorId gen(int i, int j, int r) const { return tgen_id({i, j, r}, ctx_); }
    NCExpression t(int i, int j, int r) const {
        if (r < -ctx_.N) return NCExpression();
        return NCExpression::letter(gen(i, j, r));
    }
    TGen decode(GeneratorId g) const { return tgen_decode(g, ctx_); }

    GeneratorNamer namer() const {
        return [ctx = ctx_](GeneratorId g) {
            auto d = tgen_decode(g, ctx);
            return "t(" + std::to_string(d.i) + "," + std::to_string(d.j) + ";" + std::to_string(d.r) + ")";
        };
    }

    NCExpression normal_form(const NCExpression& x) { return engine_.normal_form(x); }
    NCExpression multiply(const NCExpression& a, const NCExpression& b) { return engine_.multiply(a, b); }
    NCExpression commutator(const NCExpression& a, const NCExpression& b) { return engine_.commutator(a, b); }

    /// u^{-r} coefficient of tau_k(u, C), in normal form.
    const NCExpression& tau(const TwistMatrix& c, int k, int r) {
        if (c.n() != ctx_.n) throw PreconditionError("twist size differs from n");
        if (k < 1 || k > ctx_.n) throw PreconditionError("k out of range");
        if (r < ctx_.rmin || r > ctx_.rmax)
            throw WindowError("tau coefficient " + std::to_string(r) + " outside the window");
        auto key = std::make_tuple(c.str(), k, r);
        auto it = tau_memo_.find(key);
        if (it != tau_memo_.end()) return it->second;
        NCExpression raw = transfer_trace_coefficient(c, k, r, series());
        return tau_memo_.emplace(key, normal_form(raw)).first->second;
    }

    ShiftedSeries& series() {
        if (!series_)
            series_ = std::make_unique<ShiftedSeries>(
                [this](int i, int j, int r) { return t(i, j, r); }, -ctx_.N);
        return *series_;
    }

private:
    YContext ctx_;
    RewritingEngine<RttRules> engine_;
    std::unique_ptr<ShiftedSeries> series_;
    std::map<std::tuple<std::string, int, int>, NCExpression> tau_memo_;
};

inline NCExpression normal_form(const NCExpression& x, UniversalYangian& y) { return y.normal_form(x); }

inline NCExpression tau_universal(const TwistMatrix& c, int k, int r, UniversalYangian& y) { return y.tau(c, k, r); }

/// deg_mu t_ij^(r) = r + d_j.
inline long mu_twisted_degree(const TGen& g, const ShiftVector& mu) { return g.r + mu.d(g.j); }

struct QuantumSymbol {
    Polynomial symbol;
    long degree = kMinusInfinity;
};

/// Top mu-degree words mapped to commuting loop coordinates.
inline QuantumSymbol symbol_quantum(const NCExpression& x, const ShiftVector& mu, const YContext& ctx) {
    QuantumSymbol out;
    auto word_degree = [&](const Word& w) {
        long d = 0;
        for (auto g : w) d += mu_twisted_degree(tgen_decode(g, ctx), mu);
        return d;
    };
    for (auto& [w, c] : x.terms()) out.degree = std::max(out.degree, word_degree(w));
    for (auto& [w, c] : x.terms()) {
        if (word_degree(w) != out.degree) continue;
        std::vector<Monomial::Factor> fs;
        for (auto g : w) {
            auto d = tgen_decode(g, ctx);
            fs.emplace_back(VariableId::make(VarFamily::Delta, d.i, d.j, d.r), 1);
        }
        out.symbol.add_term(Monomial::from_factors(std::move(fs)), c);
    }
    if (out.symbol.is_zero()) out.degree = kMinusInfinity;
    return out;
}

/// Evaluation Y_0 -> O(Mat_n): t_ij^(r) -> delta_{0,r} Delta_ij.
inline Polynomial evaluate_to_functions(const NCExpression& x, const YContext& ctx) {
    if (ctx.N != 0) throw PreconditionError("evaluation is defined on Y_0");
    Polynomial out;
    for (auto& [w, c] : x.terms()) {
        std::vector<Monomial::Factor> fs;
        bool zero = false;
        for (auto g : w) {
            auto d = tgen_decode(g, ctx);
            if (d.r != 0) { zero = true; break; }
            fs.emplace_back(VariableId::make(VarFamily::Delta, d.i, d.j, 0), 1);
        }
        if (!zero) out.add_term(Monomial::from_factors(std::move(fs)), c);
    }
    return out;
}

/// Y_N -> Y_0, t^(r) -> t^(r+N).
inline NCExpression shift_iso(const NCExpression& x, const YContext& from) {
    YContext to = from;
    to.N = 0;
    NCExpression out;
    for (auto& [w, c] : x.terms()) {
        Word v;
        for (auto g : w) {
            auto d = tgen_decode(g, from);
            v.push_back(tgen_id({d.i, d.j, d.r + from.N}, to));
        }
        out.add_term(v, c);
    }
    return out;
}

/// Element of Y_0 tensor Y_0.
class TensorSquare {
public:
    using Key = std::pair<Word, Word>;
    const std::map<Key, Scalar>& terms() const { return terms_; }
    void add_term(const Key& k, const Scalar& c) {
        if (c == 0) return;
        auto& x = terms_[k];
        x += c;
        if (x == 0) terms_.erase(k);
    }
    friend TensorSquare operator*(const TensorSquare& a, const TensorSquare& b) {
        TensorSquare out;
        for (auto& [ka, ca] : a.terms_)
            for (auto& [kb, cb] : b.terms_) {
                Word l = ka.first, r = ka.second;
                l.insert(l.end(), kb.first.begin(), kb.first.end());
                r.insert(r.end(), kb.second.begin(), kb.second.end());
                out.add_term({l, r}, ca * cb);
            }
        return out;
    }
    bool operator==(const TensorSquare& o) const { return terms_ == o.terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Normal form in each tensor factor.
    TensorSquare normal_form(UniversalYangian& y) const {
        TensorSquare out;
        for (auto& [k, c] : terms_) {
            auto l = y.engine().normal_form_word(k.first);
            auto r = y.engine().normal_form_word(k.second);
            for (auto& [wl, cl] : l.terms())
                for (auto& [wr, cr] : r.terms()) out.add_term({wl, wr}, c * cl * cr);
        }
        return out;
    }

private:
    std::map<Key, Scalar> terms_;
};

/// Delta(t_ij^(r)) = sum_k sum_{p+q=r} t_ik^(p) (x) t_kj^(q) on Y_0, extended multiplicatively.
inline TensorSquare coproduct(const NCExpression& x, UniversalYangian& y) {
    const YContext& ctx = y.context();
    if (ctx.N != 0) throw PreconditionError("coproduct is defined on Y_0");
    TensorSquare out;
    for (auto& [w, c] : x.terms()) {
        TensorSquare acc;
        acc.add_term({Word{}, Word{}}, c);
        for (auto g : w) {
            auto d = tgen_decode(g, ctx);
            TensorSquare img;
            for (int k = 1; k <= ctx.n; ++k)
                for (int p = 0; p <= d.r; ++p)
                    img.add_term({Word{y.gen(d.i, k, p)}, Word{y.gen(k, d.j, d.r - p)}}, 1);
            acc = acc * img;
        }
        for (auto& [k, v] : acc.terms()) out.add_term(k, v);
    }
    return out;
}

/// Pairs (k,r,l,s) whose tau commutators vanish in normal form.
inline Report verify_tau_commutativity(const TwistMatrix& c, UniversalYangian& y, const std::vector<SigmaPair>& pairs) {
    Report rep;
    const auto& ctx = y.context();
    for (auto& p : pairs) {
        CheckRecord rec;
        rec.id = "universal.tau-commutativity.n" + std::to_string(ctx.n) + ".N" + std::to_string(ctx.N) + ".k" +
                 std::to_string(p.k) + "r" + std::to_string(p.r) + ".l" + std::to_string(p.l) + "s" +
                 std::to_string(p.s);
        rec.claim = "coefficients of the universal Bethe generators pairwise commute";
        rec.inputs = Json{{"n", ctx.n}, {"N", ctx.N}, {"C", c.str()}, {"k", p.k}, {"r", p.r}, {"l", p.l}, {"s", p.s}};
        NCExpression comm = y.commutator(y.tau(c, p.k, p.r), y.tau(c, p.l, p.s));
        rec.status = comm.is_zero() ? Status::Pass : Status::Fail;
        if (!comm.is_zero()) rec.witness["commutator"] = to_json(comm, y.namer());
        rep.add(std::move(rec));
    }
    return rep;
}


/// Random word of 1..max_len generators with levels in [-N, max_level].
inline NCExpression random_tword(UniversalYangian& y, std::mt19937_64& rng, int max_len, int max_level) {
    const auto& c = y.context();
    std::uniform_int_distribution<int> idx(1, c.n), lev(-c.N, max_level), len(1, max_len);
    Word w;
    int l = len(rng);
    for (int a = 0; a < l; ++a) {
        int i = idx(rng), j = idx(rng), r = lev(rng);
        w.push_back(y.gen(i, j, r));
    }
    return NCExpression::word(w);
}

/// NF(NF(ab)c) = NF(a NF(bc)) on seeded random word triples.
inline Report verify_confluence(UniversalYangian& y, int count, std::uint64_t seed, int max_len = 3,
                                int max_level = 1) {
    const auto& ctx = y.context();
    std::mt19937_64 rng(seed);
    int bad = 0;
    Json examples = Json::array();
    for (int t = 0; t < count; ++t) {
        NCExpression a = random_tword(y, rng, max_len, max_level);
        NCExpression b = random_tword(y, rng, max_len, max_level);
        NCExpression c = random_tword(y, rng, max_len, max_level);
        NCExpression left = y.normal_form(y.normal_form(a * b) * c);
        NCExpression right = y.normal_form(a * y.normal_form(b * c));
        if (!(left == right)) {
            ++bad;
            if (examples.size() < 5) examples.push_back((a * b * c).str(y.namer()));
        }
    }
    Report rep;
    CheckRecord rec;
    rec.id = "universal.confluence.n" + std::to_string(ctx.n) + ".N" + std::to_string(ctx.N);
    rec.claim = "ordered monomials in the truncated Yangian are a basis";
    rec.inputs = Json{{"n", ctx.n}, {"N", ctx.N}, {"triples", count}, {"seed", seed}, {"max_length", max_len},
                      {"levels", Json::array({-ctx.N, max_level})}};
    rec.status = bad == 0 ? Status::Pass : Status::Fail;
    rec.witness = Json{{"mismatches", bad}};
    if (bad) rec.witness["examples"] = examples;
    rep.add(std::move(rec));
    return rep;
}

/// On seeded random pairs of normal-ordered words a, b: [a, b] has filtered
/// degree <= deg a + deg b - 1 and its top part has symbol {sym a, sym b}.
inline Report verify_quantization(UniversalYangian& y, const ShiftVector& mu, int count, std::uint64_t seed,
                                  int max_len = 2, int max_level = 3) {
    const auto& ctx = y.context();
    LoopPoissonAlgebra alg(LoopContext{ctx.n, ctx.N, 0, std::max(4, max_level + 1)});
    std::mt19937_64 rng(seed);
    int bad = 0, nonzero = 0;
    Json examples = Json::array();
    for (int t = 0; t < count; ++t) {
        NCExpression a = y.normal_form(random_tword(y, rng, max_len, max_level));
        NCExpression b = y.normal_form(random_tword(y, rng, max_len, max_level));
        auto sa = symbol_quantum(a, mu, ctx), sb = symbol_quantum(b, mu, ctx);
        long target = sa.degree + sb.degree - 1;
        NCExpression comm = y.commutator(a, b), top;
        bool bounded = true;
        for (auto& [w, x] : comm.terms()) {
            long d = 0;
            for (auto g : w) d += mu_twisted_degree(y.decode(g), mu);
            if (d > target) bounded = false;
            if (d == target) top.add_term(w, x);
        }
        Polynomial br = alg.bracket(sa.symbol, sb.symbol);
        if (!br.is_zero()) ++nonzero;
        if (!bounded || !(symbol_quantum(top, mu, ctx).symbol == br)) {
            ++bad;
            if (examples.size() < 5) examples.push_back(a.str(y.namer()) + " | " + b.str(y.namer()));
        }
    }
    Report rep;
    CheckRecord rec;
    rec.id = "universal.quantization.n" + std::to_string(ctx.n) + ".N" + std::to_string(ctx.N) + ".mu" + mu.str();
    rec.claim = "the associated graded of the truncated Yangian is the loop Poisson algebra";
    rec.inputs = Json{{"n", ctx.n}, {"N", ctx.N}, {"mu", mu.values()}, {"pairs", count}, {"seed", seed}};
    rec.status = bad == 0 ? Status::Pass : Status::Fail;
    rec.witness = Json{{"mismatches", bad}, {"nonzero_brackets", nonzero}};
    if (bad) rec.witness["examples"] = examples;
    rep.add(std::move(rec));
    return rep;
}

} // namespace bethe
