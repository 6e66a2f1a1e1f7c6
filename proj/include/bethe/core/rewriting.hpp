#pragma once

#include "bethe/core/nc_expression.hpp"

#include <concepts>
#include <mutex>
#include <unordered_map>

namespace bethe {

/// A rewriting rule set over an alphabet whose PBW order is the integer order
/// of GeneratorIds. For a > b, swap_correction(a, b) returns c with ab = ba + c.
template <class R>
concept RewriteRules = requires(R& r, GeneratorId a, GeneratorId b) {
    { r.swap_correction(a, b) } -> std::convertible_to<const NCExpression&>;
};

/// Straightening to weakly increasing words. Left multiplication of a letter
/// onto a sorted word is memoized; everything else reduces to that.
///
/// Terminates whenever every correction term is strictly smaller in a
/// well-founded filtration compatible with concatenation.
template <RewriteRules Rules>
class RewritingEngine {
public:
    explicit RewritingEngine(Rules rules) : rules_(std::move(rules)) {}

    Rules& rules() { return rules_; }
    const Rules& rules() const { return rules_; }

    NCExpression normal_form(const NCExpression& x) {
        NCExpression out;
        static const Word empty;
        for (auto& [w, c] : x.terms()) accumulate_word_times_sorted(w, empty, c, out);
        return out;
    }

    NCExpression normal_form_word(const Word& w) {
        NCExpression out;
        accumulate_word_times_sorted(w, Word{}, Scalar(1), out);
        return out;
    }

    /// Product of two expressions already in normal form.
    NCExpression multiply(const NCExpression& a, const NCExpression& b) {
        NCExpression out;
        for (auto& [wa, ca] : a.terms())
            for (auto& [wb, cb] : b.terms()) accumulate_word_times_sorted(wa, wb, ca * cb, out);
        return out;
    }

    NCExpression commutator(const NCExpression& a, const NCExpression& b) {
        NCExpression out = multiply(a, b);
        out -= multiply(b, a);
        return out;
    }

    std::size_t memo_size() const {
        std::lock_guard lock(mutex_);
        return memo_.size();
    }
    void clear_memo() {
        std::lock_guard lock(mutex_);
        memo_.clear();
    }

    /// out += c * NF(w * s) with s sorted.
    void accumulate_word_times_sorted(const Word& w, const Word& s, const Scalar& c, NCExpression& out) {
        if (c == 0) return;
        if (w.empty()) {
            out.add_term(s, c);
            return;
        }
        if (w.size() == 1) {
            lmul_into(w[0], s, c, out);
            return;
        }
        NCExpression cur;
        lmul_into(w.back(), s, 1, cur);
        for (std::size_t k = w.size() - 1; k-- > 0;) {
            NCExpression next;
            for (auto& [v, x] : cur.terms()) lmul_into(w[k], v, x, next);
            cur = std::move(next);
        }
        out.add_scaled(cur, c);
    }

    /// out += c * NF(a * s); skips the memo when a*s is already sorted.
    void lmul_into(GeneratorId a, const Word& s, const Scalar& c, NCExpression& out) {
        if (s.empty() || a <= s[0]) {
            Word w;
            w.reserve(s.size() + 1);
            w.push_back(a);
            w.insert(w.end(), s.begin(), s.end());
            out.add_term(w, c);
            return;
        }
        out.add_scaled(lmul(a, s), c);
    }

    /// NF(a * s) for sorted s.
    const NCExpression& lmul(GeneratorId a, const Word& s) {
        Word key;
        key.reserve(s.size() + 1);
        key.push_back(a);
        key.insert(key.end(), s.begin(), s.end());
        {
            std::lock_guard lock(mutex_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        NCExpression result;
        if (s.empty() || a <= s[0]) {
            result = NCExpression::word(key);
        } else {
            Word tail(s.begin() + 1, s.end());
            // a s0 tail = s0 (a tail) + [a, s0] tail
            NCExpression inner = lmul(a, tail);
            for (auto& [v, x] : inner.terms()) lmul_into(s[0], v, x, result);
            const NCExpression& corr = rules_.swap_correction(a, s[0]);
            for (auto& [v, x] : corr.terms()) accumulate_word_times_sorted(v, tail, x, result);
        }
        std::lock_guard lock(mutex_);
        // Same key always maps to the same value, so a racing insert is harmless.
        return memo_.try_emplace(std::move(key), std::move(result)).first->second;
    }

private:
    Rules rules_;
    mutable std::mutex mutex_;
    std::unordered_map<Word, NCExpression, WordHash> memo_;
};

} // namespace bethe
