#pragma once

#include "bethe/core/scalar.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace bethe {

/// Generator identifiers. Each alphabet encodes its PBW order into the integer
/// order of ids, so sortedness of a word is plain integer sortedness.
using GeneratorId = std::uint32_t;
using Word = std::vector<GeneratorId>;

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (auto g : w) {
            h ^= g;
            h *= 1099511628211ull;
        }
        return std::size_t(h ^ (h >> 29));
    }
};

inline bool is_sorted_word(const Word& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i - 1] > w[i]) return false;
    return true;
}

using GeneratorNamer = std::function<std::string(GeneratorId)>;

/// Element of a free associative algebra: Word -> Scalar.
class NCExpression {
public:
    using Terms = std::map<Word, Scalar>;

    NCExpression() = default;
    NCExpression(const Scalar& c) { if (c != 0) terms_.emplace(Word{}, c); }
    NCExpression(long c) : NCExpression(Scalar(c)) {}
    static NCExpression letter(GeneratorId g) { return word(Word{g}); }
    static NCExpression word(Word w, const Scalar& c = 1) {
        NCExpression e;
        if (c != 0) e.terms_.emplace(std::move(w), c);
        return e;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    bool is_scalar() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    Scalar scalar_part() const {
        auto it = terms_.find(Word{});
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    void add_term(const Word& w, const Scalar& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    void add_scaled(const NCExpression& o, const Scalar& c) {
        if (c == 0) return;
        for (auto& [w, x] : o.terms_) add_term(w, x * c);
    }

    NCExpression& operator+=(const NCExpression& o) {
        for (auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    NCExpression& operator-=(const NCExpression& o) {
        for (auto& [w, c] : o.terms_) add_term(w, -c);
        return *this;
    }
    NCExpression& operator*=(const Scalar& s) {
        if (s == 0) terms_.clear();
        else for (auto& [w, c] : terms_) c *= s;
        return *this;
    }
    friend NCExpression operator+(NCExpression a, const NCExpression& b) { return a += b; }
    friend NCExpression operator-(NCExpression a, const NCExpression& b) { return a -= b; }
    friend NCExpression operator-(NCExpression a) { return a *= Scalar(-1); }
    friend NCExpression operator*(NCExpression a, const Scalar& s) { return a *= s; }
    friend NCExpression operator*(const Scalar& s, NCExpression a) { return a *= s; }

    /// Concatenation product, no rewriting.
    friend NCExpression operator*(const NCExpression& a, const NCExpression& b) {
        NCExpression r;
        Word w;
        for (auto& [wa, ca] : a.terms_)
            for (auto& [wb, cb] : b.terms_) {
                w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                r.add_term(w, ca * cb);
            }
        return r;
    }

    bool operator==(const NCExpression& o) const { return terms_ == o.terms_; }

    std::size_t max_length() const {
        std::size_t m = 0;
        for (auto& [w, c] : terms_) m = std::max(m, w.size());
        return m;
    }

    /// Letter-wise substitution extended as an algebra map (no rewriting).
    NCExpression substitute(const std::function<NCExpression(GeneratorId)>& image) const {
        std::map<GeneratorId, NCExpression> cache;
        NCExpression out;
        for (auto& [w, c] : terms_) {
            NCExpression t(c);
            for (auto g : w) {
                auto it = cache.find(g);
                if (it == cache.end()) it = cache.emplace(g, image(g)).first;
                t = t * it->second;
                if (t.is_zero()) break;
            }
            out += t;
        }
        return out;
    }

    std::string str(const GeneratorNamer& name) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto& [w, c] : terms_) {
            if (!out.empty()) out += " + ";
            if (w.empty()) {
                out += c.get_str();
                continue;
            }
            if (c != 1) out += "(" + c.get_str() + ")*";
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (i) out += "*";
                out += name(w[i]);
            }
        }
        return out;
    }

private:
    Terms terms_;
};

inline NCExpression commutator(const NCExpression& a, const NCExpression& b) { return a * b - b * a; }

} // namespace bethe
