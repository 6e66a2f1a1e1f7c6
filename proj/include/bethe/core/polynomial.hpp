#pragma once

#include "bethe/core/errors.hpp"
#include "bethe/core/scalar.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace bethe {

/// Variable families. Each owning module declares what its family means.
enum class VarFamily : std::uint8_t {
    Delta = 0,   // loop coordinate Delta_ij^(r)
    SliceE = 1,  // ebar_ij^(r), i < j
    SliceG = 2,  // gbar_i^(s)
    SliceF = 3,  // fbar_ji^(r), j > i (stored as i=j_row, j=i_col)
    Kappa = 4,   // curve parameter of the rank-one demo
    Generic = 5, // test variables x_k
};

/// Packed identifier: family | i | j | level. Integer order is the variable order.
class VariableId {
public:
    constexpr VariableId() = default;
    static constexpr VariableId make(VarFamily f, int i, int j, int level) {
        VariableId v;
        v.raw_ = (std::uint64_t(f) << 56) | (std::uint64_t(std::uint8_t(i)) << 48) |
                 (std::uint64_t(std::uint8_t(j)) << 40) |
                 std::uint64_t(std::uint32_t(std::int64_t(level) + (std::int64_t(1) << 31)));
        return v;
    }
    constexpr VarFamily family() const { return VarFamily(raw_ >> 56); }
    constexpr int i() const { return int((raw_ >> 48) & 0xff); }
    constexpr int j() const { return int((raw_ >> 40) & 0xff); }
    constexpr int level() const {
        return int(std::int64_t(raw_ & 0xffffffffu) - (std::int64_t(1) << 31));
    }
    constexpr std::uint64_t raw() const { return raw_; }
    constexpr auto operator<=>(const VariableId&) const = default;

    std::string name() const {
        auto s = [](int x) { return std::to_string(x); };
        switch (family()) {
        case VarFamily::Delta: return "Delta(" + s(i()) + "," + s(j()) + ";" + s(level()) + ")";
        case VarFamily::SliceE: return "e(" + s(i()) + "," + s(j()) + ";" + s(level()) + ")";
        case VarFamily::SliceG: return "g(" + s(i()) + ";" + s(level()) + ")";
        case VarFamily::SliceF: return "f(" + s(i()) + "," + s(j()) + ";" + s(level()) + ")";
        case VarFamily::Kappa: return "kappa";
        case VarFamily::Generic: return "x" + s(level());
        }
        return "?";
    }

private:
    std::uint64_t raw_ = 0;
};

inline VariableId generic_var(int k) { return VariableId::make(VarFamily::Generic, 0, 0, k); }

/// Sorted list of (variable, exponent) with cached total degree.
class Monomial {
public:
    using Factor = std::pair<VariableId, std::uint32_t>;

    Monomial() = default;
    explicit Monomial(VariableId v, std::uint32_t e = 1) {
        if (e > 0) {
            factors_.emplace_back(v, e);
            total_ = e;
        }
    }
    /// Factors may be unsorted and contain repeats.
    static Monomial from_factors(std::vector<Factor> fs) {
        std::sort(fs.begin(), fs.end());
        Monomial m;
        for (auto& [v, e] : fs) {
            if (e == 0) continue;
            if (!m.factors_.empty() && m.factors_.back().first == v)
                m.factors_.back().second += e;
            else
                m.factors_.emplace_back(v, e);
            m.total_ += e;
        }
        return m;
    }

    const std::vector<Factor>& factors() const { return factors_; }
    std::uint32_t total_degree() const { return total_; }
    bool is_one() const { return factors_.empty(); }

    std::uint32_t exponent(VariableId v) const {
        auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                                   [](const Factor& f, VariableId x) { return f.first < x; });
        return (it != factors_.end() && it->first == v) ? it->second : 0;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial m;
        m.factors_.reserve(a.factors_.size() + b.factors_.size());
        auto i = a.factors_.begin(), j = b.factors_.begin();
        while (i != a.factors_.end() && j != b.factors_.end()) {
            if (i->first < j->first) m.factors_.push_back(*i++);
            else if (j->first < i->first) m.factors_.push_back(*j++);
            else {
                m.factors_.emplace_back(i->first, i->second + j->second);
                ++i, ++j;
            }
        }
        m.factors_.insert(m.factors_.end(), i, a.factors_.end());
        m.factors_.insert(m.factors_.end(), j, b.factors_.end());
        m.total_ = a.total_ + b.total_;
        return m;
    }

    /// Removes one power of v; caller checks exponent(v) > 0.
    Monomial divide_once(VariableId v) const {
        Monomial m = *this;
        for (auto it = m.factors_.begin(); it != m.factors_.end(); ++it) {
            if (it->first == v) {
                if (--it->second == 0) m.factors_.erase(it);
                --m.total_;
                break;
            }
        }
        return m;
    }

    bool operator==(const Monomial& o) const { return factors_ == o.factors_; }

    /// Graded lexicographic.
    bool operator<(const Monomial& o) const {
        if (total_ != o.total_) return total_ < o.total_;
        return factors_ < o.factors_;
    }

    std::string str() const {
        if (factors_.empty()) return "1";
        std::string out;
        for (auto& [v, e] : factors_) {
            if (!out.empty()) out += "*";
            out += v.name();
            if (e > 1) out += "^" + std::to_string(e);
        }
        return out;
    }

private:
    std::vector<Factor> factors_;
    std::uint32_t total_ = 0;
};

/// Sparse commutative polynomial with rational coefficients.
class Polynomial {
public:
    using Terms = std::map<Monomial, Scalar>;

    Polynomial() = default;
    Polynomial(const Scalar& c) { if (c != 0) terms_.emplace(Monomial(), c); }
    Polynomial(long c) : Polynomial(Scalar(c)) {}
    static Polynomial variable(VariableId v) { return term(Scalar(1), Monomial(v)); }
    static Polynomial term(const Scalar& c, Monomial m) {
        Polynomial p;
        if (c != 0) p.terms_.emplace(std::move(m), c);
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }
    Scalar constant_term() const {
        auto it = terms_.find(Monomial());
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    void add_term(const Monomial& m, const Scalar& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Polynomial& operator*=(const Scalar& s) {
        if (s == 0) terms_.clear();
        else for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    /// this += c * m * p
    void add_scaled(const Polynomial& p, const Scalar& c, const Monomial& m = Monomial()) {
        if (c == 0) return;
        for (auto& [pm, pc] : p.terms_) add_term(m.is_one() ? pm : pm * m, pc * c);
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) { return a *= Scalar(-1); }
    friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
    friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

    /// Total variable degree; -1 for zero.
    int total_degree() const {
        int d = -1;
        for (auto& [m, c] : terms_) d = std::max(d, int(m.total_degree()));
        return d;
    }

    std::set<VariableId> variables() const {
        std::set<VariableId> vs;
        for (auto& [m, c] : terms_)
            for (auto& [v, e] : m.factors()) vs.insert(v);
        return vs;
    }

    Polynomial derivative(VariableId v) const {
        Polynomial r;
        for (auto& [m, c] : terms_) {
            auto e = m.exponent(v);
            if (e > 0) r.add_term(m.divide_once(v), c * e);
        }
        return r;
    }

    /// Evaluation at a point; missing variables raise.
    Scalar evaluate(const std::map<VariableId, Scalar>& point) const {
        Scalar acc = 0;
        for (auto& [m, c] : terms_) {
            Scalar t = c;
            for (auto& [v, e] : m.factors()) {
                auto it = point.find(v);
                if (it == point.end()) throw PreconditionError("no value for " + v.name());
                t *= power(it->second, e);
            }
            acc += t;
        }
        return acc;
    }

    /// Algebra homomorphism sending each variable v to image(v).
    /// image returns nullopt-like identity by returning variable(v) itself.
    Polynomial substitute(const std::function<Polynomial(VariableId)>& image) const {
        std::map<VariableId, Polynomial> cache;
        auto img = [&](VariableId v) -> const Polynomial& {
            auto it = cache.find(v);
            if (it == cache.end()) it = cache.emplace(v, image(v)).first;
            return it->second;
        };
        Polynomial out;
        for (auto& [m, c] : terms_) {
            Polynomial t(c);
            for (auto& [v, e] : m.factors()) {
                for (std::uint32_t k = 0; k < e && !t.is_zero(); ++k) t = t * img(v);
            }
            out += t;
        }
        return out;
    }

    /// Weighted degree under a per-variable weight; nullopt for zero.
    template <class Weight>
    std::optional<long> weighted_degree(Weight&& w) const {
        std::optional<long> best;
        for (auto& [m, c] : terms_) {
            long d = 0;
            for (auto& [v, e] : m.factors()) d += long(e) * w(v);
            if (!best || d > *best) best = d;
        }
        return best;
    }

    /// Sum of the terms of weighted degree exactly deg.
    template <class Weight>
    Polynomial weighted_part(Weight&& w, long deg) const {
        Polynomial r;
        for (auto& [m, c] : terms_) {
            long d = 0;
            for (auto& [v, e] : m.factors()) d += long(e) * w(v);
            if (d == deg) r.terms_.emplace_hint(r.terms_.end(), m, c);
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto& [m, c] : terms_) {
            if (!out.empty()) out += " + ";
            if (m.is_one()) out += c.get_str();
            else if (c == 1) out += m.str();
            else out += "(" + c.get_str() + ")*" + m.str();
        }
        return out;
    }

private:
    Terms terms_;
};

} // namespace bethe
