#pragma once

#include "bethe/core/errors.hpp"
#include "bethe/core/nc_expression.hpp"
#include "bethe/core/polynomial.hpp"
#include "bethe/core/scalar.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace bethe {

template <class T, class U>
struct ProductType {};
template <> struct ProductType<Scalar, Scalar> { using type = Scalar; };
template <> struct ProductType<Scalar, Polynomial> { using type = Polynomial; };
template <> struct ProductType<Polynomial, Scalar> { using type = Polynomial; };
template <> struct ProductType<Polynomial, Polynomial> { using type = Polynomial; };
template <> struct ProductType<Scalar, NCExpression> { using type = NCExpression; };
template <> struct ProductType<NCExpression, Scalar> { using type = NCExpression; };
template <> struct ProductType<NCExpression, NCExpression> { using type = NCExpression; };

/// Coefficient domains with a common product. Commutative times
/// noncommutative has none and is rejected at compile time.
template <class T, class U>
concept Convolvable = requires { typename ProductType<T, U>::type; };

inline bool coefficient_is_zero(const Scalar& s) { return s == 0; }
inline bool coefficient_is_zero(const Polynomial& p) { return p.is_zero(); }
inline bool coefficient_is_zero(const NCExpression& e) { return e.is_zero(); }

/// Sum a_r z^{-r} known exactly for r <= hi and zero for r < lo.
template <class T>
class SeriesWindow {
public:
    SeriesWindow(int lo, int hi) : lo_(lo), hi_(hi) {
        if (lo > hi) throw WindowError("empty series window");
    }

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    const std::map<int, T>& entries() const { return entries_; }

    void set(int r, T value) {
        if (r < lo_ || r > hi_)
            throw WindowError("exponent " + std::to_string(r) + " outside window [" +
                              std::to_string(lo_) + "," + std::to_string(hi_) + "]");
        if (coefficient_is_zero(value)) entries_.erase(r);
        else entries_[r] = std::move(value);
    }

    /// Coefficient of z^{-r}; zero below lo, error above hi.
    T coefficient(int r) const {
        if (r > hi_)
            throw WindowError("coefficient " + std::to_string(r) + " not certified (hi=" +
                              std::to_string(hi_) + ")");
        auto it = entries_.find(r);
        return it == entries_.end() ? T() : it->second;
    }

    /// Narrows the certified window from above.
    SeriesWindow truncated(int hi) const {
        SeriesWindow out(lo_, std::min(hi_, std::max(hi, lo_)));
        for (auto& [r, c] : entries_)
            if (r <= out.hi_) out.entries_.emplace(r, c);
        return out;
    }

    bool operator==(const SeriesWindow& o) const {
        return lo_ == o.lo_ && hi_ == o.hi_ && entries_ == o.entries_;
    }

private:
    int lo_, hi_;
    std::map<int, T> entries_;
};

/// Product series. Window [lo1+lo2, min(hi1+lo2, hi2+lo1)]; factor order kept.
template <class T, class U>
    requires Convolvable<T, U>
SeriesWindow<typename ProductType<T, U>::type> series_convolve(const SeriesWindow<T>& a,
                                                                const SeriesWindow<U>& b) {
    using V = typename ProductType<T, U>::type;
    SeriesWindow<V> out(a.lo() + b.lo(), std::min(a.hi() + b.lo(), b.hi() + a.lo()));
    std::map<int, V> acc;
    for (auto& [p, ap] : a.entries()) {
        for (auto& [q, bq] : b.entries()) {
            int r = p + q;
            if (r > out.hi()) break;
            acc[r] += V(ap * bq);
        }
    }
    for (auto& [r, c] : acc) out.set(r, std::move(c));
    return out;
}

template <class T>
SeriesWindow<T> series_add(const SeriesWindow<T>& a, const SeriesWindow<T>& b) {
    SeriesWindow<T> out(std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
    std::map<int, T> acc;
    for (auto& [r, c] : a.entries()) if (r <= out.hi()) acc[r] += c;
    for (auto& [r, c] : b.entries()) if (r <= out.hi()) acc[r] += c;
    for (auto& [r, c] : acc) out.set(r, std::move(c));
    return out;
}

/// Exact constant series c z^0 (certified everywhere in practice).
template <class T>
SeriesWindow<T> constant_series(T c) {
    SeriesWindow<T> s(0, 1 << 28);
    s.set(0, std::move(c));
    return s;
}

template <class T>
using SeriesMatrix = std::vector<std::vector<SeriesWindow<T>>>;

} // namespace bethe
