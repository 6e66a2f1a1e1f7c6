#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bethe {

/// Exact rational. GMP keeps results canonical after every arithmetic op.
using Scalar = mpq_class;

inline Scalar make_scalar(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Scalar s(num, den);
    s.canonicalize();
    return s;
}

inline std::string to_string(const Scalar& s) { return s.get_str(); }

/// Parses "a" or "a/b" with optional sign.
inline Scalar parse_scalar(std::string_view text) {
    std::string t(text);
    if (t.empty()) throw std::invalid_argument("empty rational literal");
    Scalar s;
    if (s.set_str(t, 10) != 0) throw std::invalid_argument("bad rational literal: " + t);
    if (s.get_den() == 0) throw std::invalid_argument("zero denominator: " + t);
    s.canonicalize();
    return s;
}

inline bool is_integer(const Scalar& s) { return s.get_den() == 1; }

/// Generalized binomial coefficient binom(top, m) for integer top and m >= 0.
inline Scalar binomial(long top, long m) {
    if (m < 0) return 0;
    Scalar acc = 1;
    for (long i = 0; i < m; ++i) {
        acc *= Scalar(top - i);
        acc /= Scalar(i + 1);
    }
    return acc;
}

inline Scalar power(const Scalar& base, unsigned e) {
    Scalar acc = 1;
    for (unsigned i = 0; i < e; ++i) acc *= base;
    return acc;
}

inline std::size_t hash_value(const Scalar& s) {
    std::hash<std::string> h;
    return h(s.get_str());
}

} // namespace bethe
