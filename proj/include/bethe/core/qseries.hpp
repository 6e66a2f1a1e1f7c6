#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace bethe {

/// Power series in q truncated at q^cap, nonnegative integer coefficients.
class QSeries {
public:
    explicit QSeries(int cap) : coeffs_(std::size_t(cap) + 1, 0) {
        if (cap < 0) throw std::invalid_argument("negative q-series cap");
        coeffs_[0] = 1;
    }
    static QSeries zero(int cap) {
        QSeries s(cap);
        s.coeffs_[0] = 0;
        return s;
    }

    int cap() const { return int(coeffs_.size()) - 1; }
    const std::vector<mpz_class>& coefficients() const { return coeffs_; }
    const mpz_class& operator[](int m) const { return coeffs_.at(std::size_t(m)); }
    mpz_class& operator[](int m) { return coeffs_.at(std::size_t(m)); }

    /// Multiply by 1/(1 - q^d), i.e. adjoin a free generator of degree d >= 1.
    void adjoin_generator(int degree) {
        if (degree < 1) throw std::invalid_argument("generator degree must be positive");
        for (int m = degree; m <= cap(); ++m) coeffs_[m] += coeffs_[m - degree];
    }

    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        int cap = std::min(a.cap(), b.cap());
        QSeries r = zero(cap);
        for (int i = 0; i <= cap; ++i)
            for (int j = 0; i + j <= cap; ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return r;
    }

    bool operator==(const QSeries& o) const { return coeffs_ == o.coeffs_; }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) out += ",";
            out += coeffs_[i].get_str();
        }
        return out;
    }

private:
    std::vector<mpz_class> coeffs_;
};

/// Coefficients of prod_{r>=1} (1 - q^r)^{-copies} up to q^cap.
inline QSeries qseries_partition_product(int copies, int cap) {
    if (copies < 0) throw std::invalid_argument("negative copies");
    QSeries s(cap);
    for (int c = 0; c < copies; ++c)
        for (int r = 1; r <= cap; ++r) s.adjoin_generator(r);
    return s;
}

/// Free commutative algebra on generators of the given degrees.
inline QSeries qseries_free_algebra(const std::vector<int>& degrees, int cap) {
    QSeries s(cap);
    for (int d : degrees)
        if (d <= cap) s.adjoin_generator(d);
    return s;
}

} // namespace bethe
