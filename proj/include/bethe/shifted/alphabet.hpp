#pragma once

#include "bethe/classical/shift_vector.hpp"
#include "bethe/classical/slice.hpp"
#include "bethe/core/errors.hpp"
#include "bethe/core/nc_expression.hpp"

#include <string>

namespace bethe {

/// Gauss letters of Y_mu: e_ij^(r) (i<j, r>=1), g_i^(s) (s>=1-d_i), f_ji^(r) (j>i, r>=1).
enum class PBWKind : std::uint32_t { E = 0, G = 1, F = 2 };

struct PBWGen {
    PBWKind kind;
    int a; // e: row i; g: i; f: row j
    int b; // e: column j; g: 0; f: column i
    int level;
    bool operator==(const PBWGen&) const = default;
};

namespace detail {
constexpr int kLevelOffset = 1 << 17;
}

/// Integer order is the PBW order: E < G < F, then (indices, level).
inline GeneratorId pbw_id(const PBWGen& g) {
    if (g.a < 0 || g.a > 31 || g.b < 0 || g.b > 31) throw PreconditionError("letter index out of range");
    if (g.level <= -detail::kLevelOffset || g.level >= detail::kLevelOffset)
        throw PreconditionError("letter level out of range");
    return (std::uint32_t(g.kind) << 28) | (std::uint32_t(g.a) << 23) | (std::uint32_t(g.b) << 18) |
           std::uint32_t(g.level + detail::kLevelOffset);
}

inline PBWGen pbw_decode(GeneratorId id) {
    return {PBWKind(id >> 28), int((id >> 23) & 31u), int((id >> 18) & 31u),
            int(id & ((1u << 18) - 1)) - detail::kLevelOffset};
}

inline std::string pbw_name(GeneratorId id) {
    auto g = pbw_decode(id);
    auto lv = std::to_string(g.level);
    switch (g.kind) {
    case PBWKind::E: return "e(" + std::to_string(g.a) + "," + std::to_string(g.b) + ";" + lv + ")";
    case PBWKind::G: return "g(" + std::to_string(g.a) + ";" + lv + ")";
    case PBWKind::F: return "f(" + std::to_string(g.a) + "," + std::to_string(g.b) + ";" + lv + ")";
    }
    return "?";
}

inline GeneratorNamer pbw_namer() { return pbw_name; }

/// e_ij^(r); zero below level 1, and 1 on the diagonal at level 0.
inline NCExpression e_letter(int i, int j, int r) {
    if (i == j) return r == 0 ? NCExpression(1) : NCExpression();
    if (i > j) throw PreconditionError("e letters are upper triangular");
    if (r < 1) return NCExpression();
    return NCExpression::letter(pbw_id({PBWKind::E, i, j, r}));
}

/// f_ji^(r) with j > i (row j, column i).
inline NCExpression f_letter(int j, int i, int r) {
    if (i == j) return r == 0 ? NCExpression(1) : NCExpression();
    if (j < i) throw PreconditionError("f letters are lower triangular");
    if (r < 1) return NCExpression();
    return NCExpression::letter(pbw_id({PBWKind::F, j, i, r}));
}

/// g_i^(s) with g_i^(-d_i) = 1.
inline NCExpression g_letter(int i, int s, const ShiftVector& mu) {
    int lo = -mu.d(i);
    if (s < lo) return NCExpression();
    if (s == lo) return NCExpression(1);
    return NCExpression::letter(pbw_id({PBWKind::G, i, 0, s}));
}

/// Matching classical slice coordinate.
inline VariableId slice_variable(GeneratorId id) {
    auto g = pbw_decode(id);
    switch (g.kind) {
    case PBWKind::E: return ebar_var(g.a, g.b, g.level);
    case PBWKind::G: return gbar_var(g.a, g.level);
    case PBWKind::F: return fbar_var(g.a, g.b, g.level);
    }
    throw DomainError("bad letter");
}

inline long pbw_degree(GeneratorId id, const ShiftVector& mu) { return slice_degree(slice_variable(id), mu); }

} // namespace bethe
