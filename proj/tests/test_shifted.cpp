#include "bethe/shifted/verify.hpp"
#include "bethe/universal/yangian.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bethe;

namespace bethe {
void PrintTo(const NCExpression& x, std::ostream* os) { *os << x.str(pbw_namer()); }
} // namespace bethe

namespace {

Polynomial G(int i, int s) { return Polynomial::variable(gbar_var(i, s)); }

TwistMatrix standard_twist(int n) { return TwistMatrix::standard(n); }

const std::vector<ShiftVector>& grid() {
    static const std::vector<ShiftVector> g{ShiftVector({-1, 0}), ShiftVector({-2, 0}), ShiftVector({-1, -1, 0}),
                                            ShiftVector({-2, -1, 0})};
    return g;
}

NCExpression random_gl2_word(Gl2Rules& R, std::mt19937_64& rng, int max_len) {
    std::uniform_int_distribution<int> kind(0, 3), lev(1, 3), len(1, max_len);
    NCExpression w(1);
    int l = len(rng);
    for (int a = 0; a < l; ++a) {
        int lv = lev(rng);
        switch (kind(rng)) {
        case 0: w = w * R.E(lv); break;
        case 1: w = w * R.F(lv); break;
        case 2: w = w * R.D(1, lv - R.mu().d(1)); break;
        default: w = w * R.D(2, lv - R.mu().d(2)); break;
        }
    }
    return w;
}

} // namespace

TEST(Alphabet, PbwOrderAndRoundTrip) {
    GeneratorId e = pbw_id({PBWKind::E, 1, 2, 5}), g = pbw_id({PBWKind::G, 1, 0, -3}), f = pbw_id({PBWKind::F, 2, 1, 1});
    EXPECT_LT(e, g);
    EXPECT_LT(g, f);
    EXPECT_LT(pbw_id({PBWKind::E, 1, 2, 1}), pbw_id({PBWKind::E, 1, 2, 2}));
    EXPECT_LT(pbw_id({PBWKind::E, 1, 2, 9}), pbw_id({PBWKind::E, 1, 3, 1}));
    for (auto id : {e, g, f}) EXPECT_EQ(pbw_id(pbw_decode(id)), id);
    EXPECT_EQ(pbw_name(e), "e(1,2;5)");
    EXPECT_EQ(pbw_name(g), "g(1;-3)");
    EXPECT_EQ(pbw_name(f), "f(2,1;1)");
    ShiftVector mu({-1, 0});
    EXPECT_EQ(g_letter(1, 1, mu), NCExpression(1));
    EXPECT_TRUE(g_letter(1, 0, mu).is_zero());
    EXPECT_TRUE(e_letter(1, 2, 0).is_zero());
}

TEST(ShiftVector, Validation) {
    ShiftVector mu({-1, 0});
    EXPECT_EQ(mu.omega_star(1), 0);
    EXPECT_EQ(mu.omega_star(2), 1);
    EXPECT_NO_THROW(ShiftVector({0, 0, 0}));
    EXPECT_THROW(ShiftVector({0, -1}), PreconditionError);
}

TEST(DTilde, Examples) {
    ShiftVector mu({-2, 1});
    for (int i = 1; i <= 2; ++i) {
        int d = mu.d(i);
        EXPECT_EQ(dtilde_expand(i, d, mu), Polynomial(1));
        EXPECT_EQ(dtilde_expand(i, d + 1, mu), -G(i, 1 - d));
        EXPECT_EQ(dtilde_expand(i, d + 2, mu), -G(i, 2 - d) + G(i, 1 - d) * G(i, 1 - d));
        EXPECT_TRUE(dtilde_expand(i, d - 1, mu).is_zero());
    }
}

TEST(DTilde, InversionIdentity) {
    ShiftVector mu({-1, 0, 2});
    for (int i = 1; i <= 3; ++i) {
        int d = mu.d(i);
        auto g = [&](int s) { return s < -d ? Polynomial() : s == -d ? Polynomial(1) : G(i, s); };
        for (int r = 0; r <= 6; ++r) {
            Polynomial acc;
            for (int t = d; t <= d + r; ++t) acc += dtilde_expand(i, t, mu) * g(r - t);
            EXPECT_EQ(acc, Polynomial(r == 0 ? 1 : 0)) << i << " " << r;
        }
    }
}

TEST(Gauss, Examples) {
    ShiftVector mu({-1, 0});
    for (int r = -1; r <= 4; ++r) EXPECT_EQ(gauss_t(2, 2, r, mu), g_letter(2, r, mu));
    EXPECT_EQ(gauss_t(1, 2, 1, mu), e_letter(1, 2, 1));
    // t_11(u) = g_1(u) + e_12(u) g_2(u) f_21(u)
    for (int r = 0; r <= 5; ++r) {
        NCExpression expect = g_letter(1, r, mu);
        for (int a = 1; a <= r; ++a)
            for (int c = 1; a + c <= r; ++c) expect += e_letter(1, 2, a) * g_letter(2, r - a - c, mu) * f_letter(2, 1, c);
        EXPECT_EQ(gauss_t(1, 1, r, mu), expect) << r;
    }
}

TEST(Gauss, SupportAndSymbolMatchSlice) {
    for (auto& mu : grid()) {
        ClassicalSlice slice({mu, 6});
        int n = mu.n();
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int r = -3; r <= 6; ++r) {
                    NCExpression t = gauss_t(i, j, r, mu);
                    Polynomial delta = slice.restrict(i, j, r);
                    EXPECT_EQ(t.is_zero(), delta.is_zero());
                    EXPECT_EQ(abelianize(t), delta);
                    if (r < gauss_floor(i, j, mu)) {
                        EXPECT_TRUE(t.is_zero());
                    }
                    auto s = symbol_shifted(t, mu);
                    EXPECT_FALSE(s.inconclusive);
                    if (!delta.is_zero()) {
                        EXPECT_EQ(s.degree, r + mu.d(j));
                        EXPECT_EQ(s.symbol, symbol(delta, mu));
                    }
                }
    }
}

TEST(Symbol, LettersAndProducts) {
    ShiftVector mu({-2, -1, 0});
    auto s = symbol_shifted(e_letter(1, 2, 3), mu);
    EXPECT_EQ(s.symbol, Polynomial::variable(ebar_var(1, 2, 3)));
    EXPECT_EQ(s.degree, 3);
    EXPECT_EQ(symbol_shifted(f_letter(3, 1, 1), mu).degree, -1);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> idx(1, 3), lev(-1, 4);
    for (int t = 0; t < 40; ++t) {
        NCExpression x = gauss_t(idx(rng), idx(rng), lev(rng), mu), y = gauss_t(idx(rng), idx(rng), lev(rng), mu);
        auto sx = symbol_shifted(x, mu), sy = symbol_shifted(y, mu), sxy = symbol_shifted(x * y, mu);
        if ((sx.symbol * sy.symbol).is_zero()) continue;
        EXPECT_EQ(sxy.symbol, sx.symbol * sy.symbol);
        EXPECT_EQ(sxy.degree, sx.degree + sy.degree);
    }
    EXPECT_TRUE(symbol_shifted(e_letter(1, 2, 1) * f_letter(2, 1, 1) - f_letter(2, 1, 1) * e_letter(1, 2, 1), mu).inconclusive);
}

TEST(Symbol, UniversalRelationsAbelianizeToPoissonBrackets) {
    // image of the commutator formula under t -> gauss_t, made commutative, is the restricted bracket
    for (auto& mu : grid()) {
        int n = mu.n(), N = std::max(0, mu.max_d());
        YContext yc{n, N, -N, 6};
        LoopContext lc{n, N, -N, 6};
        LoopPoissonAlgebra alg(lc);
        ClassicalSlice slice({mu, 8});
        auto image = [&](GeneratorId g) {
            auto d = tgen_decode(g, yc);
            return gauss_t(d.i, d.j, d.r, mu);
        };
        std::mt19937_64 rng(17);
        std::uniform_int_distribution<int> idx(1, n), lev(-N, 3);
        for (int t = 0; t < 30; ++t) {
            TGen a{idx(rng), idx(rng), lev(rng)}, b{idx(rng), idx(rng), lev(rng)};
            Polynomial lhs = abelianize(derived_commutator(a, b, yc).substitute(image));
            Polynomial rhs = slice.restrict(alg.bracket(Polynomial::variable(VariableId::make(VarFamily::Delta, a.i, a.j, a.r)),
                                                        Polynomial::variable(VariableId::make(VarFamily::Delta, b.i, b.j, b.r))));
            EXPECT_EQ(lhs, rhs);
        }
    }
}

TEST(Tau, RankOneFormula) {
    ShiftVector mu({-1, 0});
    ShiftedYangian y({mu, 5});
    TwistMatrix C = TwistMatrix::diagonal({Scalar(3), Scalar(5)});
    for (int r = -1; r <= 5; ++r)
        EXPECT_EQ(y.tau(C, 1, r), gauss_t(1, 1, r, mu) * Scalar(3) + gauss_t(2, 2, r, mu) * Scalar(5));
    EXPECT_THROW(y.tau(C, 1, 6), WindowError);
}

TEST(Tau, VanishingWindowsAndLeading) {
    for (auto& mu : grid()) {
        int n = mu.n();
        ShiftedYangian y({mu, 6});
        for (auto C : {standard_twist(n), TwistMatrix::identity(n)}) {
            Report rep = verify_vanishing_leading(C, y);
            EXPECT_EQ(rep.count(Status::Fail), 0u);
            EXPECT_EQ(rep.count(Status::Inconclusive), 0u);
            EXPECT_EQ(rep.count(Status::Flagged), std::size_t(n)); // integrality only
            for (int k = 1; k <= n; ++k)
                for (int r = mu.omega_star(k) - 3; r < mu.omega_star(k); ++r) EXPECT_TRUE(y.tau(C, k, r).is_zero());
        }
    }
    // identity twist: leading scalar is dim V_{L,k}
    ShiftVector mu({-1, -1, 0});
    ShiftedYangian y({mu, 4});
    EXPECT_EQ(y.tau(TwistMatrix::identity(3), 1, 0), NCExpression(1));
    EXPECT_EQ(y.tau(TwistMatrix::identity(3), 2, 1), NCExpression(2));
    EXPECT_EQ(y.tau(TwistMatrix::identity(3), 3, 2), NCExpression(1));
}

TEST(Tau, LeadingQuantumDeterminantInQuotient) {
    ShiftVector mu({-2, 0});
    ShiftedYangian y({mu, 4});
    Gl2Algebra alg(mu);
    TwistMatrix C = TwistMatrix::diagonal({Scalar(3), Scalar(7)});
    EXPECT_FALSE(y.tau(C, 2, 2).is_scalar());
    EXPECT_EQ(alg.normal_form(y.tau(C, 2, 2)), NCExpression(21));
}

TEST(Tau, FreeLevelVanishingCanFail) {
    // mu = (-3, 0): tau_2^(2) is a commutator that only dies in the quotient
    ShiftVector mu({-3, 0});
    ShiftedYangian y({mu, 4});
    auto C = standard_twist(2);
    EXPECT_FALSE(y.tau(C, 2, 2).is_zero());
    Report rep = verify_vanishing_leading(C, y);
    EXPECT_EQ(rep.count(Status::Fail), 0u);
    EXPECT_EQ(rep.count(Status::Flagged), 3u);
}

TEST(TheoremC, SymbolsMatchClassical) {
    for (auto& mu : grid()) {
        int n = mu.n();
        ShiftedYangian y({mu, 6});
        ClassicalSlice slice({mu, 6});
        Report rep = verify_theorem_C(standard_twist(n), y, slice);
        EXPECT_TRUE(rep.all_pass()) << mu.str();
    }
}

TEST(TheoremC, UnshiftedReducesToClassicalBethe) {
    ShiftVector mu = ShiftVector::zero(2);
    ShiftedYangian y({mu, 5});
    ClassicalSlice slice({mu, 5});
    auto C = standard_twist(2);
    EXPECT_TRUE(verify_theorem_C(C, y, slice).all_pass());
    LoopContext lc{2, 0, 0, 5};
    for (int k = 1; k <= 2; ++k)
        for (int r = 1; r <= 5; ++r) {
            auto s = symbol_shifted(y.tau(C, k, r), mu);
            EXPECT_EQ(s.symbol, symbol(slice.restrict(sigma_universal(C, k, r, lc)), mu));
        }
}

TEST(Gl2, FEExample) {
    ShiftVector mu({-1, 0});
    Gl2Algebra alg(mu);
    auto& R = alg.rules();
    NCExpression diff = alg.normal_form(R.F(1) * R.E(1)) - alg.normal_form(R.E(1) * R.F(1));
    NCExpression sum;
    for (int t = 1; t <= 1; ++t) sum += R.D(1, t) * R.Dtilde(2, 1 - t);
    EXPECT_EQ(diff, alg.normal_form(sum));
    EXPECT_EQ(diff, NCExpression(1));
    NCExpression d = R.D(1, 2) * R.D(2, 3) * R.D(2, 1);
    EXPECT_EQ(alg.normal_form(d), R.D(1, 2) * R.D(2, 1) * R.D(2, 3));
}

TEST(Gl2, IdempotentAndAssociative) {
    for (auto mu : {ShiftVector({0, 0}), ShiftVector({-1, 0}), ShiftVector({-2, 0})}) {
        Gl2Algebra alg(mu);
        std::mt19937_64 rng(5);
        for (int t = 0; t < 60; ++t) {
            NCExpression a = random_gl2_word(alg.rules(), rng, 4), b = random_gl2_word(alg.rules(), rng, 2),
                         c = random_gl2_word(alg.rules(), rng, 2);
            NCExpression na = alg.normal_form(a);
            EXPECT_EQ(alg.normal_form(na), na);
            for (auto& [w, x] : na.terms()) EXPECT_TRUE(is_sorted_word(w));
            EXPECT_EQ(alg.normal_form(alg.normal_form(a * b) * c), alg.normal_form(a * alg.normal_form(b * c)));
        }
    }
}

TEST(Gl2, FiltrationDoesNotIncrease) {
    ShiftVector mu({-2, 0});
    Gl2Algebra alg(mu);
    std::mt19937_64 rng(15);
    auto top = [&](const NCExpression& x) {
        long d = kMinusInfinity;
        for (auto& [w, c] : x.terms()) {
            long s = 0;
            for (auto g : w) s += pbw_degree(g, mu);
            d = std::max(d, s);
        }
        return d;
    };
    for (int t = 0; t < 60; ++t) {
        NCExpression a = random_gl2_word(alg.rules(), rng, 4);
        NCExpression na = alg.normal_form(a);
        EXPECT_LE(top(na), top(a));
        EXPECT_EQ(top(na) == top(a), !symbol_shifted(a, mu).inconclusive);
    }
}

TEST(Gl2, DtildeRelationsHold) {
    for (auto mu : {ShiftVector({0, 0}), ShiftVector({-2, 0}), ShiftVector({-1, 1})}) {
        Gl2Algebra alg(mu);
        auto& R = alg.rules();
        for (int i = 1; i <= 2; ++i) {
            Scalar eps = i == 1 ? 1 : -1;
            for (int r = mu.d(i) + 1; r <= mu.d(i) + 3; ++r)
                for (int s = 1; s <= 3; ++s) {
                    NCExpression dt = R.Dtilde(i, r);
                    NCExpression rhsE, rhsF;
                    for (int t = mu.d(i); t <= r - 1; ++t) {
                        rhsE += R.Dtilde(i, t) * R.E(r + s - t - 1) * eps;
                        rhsF -= R.F(r + s - t - 1) * R.Dtilde(i, t) * eps;
                    }
                    EXPECT_EQ(alg.commutator(alg.normal_form(dt), R.E(s)), alg.normal_form(rhsE));
                    EXPECT_EQ(alg.commutator(alg.normal_form(dt), R.F(s)), alg.normal_form(rhsF));
                }
        }
    }
}

TEST(Gl2, RttRelationsHoldThroughGauss) {
    for (auto mu : {ShiftVector({0, 0}), ShiftVector({-1, 0}), ShiftVector({-2, 0}), ShiftVector({-3, 0})}) {
        Gl2Algebra alg(mu);
        int N = mu.max_d();
        YContext yc{2, N, -N, 8};
        auto image = [&](GeneratorId g) {
            auto d = tgen_decode(g, yc);
            return gauss_t(d.i, d.j, d.r, mu);
        };
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j)
                for (int k = 1; k <= 2; ++k)
                    for (int l = 1; l <= 2; ++l)
                        for (int p = -N; p <= 3; ++p)
                            for (int q = -N; q <= 3; ++q) {
                                NCExpression lhs = alg.commutator(alg.normal_form(gauss_t(i, j, p, mu)),
                                                                  alg.normal_form(gauss_t(k, l, q, mu)));
                                NCExpression rhs = alg.normal_form(derived_commutator({i, j, p}, {k, l, q}, yc).substitute(image));
                                EXPECT_EQ(lhs, rhs);
                            }
    }
}

TEST(Gl2, BetheSubalgebraCommutes) {
    ShiftVector mu({-2, 0});
    ShiftedYangian y({mu, 5});
    Gl2Algebra alg(mu);
    for (auto C : {standard_twist(2), TwistMatrix::identity(2)}) {
        std::vector<SigmaPair> pairs;
        for (int k = 1; k <= 2; ++k)
            for (int l = k; l <= 2; ++l)
                for (int r = mu.omega_star(k); r <= 5; ++r)
                    for (int s = mu.omega_star(l); s <= 5; ++s) pairs.push_back({k, r, l, s});
        Report rep = gl2_verify_commutativity(C, y, alg, pairs);
        EXPECT_TRUE(rep.all_pass());
        EXPECT_EQ(rep.records().size(), pairs.size());
    }
}

TEST(Gl2, RejectsOtherRanks) {
    EXPECT_THROW(Gl2Algebra(ShiftVector({-1, 0, 0})), UnsupportedError);
    ShiftedYangian y({ShiftVector({-1, 0, 0}), 3});
    Gl2Algebra alg(ShiftVector({-1, 0}));
    EXPECT_THROW(gl2_verify_commutativity(standard_twist(3), y, alg, {}), UnsupportedError);
}

TEST(Certificate, WeightPotential) {
    EXPECT_TRUE(nonnegative_weight_potential(ShiftVector({-2, -1, 0})).has_value());
    EXPECT_TRUE(nonnegative_weight_potential(ShiftVector({-2, 0})).has_value());
    EXPECT_FALSE(nonnegative_weight_potential(ShiftVector({-3, 0})).has_value());
    auto lam = *nonnegative_weight_potential(ShiftVector({-2, -1, 0}));
    ShiftVector mu({-2, -1, 0});
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) {
            long de = 1 + lam[std::size_t(i - 1)] - lam[std::size_t(j - 1)];
            long df = 1 + mu.d(i) - mu.d(j) + lam[std::size_t(j - 1)] - lam[std::size_t(i - 1)];
            EXPECT_GE(de, 0);
            EXPECT_GE(df, 0);
        }
}
