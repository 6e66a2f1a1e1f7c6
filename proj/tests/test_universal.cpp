#include "bethe/classical/loop.hpp"
#include "bethe/universal/tensor.hpp"
#include "bethe/universal/yangian.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bethe;

namespace bethe {
void PrintTo(const NCExpression& x, std::ostream* os) { *os << x.str([](GeneratorId g) { return "g" + std::to_string(g); }); }
} // namespace bethe

namespace {

Polynomial D(int i, int j, int r) { return Polynomial::variable(VariableId::make(VarFamily::Delta, i, j, r)); }

NCExpression random_word(UniversalYangian& y, std::mt19937_64& rng, int max_len, int max_level) {
    const auto& c = y.context();
    std::uniform_int_distribution<int> idx(1, c.n), lev(-c.N, max_level), len(1, max_len);
    Word w;
    int l = len(rng);
    for (int a = 0; a < l; ++a) w.push_back(y.gen(idx(rng), idx(rng), lev(rng)));
    return NCExpression::word(w);
}

// u^{-r} coefficient of t_ab(u) t_cd(u-1), expanded independently of the library.
NCExpression shifted_product(UniversalYangian& y, int a, int b, int c, int d, int r) {
    int N = y.context().N;
    NCExpression out;
    for (int p = -N; p <= r + N; ++p)
        for (int q = -N; p + q <= r; ++q) {
            int m = r - p - q; // (u-1)^{-q} = sum_m binom(-q, m) (-1)^m u^{-q-m}
            Scalar sign = m % 2 ? -1 : 1;
            out += y.t(a, b, p) * y.t(c, d, q) * (binomial(-q, m) * sign);
        }
    return out;
}

} // namespace

TEST(Commutator, Examples) {
    YContext c{2, 0, 0, 4};
    NCExpression got = derived_commutator({1, 2, 1}, {2, 1, 1}, c);
    UniversalYangian y(c);
    EXPECT_EQ(got, y.t(2, 2, 1) * y.t(1, 1, 0) - y.t(2, 2, 0) * y.t(1, 1, 1));
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q)
            EXPECT_TRUE(y.normal_form(derived_commutator({1, 1, p}, {1, 1, q}, c)).is_zero());
    YContext c1{2, 1, 0, 4};
    // p + q - 1 < -2N leaves no room below the floor
    EXPECT_TRUE(derived_commutator({1, 2, -1}, {2, 1, -1}, c1).is_zero());
    EXPECT_TRUE(derived_commutator({1, 2, -1}, {2, 1, 0}, c1).is_zero());
}

TEST(Commutator, SatisfiesDefiningRecursion) {
    for (int N : {0, 1}) {
        YContext c{2, N, 0, 4};
        UniversalYangian y(c);
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j)
                for (int k = 1; k <= 2; ++k)
                    for (int l = 1; l <= 2; ++l)
                        for (int p = -N; p <= 2; ++p)
                            for (int q = -N; q <= 2; ++q) {
                                NCExpression lhs = derived_commutator({i, j, p + 1}, {k, l, q}, c);
                                if (q + 1 >= -N) lhs -= derived_commutator({i, j, p}, {k, l, q + 1}, c);
                                NCExpression rhs = y.t(k, j, q) * y.t(i, l, p) - y.t(k, j, p) * y.t(i, l, q);
                                EXPECT_EQ(y.normal_form(lhs), y.normal_form(rhs));
                            }
    }
}

TEST(Commutator, AntisymmetricInTheAlgebra) {
    YContext c{3, 1, 0, 4};
    UniversalYangian y(c);
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> idx(1, 3), lev(-1, 3);
    for (int t = 0; t < 200; ++t) {
        TGen a{idx(rng), idx(rng), lev(rng)}, b{idx(rng), idx(rng), lev(rng)};
        EXPECT_TRUE(y.normal_form(derived_commutator(a, b, c) + derived_commutator(b, a, c)).is_zero());
    }
}

TEST(NormalForm, Examples) {
    UniversalYangian y({2, 0, 0, 4});
    NCExpression sorted = y.t(1, 1, 0) * y.t(1, 2, 1);
    EXPECT_EQ(y.normal_form(sorted), sorted);
    NCExpression diff = y.normal_form(y.t(2, 1, 1) * y.t(1, 2, 1)) - y.normal_form(y.t(1, 2, 1) * y.t(2, 1, 1));
    NCExpression expect = -(y.t(1, 1, 0) * y.t(2, 2, 1) - y.t(1, 1, 1) * y.t(2, 2, 0));
    EXPECT_EQ(diff, y.normal_form(expect));
    for (auto& [w, c] : diff.terms()) EXPECT_TRUE(is_sorted_word(w));
}

TEST(NormalForm, IdempotentAndLinear) {
    UniversalYangian y({2, 1, 0, 4});
    std::mt19937_64 rng(8);
    for (int t = 0; t < 50; ++t) {
        NCExpression a = random_word(y, rng, 4, 3), b = random_word(y, rng, 4, 3);
        NCExpression na = y.normal_form(a);
        EXPECT_EQ(y.normal_form(na), na);
        EXPECT_EQ(y.normal_form(a * Scalar(3) - b), na * Scalar(3) - y.normal_form(b));
    }
}

TEST(NormalForm, ConfluenceOnRandomTriples) {
    UniversalYangian y({2, 1, 0, 4});
    std::mt19937_64 rng(12);
    for (int t = 0; t < 100; ++t) {
        NCExpression a = random_word(y, rng, 3, 1), b = random_word(y, rng, 3, 1), c = random_word(y, rng, 3, 1);
        NCExpression left = y.normal_form(y.normal_form(a * b) * c);
        NCExpression right = y.normal_form(a * y.normal_form(b * c));
        EXPECT_EQ(left, right);
    }
}

TEST(Antisymmetrizer, Oracles) {
    EXPECT_EQ(antisymmetrizer(1, 3), TensorOperator::identity(3, 1));
    auto a2 = antisymmetrizer(2, 2);
    // basis order 11, 12, 21, 22
    EXPECT_EQ(a2.at(1, 1), make_scalar(1, 2));
    EXPECT_EQ(a2.at(1, 2), make_scalar(-1, 2));
    EXPECT_EQ(a2.at(2, 1), make_scalar(-1, 2));
    EXPECT_EQ(a2.at(2, 2), make_scalar(1, 2));
    EXPECT_EQ(a2.at(0, 0), Scalar(0));
    EXPECT_EQ(a2.at(3, 3), Scalar(0));
    EXPECT_EQ(a2.entries().size(), 4u);
    EXPECT_EQ(a2.trace(), Scalar(1));
    EXPECT_EQ(antisymmetrizer(2, 3).trace(), Scalar(3));
    EXPECT_EQ(antisymmetrizer(3, 3).trace(), Scalar(1));
    for (int k = 1; k <= 3; ++k) {
        auto a = antisymmetrizer(k, 3);
        EXPECT_EQ(a * a, a);
    }
}

TEST(Antisymmetrizer, ClassicalTensorTraceMatchesMinors) {
    // sigma_2 at n = 2 via tr(A_2 (C g) (x) (C g)) with commuting entries
    LoopContext ctx{2, 1, -4, 5};
    TwistMatrix C(ScalarMatrix{{2, 1}, {-1, 3}});
    auto A = antisymmetrizer(2, 2) * TensorOperator::tensor_power(C, 2);
    for (int r = -2; r <= 3; ++r) {
        Polynomial tr;
        for (auto& [rc, coef] : A.entries()) {
            auto a = A.decode(rc.first), b = A.decode(rc.second);
            for (int p = -1; p <= r + 1; ++p)
                tr += delta(b[0] + 1, a[0] + 1, p, ctx) * delta(b[1] + 1, a[1] + 1, r - p, ctx) * coef;
        }
        EXPECT_EQ(tr, sigma_universal(C, 2, r, ctx)) << r;
    }
}

TEST(Tau, RankTwoGoldenFormulas) {
    for (int N : {0, 1}) {
        UniversalYangian y({2, N, -2 * N, 5});
        Scalar c1 = 3, c2 = 7;
        TwistMatrix C = TwistMatrix::diagonal({c1, c2});
        for (int r = -N; r <= 5; ++r)
            EXPECT_EQ(y.tau(C, 1, r), y.normal_form(y.t(1, 1, r) * c1 + y.t(2, 2, r) * c2));
        for (int r = -2 * N; r <= 5; ++r) {
            NCExpression printed = shifted_product(y, 1, 1, 2, 2, r) + shifted_product(y, 2, 2, 1, 1, r) -
                                   shifted_product(y, 1, 2, 2, 1, r) - shifted_product(y, 2, 1, 1, 2, r);
            EXPECT_EQ(y.tau(C, 2, r), y.normal_form(printed * (c1 * c2 / 2))) << r;
        }
    }
}

TEST(Tau, ScalingAndWindow) {
    UniversalYangian y({3, 0, 0, 3});
    TwistMatrix C = TwistMatrix::standard(3);
    for (int k = 1; k <= 3; ++k)
        for (int r = 0; r <= 2; ++r) EXPECT_EQ(y.tau(C.scaled(2), k, r), y.tau(C, k, r) * power(Scalar(2), k));
    EXPECT_THROW(y.tau(C, 1, 4), WindowError);
}

TEST(Tau, ConjugationCovariance) {
    YContext c{2, 1, -2, 3};
    UniversalYangian y(c);
    ScalarMatrix g{{1, 2}, {0, 1}};
    auto gi = matrix_inverse(g);
    TwistMatrix C = TwistMatrix::standard(2);
    TwistMatrix C2 = C.conjugated(g, gi);
    auto image = [&](GeneratorId id) {
        auto d = y.decode(id);
        NCExpression out;
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b) {
                Scalar coef = gi[d.i - 1][a - 1] * g[b - 1][d.j - 1];
                if (coef != 0) out += y.t(a, b, d.r) * coef;
            }
        return out;
    };
    for (int k = 1; k <= 2; ++k)
        for (int r = -2; r <= 3; ++r)
            EXPECT_EQ(y.normal_form(y.tau(C, k, r).substitute(image)), y.tau(C2, k, r)) << k << " " << r;
}

TEST(Tau, CommutativitySmallGrid) {
    UniversalYangian y({2, 1, -2, 2});
    EXPECT_TRUE(verify_tau_commutativity(TwistMatrix::standard(2), y, sigma_pair_grid(2, -2, 2)).all_pass());
}

TEST(Symbol, TwistedDegree) {
    EXPECT_EQ(mu_twisted_degree({1, 2, 3}, ShiftVector({-1, 0})), 3);
    EXPECT_EQ(mu_twisted_degree({2, 1, 3}, ShiftVector({-1, 0})), 2);
}

TEST(Symbol, TauSymbolIsClassicalSigma) {
    for (auto [n, N, hi] : {std::tuple{2, 1, 4}, std::tuple{3, 0, 3}}) {
        YContext yc{n, N, -n * N, hi};
        LoopContext lc{n, N, -n * N, hi};
        UniversalYangian y(yc);
        auto C = TwistMatrix::standard(n);
        auto mu = ShiftVector::zero(n);
        for (int k = 1; k <= n; ++k)
            for (int r = -k * N; r <= hi; ++r) {
                auto s = symbol_quantum(y.tau(C, k, r), mu, yc);
                auto sig = sigma_universal(C, k, r, lc);
                EXPECT_EQ(s.symbol, sig);
                if (!sig.is_zero()) {
                    EXPECT_EQ(s.degree, r);
                }
            }
    }
}

TEST(Symbol, MultiplicativeOnProducts) {
    YContext c{2, 1, 0, 4};
    UniversalYangian y(c);
    auto mu = ShiftVector({-1, 0});
    std::mt19937_64 rng(21);
    for (int t = 0; t < 40; ++t) {
        NCExpression a = y.normal_form(random_word(y, rng, 2, 3)), b = y.normal_form(random_word(y, rng, 2, 3));
        auto sa = symbol_quantum(a, mu, c), sb = symbol_quantum(b, mu, c);
        auto sab = symbol_quantum(y.multiply(a, b), mu, c);
        EXPECT_EQ(sab.symbol, sa.symbol * sb.symbol);
        EXPECT_EQ(sab.degree, sa.degree + sb.degree);
    }
}

TEST(Symbol, QuantizationMatchesPoissonBracket) {
    for (auto mu : {ShiftVector({0, 0}), ShiftVector({-1, 0})}) {
        YContext c{2, 1, 0, 4};
        LoopContext lc{2, 1, 0, 4};
        UniversalYangian y(c);
        LoopPoissonAlgebra alg(lc);
        std::mt19937_64 rng(31);
        for (int t = 0; t < 40; ++t) {
            NCExpression a = y.normal_form(random_word(y, rng, 2, 3)), b = y.normal_form(random_word(y, rng, 2, 3));
            auto sa = symbol_quantum(a, mu, c), sb = symbol_quantum(b, mu, c);
            NCExpression comm = y.commutator(a, b);
            long target = sa.degree + sb.degree - 1;
            NCExpression top;
            for (auto& [w, x] : comm.terms()) {
                long d = 0;
                for (auto g : w) d += mu_twisted_degree(y.decode(g), mu);
                EXPECT_LE(d, target);
                if (d == target) top.add_term(w, x);
            }
            EXPECT_EQ(symbol_quantum(top, mu, c).symbol, alg.bracket(sa.symbol, sb.symbol));
        }
    }
}

TEST(StructureMaps, EvaluationIsAlgebraMap) {
    YContext c{2, 0, 0, 4};
    UniversalYangian y(c);
    EXPECT_EQ(evaluate_to_functions(y.t(1, 2, 0), c), D(1, 2, 0));
    EXPECT_TRUE(evaluate_to_functions(y.t(1, 2, 2), c).is_zero());
    std::mt19937_64 rng(6);
    for (int t = 0; t < 50; ++t) {
        NCExpression w = random_word(y, rng, 4, 2);
        EXPECT_EQ(evaluate_to_functions(y.normal_form(w), c), evaluate_to_functions(w, c));
    }
    EXPECT_THROW(evaluate_to_functions(NCExpression(1), YContext{2, 1, 0, 1}), PreconditionError);
}

TEST(StructureMaps, CoproductIsAlgebraMap) {
    YContext c{2, 0, 0, 4};
    UniversalYangian y(c);
    TensorSquare expect;
    for (int k = 1; k <= 2; ++k) expect.add_term({Word{y.gen(1, k, 0)}, Word{y.gen(k, 2, 0)}}, 1);
    EXPECT_EQ(coproduct(y.t(1, 2, 0), y), expect);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 25; ++t) {
        NCExpression a = random_word(y, rng, 2, 2), b = random_word(y, rng, 2, 2);
        TensorSquare lhs = coproduct(y.normal_form(a * b), y).normal_form(y);
        TensorSquare rhs = (coproduct(a, y) * coproduct(b, y)).normal_form(y);
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(StructureMaps, ShiftIsoRespectsCommutators) {
    YContext c1{2, 1, 0, 4}, c0{2, 0, 0, 4};
    UniversalYangian y0(c0);
    for (int p = -1; p <= 2; ++p)
        for (int q = -1; q <= 2; ++q)
            for (auto [i, j, k, l] : {std::tuple{1, 2, 2, 1}, std::tuple{1, 1, 1, 2}, std::tuple{2, 1, 2, 2}}) {
                NCExpression img = shift_iso(derived_commutator({i, j, p}, {k, l, q}, c1), c1);
                EXPECT_EQ(y0.normal_form(img), y0.normal_form(derived_commutator({i, j, p + 1}, {k, l, q + 1}, c0)));
            }
}
