#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>

#include "qps/errors.hpp"
#include "qps/operator.hpp"
#include "qps/point.hpp"

namespace qps {
namespace {

TEST(ModVec, ReducesEntries) {
    const Prime three(3);
    const ModVec v(three, {4, -1, 3});
    EXPECT_EQ(v.entries(), (std::vector<int>{1, 2, 0}));
    EXPECT_EQ((v + v).entries(), (std::vector<int>{2, 1, 0}));
    EXPECT_EQ((-v).entries(), (std::vector<int>{2, 1, 0}));
    EXPECT_EQ(v.scaled(2), v + v);
    EXPECT_THROW(v + ModVec(three, 2), std::invalid_argument);
    EXPECT_THROW(v + ModVec(Prime(5), 3), std::invalid_argument);
}

TEST(ModVec, DotIsUnreduced) {
    const Prime two(2);
    const ModVec a(two, {1, 1, 1});
    EXPECT_EQ(dot(a, a), 3);
}

TEST(DeltaP, Examples) {
    const Prime three(3);
    EXPECT_TRUE(delta_p(PhasePoint::origin(three, 1), PhasePoint::single(three, 3, 3)));
    const PhasePoint x = PhasePoint::single(three, 1, 2);
    EXPECT_TRUE(delta_p(x, x));
    EXPECT_FALSE(delta_p(x, PhasePoint::single(three, 1, 0)));
    EXPECT_THROW(delta_p(x, PhasePoint::origin(three, 2)), std::invalid_argument);
    EXPECT_THROW(delta_p(x, PhasePoint::origin(Prime(5), 1)), std::invalid_argument);
}

TEST(SymplecticRotate, MapsA1A2ToA2MinusA1) {
    const Prime five(5);
    EXPECT_EQ(symplectic_rotate(PhasePoint::single(five, 1, 3)), PhasePoint::single(five, 3, 4));
}

TEST(Space, FlatteningRoundTripsBigEndian) {
    for (auto [p, n] : {std::pair{2, 1}, {2, 3}, {3, 2}, {5, 1}}) {
        const Space space{Prime(p), static_cast<std::size_t>(n)};
        for (std::size_t i = 0; i < space.grid_size(); ++i) {
            ASSERT_EQ(space.index_of(space.point_at(i)), i);
        }
    }
    const Space s(Prime(3), 2);
    // a1 = (0, 1) -> 1, a2 = (2, 0) -> 6; index = 1 * 9 + 6.
    const PhasePoint x(ModVec(Prime(3), {0, 1}), ModVec(Prime(3), {2, 0}));
    EXPECT_EQ(s.index_of(x), 15U);
    EXPECT_EQ(s.point_at(15), x);
}

TEST(Limits, EnforceCaps) {
    Limits limits;
    EXPECT_NO_THROW(limits.require_dim(243, "x"));
    EXPECT_THROW(limits.require_dim(244, "x"), CapExceeded);
    EXPECT_THROW(limits.require_triples(1'000'000'001ULL, "x"), CapExceeded);
}

TEST(Limits, EnvironmentOverride) {
    ::setenv("QPS_CAP", "16,1000", 1);
    Limits limits = Limits::from_env();
    EXPECT_EQ(limits.max_dim, 16U);
    EXPECT_EQ(limits.max_triples, 1000U);
    ::setenv("QPS_CAP", "32", 1);
    limits = Limits::from_env();
    EXPECT_EQ(limits.max_dim, 32U);
    EXPECT_EQ(limits.max_triples, 1'000'000'000ULL);
    ::setenv("QPS_CAP", "lots", 1);
    EXPECT_THROW(Limits::from_env(), std::invalid_argument);
    ::unsetenv("QPS_CAP");
}

TEST(PhaseMonomial, ProductAdjointAndKronMatchDense) {
    const Prime five(5);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> e(0, 19);
    const auto random_monomial = [&](std::size_t dim) {
        std::vector<std::size_t> rows(dim);
        std::iota(rows.begin(), rows.end(), 0);
        std::shuffle(rows.begin(), rows.end(), rng);
        std::vector<Phase> phases;
        for (std::size_t c = 0; c < dim; ++c) {
            phases.push_back(Phase::from_exponent(five, e(rng)));
        }
        return PhaseMonomial(five, rows, phases);
    };
    for (int trial = 0; trial < 20; ++trial) {
        const PhaseMonomial a = random_monomial(5);
        const PhaseMonomial b = random_monomial(5);
        EXPECT_LT(max_abs_diff((a * b).to_matrix(), a.to_matrix() * b.to_matrix()), 1e-12);
        EXPECT_LT(max_abs_diff(a.adjoint().to_matrix(), a.to_matrix().adjoint()), 1e-12);
        EXPECT_LT(max_abs_diff(a.kron(b).to_matrix(), kron(a.to_matrix(), b.to_matrix())), 1e-12);
        EXPECT_LT(std::abs(a.trace().to_complex() - a.to_matrix().trace()), 1e-12);
    }
}

TEST(PhaseMonomial, RejectsNonPermutations) {
    const Prime two(2);
    EXPECT_THROW(PhaseMonomial(two, {0, 0}, {Phase(two), Phase(two)}), std::invalid_argument);
    EXPECT_THROW(PhaseMonomial(two, {0, 1}, {Phase(two)}), std::invalid_argument);
}

TEST(Pauli, OnSitePlacesSiteOneLeftmost) {
    const Matrix zi = pauli::on_site(pauli::Z(), 0, 2);
    EXPECT_EQ(max_abs_diff(zi, kron(pauli::Z(), pauli::I())), 0.0);
    EXPECT_EQ(max_abs_diff(pauli::on_site(pauli::X(), 1, 2), kron(pauli::I(), pauli::X())), 0.0);
}

TEST(TraceInner, IsConjugateLinearInFirstArgument) {
    Matrix a(1, 1), b(1, 1);
    a << Complex(0.0, 1.0);
    b << Complex(2.0, 0.0);
    EXPECT_EQ(trace_inner(a, b), Complex(0.0, -2.0));
}

}  // namespace
}  // namespace qps
