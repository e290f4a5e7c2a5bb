#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qps/heisenberg_weyl.hpp"

namespace qps {
namespace {

Matrix permutation(int p, int (*f)(int, int)) {
    Matrix m = Matrix::Zero(p, p);
    for (int l = 0; l < p; ++l) {
        m(f(l, p), l) = 1.0;
    }
    return m;
}

TEST(Displacement, PauliXAtTwo) {
    EXPECT_EQ(max_abs_diff(displacement(PhasePoint::single(Prime(2), 1, 0)).matrix(), pauli::X()), 0.0);
}

TEST(Displacement, OriginIsIdentity) {
    for (int p : {2, 3, 5}) {
        for (std::size_t n : {1U, 2U}) {
            const Matrix d = displacement(PhasePoint::origin(Prime(p), n)).matrix();
            EXPECT_EQ(max_abs_diff(d, Matrix::Identity(d.rows(), d.cols())), 0.0);
        }
    }
}

TEST(Displacement, CyclicShiftAtThree) {
    const Matrix shift = permutation(3, [](int l, int p) { return (l + 1) % p; });
    EXPECT_EQ(max_abs_diff(displacement(PhasePoint::single(Prime(3), 1, 0)).matrix(), shift), 0.0);
}

TEST(Displacement, MatchesDefiningSumAndTensorsOverSites) {
    std::mt19937_64 rng(3);
    for (int p : {2, 3, 5}) {
        const std::size_t n = p == 5 ? 2 : 3;
        const Space space(Prime(p), n);
        std::uniform_int_distribution<std::size_t> pick(0, space.grid_size() - 1);
        for (int trial = 0; trial < 20; ++trial) {
            const PhasePoint x = space.point_at(pick(rng));
            const oracle::Labels a1(x.a1.entries().begin(), x.a1.entries().end());
            const oracle::Labels a2(x.a2.entries().begin(), x.a2.entries().end());
            EXPECT_LT(max_abs_diff(displacement(x).matrix(), oracle::displacement(p, a1, a2)), 1e-12);
        }
    }
}

TEST(Displacement, UnreducedLabelsAgreeWithReduced) {
    const Prime three(3);
    const std::vector<long long> a1{4, -2}, a2{-1, 7};
    const PhasePoint reduced(ModVec(three, a1), ModVec(three, a2));
    EXPECT_EQ(displacement_exact(a1, a2, three), displacement_exact(reduced));
}

TEST(Displacement, IsUnitary) {
    for (int p : {2, 3, 5}) {
        const Space space(Prime(p), p == 5 ? 1 : 2);
        for (std::size_t i = 0; i < space.grid_size(); ++i) {
            const Matrix d = displacement(space.point_at(i)).matrix();
            ASSERT_LT(max_abs_diff(d.adjoint() * d, Matrix::Identity(d.rows(), d.cols())), 1e-12);
        }
    }
}

TEST(Flip, Examples) {
    const Matrix u2 = flip_operator(Prime(2), 1).matrix();
    EXPECT_EQ(max_abs_diff(u2, Matrix::Identity(2, 2)), 0.0);
    const Matrix u3 = flip_operator(Prime(3), 1).matrix();
    EXPECT_EQ(max_abs_diff(u3, permutation(3, [](int l, int p) { return (p - l) % p; })), 0.0);
    for (int p : {2, 3, 5, 7}) {
        const Matrix u = flip_operator(Prime(p), 2).matrix();
        EXPECT_EQ(max_abs_diff(u * u, Matrix::Identity(u.rows(), u.cols())), 0.0);
        EXPECT_EQ(max_abs_diff(u, u.adjoint()), 0.0);
    }
}

TEST(Flip, ConjugatesDisplacements) {
    for (int p : {3, 5, 7}) {
        const Space space(Prime(p), 1);
        const Matrix u = flip_operator(Prime(p), 1).matrix();
        for (std::size_t i = 0; i < space.grid_size(); ++i) {
            const PhasePoint x = space.point_at(i);
            EXPECT_LT(max_abs_diff(displacement(x).matrix() * u, u * displacement(-x).matrix()), 1e-12);
        }
    }
}

TEST(ComposeLaw, Examples) {
    const Prime two(2), three(3);
    EXPECT_TRUE(compose_law_check(PhasePoint::origin(three, 1), PhasePoint::single(three, 2, 1)).is_one());
    EXPECT_EQ(compose_law_check(PhasePoint::single(two, 0, 1), PhasePoint::single(two, 1, 0)), omega_pow(1, two));
    EXPECT_EQ(compose_law_check(PhasePoint::single(three, 0, 1), PhasePoint::single(three, 1, 0)),
              omega_pow(1, three));
    // Z X = -X Z at p = 2, read against the matrices directly.
    const Matrix zx = displacement(PhasePoint::single(two, 0, 1)).matrix() *
                      displacement(PhasePoint::single(two, 1, 0)).matrix();
    EXPECT_LT(max_abs_diff(zx, -1.0 * displacement(PhasePoint::single(two, 1, 1)).matrix()), 1e-15);
}

TEST(ComposeLaw, HoldsAgainstMatrixProducts) {
    const Space space(Prime(3), 1);
    for (std::size_t i = 0; i < space.grid_size(); ++i) {
        for (std::size_t j = 0; j < space.grid_size(); ++j) {
            const PhasePoint x = space.point_at(i), y = space.point_at(j);
            const Matrix lhs = displacement(x).matrix() * displacement(y).matrix();
            const Matrix rhs = compose_law_check(x, y).to_complex() * displacement(x + y).matrix();
            ASSERT_LT(max_abs_diff(lhs, rhs), 1e-12);
        }
    }
}

TEST(DaggerLaw, Examples) {
    const Prime two(2), five(5);
    const auto [p0, x0] = dagger_law_check(PhasePoint::origin(two, 1));
    EXPECT_TRUE(p0.is_one());
    EXPECT_TRUE(x0.is_zero());
    const auto [p1, x1] = dagger_law_check(PhasePoint::single(two, 1, 1));
    EXPECT_EQ(p1, sign_pow(1, two));
    EXPECT_EQ(x1, PhasePoint::single(two, 1, 1));
    const auto [p2, x2] = dagger_law_check(PhasePoint::single(five, 2, 3));
    EXPECT_EQ(p2, omega_pow(1, five));
    EXPECT_EQ(x2, PhasePoint::single(five, 3, 2));
    const Matrix d = displacement(PhasePoint::single(five, 2, 3)).matrix();
    EXPECT_LT(max_abs_diff(d.adjoint(), p2.to_complex() * displacement(x2).matrix()), 1e-12);
}

TEST(Orthogonality, Examples) {
    EXPECT_TRUE(hw_orthogonality(Space(Prime(2), 1)));
    EXPECT_TRUE(hw_orthogonality(Space(Prime(3), 1)));
    EXPECT_TRUE(hw_orthogonality(Space(Prime(2), 2)));
    Limits small;
    small.max_dim = 3;
    EXPECT_THROW(hw_orthogonality(Space(Prime(2), 2), small), CapExceeded);
}

TEST(GroupLaws, AllPassExhaustively) {
    for (auto [p, n] : {std::pair{2, 1}, {2, 2}, {3, 1}, {3, 2}, {5, 1}, {7, 1}}) {
        const GroupLawReport r = verify_group_laws(Space(Prime(p), static_cast<std::size_t>(n)));
        EXPECT_TRUE(r.ok()) << "p=" << p << " n=" << n;
        const std::size_t g = Space(Prime(p), static_cast<std::size_t>(n)).grid_size();
        EXPECT_EQ(r.pairs_checked, g * g);
    }
}

}  // namespace
}  // namespace qps
