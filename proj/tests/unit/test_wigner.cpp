#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qps/heisenberg_weyl.hpp"
#include "qps/operator.hpp"
#include "qps/wigner.hpp"

namespace qps {
namespace {

oracle::Labels labels(const ModVec& v) { return {v.entries().begin(), v.entries().end()}; }

TEST(FourierWigner, IsExactlyThePaulisAtTwo) {
    const Prime two(2);
    EXPECT_EQ(max_abs_diff(fourier_wigner_op(PhasePoint::single(two, 0, 0)).matrix(), pauli::I()), 0.0);
    EXPECT_EQ(max_abs_diff(fourier_wigner_op(PhasePoint::single(two, 0, 1)).matrix(), pauli::Z()), 0.0);
    EXPECT_EQ(max_abs_diff(fourier_wigner_op(PhasePoint::single(two, 1, 0)).matrix(), pauli::X()), 0.0);
    EXPECT_EQ(max_abs_diff(fourier_wigner_op(PhasePoint::single(two, 1, 1)).matrix(), pauli::Y()), 0.0);
}

TEST(FourierWigner, PhaseAtThree) {
    const Prime three(3);
    const PhasePoint x = PhasePoint::single(three, 1, 1);
    // 2^{-1} = 2 mod 3.
    EXPECT_EQ(fourier_wigner_phase(x), omega_pow(2, three));
    EXPECT_EQ(fourier_wigner_exact(x), displacement_exact(x).scaled(omega_pow(2, three)));
}

TEST(FourierWigner, MatchesOracle) {
    for (auto [p, n] : {std::pair{2, 2}, {3, 2}, {5, 1}, {7, 1}}) {
        const Space space(Prime(p), static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < space.grid_size(); ++i) {
            const PhasePoint x = space.point_at(i);
            ASSERT_LT(max_abs_diff(fourier_wigner_op(x).matrix(),
                                   oracle::fourier_wigner(p, labels(x.a1), labels(x.a2))),
                      1e-12);
        }
    }
}

TEST(Wigner, SingleQubitCombinations) {
    const Prime two(2);
    const Matrix w01 = 0.5 * (pauli::I() - pauli::Z() + pauli::X() - pauli::Y());
    EXPECT_LT(max_abs_diff(wigner_op(PhasePoint::single(two, 0, 1)).matrix(), w01), 1e-15);
    const Matrix w11 = 0.5 * (pauli::I() - pauli::Z() - pauli::X() + pauli::Y());
    EXPECT_LT(max_abs_diff(wigner_op(PhasePoint::single(two, 1, 1)).matrix(), w11), 1e-15);
}

TEST(Wigner, ClosedFormMatchesDefinition) {
    for (auto [p, n] : {std::pair{3, 1}, {3, 2}, {5, 1}, {7, 1}}) {
        const Space space(Prime(p), static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < space.grid_size(); ++i) {
            const PhasePoint x = space.point_at(i);
            const Matrix expected = oracle::wigner(p, labels(x.a1), labels(x.a2));
            ASSERT_LT(max_abs_diff(wigner_closed_form(x).to_matrix(), expected), 1e-12);
            ASSERT_LT(max_abs_diff(wigner_op(x).matrix(), expected), 1e-12);
        }
    }
    EXPECT_THROW(wigner_closed_form(PhasePoint::single(Prime(2), 0, 0)), std::domain_error);
}

TEST(Wigner, ClosedFormExampleAtThree) {
    const Prime three(3);
    const PhasePoint x = PhasePoint::single(three, 1, 2);
    // omega^{-4} D(4, -2) U = omega^2 D(1, 1) U.
    const PhaseMonomial expected =
        (displacement_exact(PhasePoint::single(three, 1, 1)) * flip_exact(three, 1)).scaled(omega_pow(2, three));
    EXPECT_EQ(wigner_closed_form(x), expected);
}

TEST(Wigner, HermitianUnitTraceOrthogonalComplete) {
    for (auto [p, n] : {std::pair{2, 1}, {2, 2}, {3, 1}, {3, 2}, {5, 1}}) {
        const Space space(Prime(p), static_cast<std::size_t>(n));
        const BasisSet basis(space, Basis::Wigner);
        const auto d = static_cast<double>(space.dim());
        Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(space.dim()), static_cast<Eigen::Index>(space.dim()));
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const Matrix& w = basis[i].matrix();
            ASSERT_LT(max_abs_diff(w, w.adjoint()), 1e-12);
            ASSERT_LT(std::abs(w.trace() - Complex(1.0, 0.0)), 1e-12);
            for (std::size_t j = 0; j < basis.size(); ++j) {
                const Complex expected = i == j ? Complex(d, 0.0) : Complex(0.0, 0.0);
                ASSERT_LT(std::abs(trace_inner(w, basis[j].matrix()) - expected), 1e-10);
            }
            sum += w;
        }
        EXPECT_LT(max_abs_diff(sum / d, Matrix::Identity(sum.rows(), sum.cols())), 1e-12);
    }
}

TEST(Wootters, Examples) {
    const Prime three(3), five(5);
    const Matrix a00 = wootters_op(PhasePoint::single(three, 0, 0)).matrix();
    Matrix expected = Matrix::Zero(3, 3);
    expected(0, 0) = 1.0;
    expected(1, 2) = 1.0;
    expected(2, 1) = 1.0;
    EXPECT_LT(max_abs_diff(a00, expected), 1e-15);

    const Matrix a10 = wootters_op(PhasePoint::single(five, 1, 0)).matrix();
    for (int j = 0; j < 5; ++j) {
        for (int k = 0; k < 5; ++k) {
            const double want = (j + k) % 5 == 2 ? 1.0 : 0.0;
            EXPECT_LT(std::abs(a10(j, k) - Complex(want, 0.0)), 1e-15) << j << "," << k;
        }
    }
    for (int p : {2, 3, 5, 7}) {
        for (int a1 = 0; a1 < p; ++a1) {
            for (int a2 = 0; a2 < p; ++a2) {
                ASSERT_LT(max_abs_diff(wootters_op(PhasePoint::single(Prime(p), a1, a2)).matrix(),
                                       oracle::wootters(p, a1, a2)),
                          1e-12);
            }
        }
    }
    EXPECT_THROW(wootters_op(PhasePoint::origin(three, 2)), std::invalid_argument);
}

TEST(Identification, SymplecticTransformAndReversedRotationHold) {
    for (int p : {2, 3, 5, 7}) {
        const IdentificationReport r = wootters_identification(Prime(p));
        EXPECT_LT(r.symplectic_error, 1e-12) << "p=" << p;
        EXPECT_LT(r.reversed_rotation_error, 1e-12) << "p=" << p;
    }
}

TEST(Identification, ForwardRotationFailsForOddPrimes) {
    const IdentificationReport two = wootters_identification(Prime(2));
    EXPECT_LT(two.rotation_error, 1e-12);
    EXPECT_TRUE(two.ok());
    EXPECT_TRUE(wootters_identification_check(Prime(2)));
    for (int p : {3, 5, 7}) {
        const IdentificationReport r = wootters_identification(Prime(p));
        EXPECT_GT(r.rotation_error, 1.0) << "p=" << p;
        EXPECT_FALSE(r.ok());
    }
}

TEST(Identification, ReversedRotationAgainstOracle) {
    for (int p : {3, 5}) {
        for (int a1 = 0; a1 < p; ++a1) {
            for (int a2 = 0; a2 < p; ++a2) {
                const Matrix w = oracle::wigner(p, {(p - a2) % p}, {a1});
                EXPECT_LT(max_abs_diff(oracle::wootters(p, a1, a2), w), 1e-12);
            }
        }
    }
}

TEST(FourierGrid, RoundTripsAndDelta) {
    std::mt19937_64 rng(11);
    for (auto [p, n] : {std::pair{2, 2}, {3, 1}, {3, 2}, {5, 1}}) {
        const Space space(Prime(p), static_cast<std::size_t>(n));
        const CoeffGrid g = oracle::random_grid(rng, space);
        for (Direction d : {Direction::Forward, Direction::Inverse}) {
            const Direction back = d == Direction::Forward ? Direction::Inverse : Direction::Forward;
            EXPECT_LT(max_abs_diff(fourier_grid(fourier_grid(g, d), back), g), 1e-12);
        }
        // The symplectic kernel is antisymmetric, so the forward transform is an
        // involution and the conjugate kernel composes with it to a parity flip.
        const CoeffGrid fwd = symplectic_fourier_grid(g, Direction::Forward);
        EXPECT_LT(max_abs_diff(symplectic_fourier_grid(fwd, Direction::Forward), g), 1e-12);
        const CoeffGrid parity = symplectic_fourier_grid(fwd, Direction::Inverse);
        for (std::size_t i = 0; i < g.size(); ++i) {
            EXPECT_LT(std::abs(parity[i] - g.at(-space.point_at(i))), 1e-12);
        }
        const CoeffGrid spread = fourier_grid(CoeffGrid::delta(space, PhasePoint::origin(space.prime(), space.sites())),
                                              Direction::Forward);
        for (std::size_t i = 0; i < spread.size(); ++i) {
            EXPECT_LT(std::abs(spread[i] - Complex(1.0 / static_cast<double>(space.dim()), 0.0)), 1e-15);
        }
    }
}

TEST(FourierGrid, MapsFourierWignerCoefficientsToWigner) {
    std::mt19937_64 rng(5);
    for (auto [p, n] : {std::pair{2, 1}, {2, 2}, {3, 1}, {3, 2}, {5, 1}}) {
        const Space space(Prime(p), static_cast<std::size_t>(n));
        const Matrix rho = oracle::random_density(rng, space.dim());
        const CoeffGrid fw = oracle::coeffs(rho, oracle::basis(p, space.sites(), Basis::FourierWigner), space);
        const CoeffGrid w = oracle::coeffs(rho, oracle::basis(p, space.sites(), Basis::Wigner), space);
        EXPECT_LT(max_abs_diff(fourier_grid(fw, Direction::Forward), w), 1e-12);
        EXPECT_LT(max_abs_diff(fourier_grid(w, Direction::Inverse), fw), 1e-12);
    }
}

TEST(Basis, ParsesNames) {
    EXPECT_EQ(parse_basis("w"), Basis::Wigner);
    EXPECT_EQ(parse_basis("wigner"), Basis::Wigner);
    EXPECT_EQ(parse_basis("fw"), Basis::FourierWigner);
    EXPECT_EQ(parse_basis("fourier-wigner"), Basis::FourierWigner);
    EXPECT_THROW(parse_basis("W"), std::invalid_argument);
}

}  // namespace
}  // namespace qps
