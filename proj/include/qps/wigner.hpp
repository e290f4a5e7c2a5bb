#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qps/errors.hpp"
#include "qps/operator.hpp"
#include "qps/point.hpp"

namespace qps {

enum class Basis { Wigner, FourierWigner };

std::string to_string(Basis basis);
/// Accepts "w", "wigner", "fw", "fourier-wigner" (case-sensitive).
Basis parse_basis(std::string_view text);

enum class Direction { Forward, Inverse };

/// omega^{2^{-1} a1 . a2} for odd p, i^{a1 . a2} for p = 2.
Phase fourier_wigner_phase(const PhasePoint& point);

/// FW(a1, a2) = fourier_wigner_phase(a) D(a1, a2). At p = 2 the family is
/// exactly {I, Z, X, Y}.
PhaseMonomial fourier_wigner_exact(const PhasePoint& point);
DenseOperator fourier_wigner_op(const PhasePoint& point);

/// W(a) = p^{-N} sum_b omega^{-(a1 . b1 + a2 . b2)} FW(b), for every p.
DenseOperator wigner_op(const PhasePoint& point);

/// Closed form omega^{-2 a1 . a2} D(2 a2, -2 a1) U for odd p. Throws
/// std::domain_error for p = 2.
PhaseMonomial wigner_closed_form(const PhasePoint& point);

/// Wootters' A_alpha on Z_p^2 (N = 1 only; throws std::invalid_argument otherwise).
DenseOperator wootters_op(const PhasePoint& point);

/// A complex function on the p^N x p^N phase-space grid, flattened as
/// Space::index_of.
class CoeffGrid {
  public:
    explicit CoeffGrid(const Space& space);
    CoeffGrid(const Space& space, std::vector<Complex> values);

    const Space& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return values_.size(); }

    Complex& operator[](std::size_t i) { return values_[i]; }
    const Complex& operator[](std::size_t i) const { return values_[i]; }
    Complex& at(const PhasePoint& x) { return values_[space_.index_of(x)]; }
    const Complex& at(const PhasePoint& x) const { return values_[space_.index_of(x)]; }

    const std::vector<Complex>& values() const noexcept { return values_; }
    std::vector<Complex>& values() noexcept { return values_; }

    CoeffGrid& operator+=(const CoeffGrid& other);
    CoeffGrid operator+(const CoeffGrid& other) const;
    CoeffGrid operator*(Complex scale) const;

    /// The grid with value 1 at x and 0 elsewhere.
    static CoeffGrid delta(const Space& space, const PhasePoint& x);

  private:
    Space space_;
    std::vector<Complex> values_;
};

double max_abs_diff(const CoeffGrid& a, const CoeffGrid& b);

/// Forward kernel p^{-N} omega^{a1 . b1 + a2 . b2}; inverse conjugates the phase.
CoeffGrid fourier_grid(const CoeffGrid& grid, Direction direction);

/// Forward kernel p^{-N} omega^{a1 . b2 - a2 . b1}; inverse conjugates the phase.
///
/// The kernel is antisymmetric, so Forward is its own inverse and Inverse
/// after Forward is the parity map g(a) -> g(-a). Inverse is the direction that
/// carries Fourier-Wigner operators to Wootters' basis.
CoeffGrid symplectic_fourier_grid(const CoeffGrid& grid, Direction direction);

struct IdentificationReport {
    /// max over alpha of |A_alpha - W(a2, -a1)|_max.
    double rotation_error = 0.0;
    /// max over alpha of |A_alpha - W(-a2, a1)|_max.
    double reversed_rotation_error = 0.0;
    /// max over alpha of |A_alpha - (inverse symplectic transform of FW)(alpha)|_max.
    double symplectic_error = 0.0;

    bool ok(double tol = 1e-12) const noexcept { return rotation_error <= tol && symplectic_error <= tol; }
};

/// Exhaustive comparison of Wootters' basis against the rotated Wigner basis
/// (both rotation senses) and the inverse symplectic transform of the
/// Fourier-Wigner basis. ok() asks for W(a2, -a1) and the symplectic identity;
/// for odd p only the reversed rotation W(-a2, a1) actually holds.
IdentificationReport wootters_identification(Prime p);
bool wootters_identification_check(Prime p, double tol = 1e-12);

/// All basis operators for a space, indexed like CoeffGrid.
class BasisSet {
  public:
    BasisSet(const Space& space, Basis basis, const Limits& limits = {});

    const Space& space() const noexcept { return space_; }
    Basis basis() const noexcept { return basis_; }
    std::size_t size() const noexcept { return ops_.size(); }
    const DenseOperator& operator[](std::size_t i) const { return ops_[i]; }
    const std::vector<DenseOperator>& ops() const noexcept { return ops_; }

  private:
    Space space_;
    Basis basis_;
    std::vector<DenseOperator> ops_;
};

/// The basis operator for one point.
DenseOperator basis_op(Basis basis, const PhasePoint& point);

}  // namespace qps
