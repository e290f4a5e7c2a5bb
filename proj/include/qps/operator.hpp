#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "qps/phase.hpp"

namespace qps {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// A generalized permutation matrix whose nonzero entries are exact phases.
///
/// Column c holds a single nonzero at row row_of_col[c]. Displacement, flip,
/// Fourier-Wigner and odd-p Wigner operators all have this shape, and the set
/// is closed under products, adjoints and Kronecker products.
class PhaseMonomial {
  public:
    /// The identity.
    PhaseMonomial(Prime p, std::size_t dim);
    PhaseMonomial(Prime p, std::vector<std::size_t> row_of_col, std::vector<Phase> phases);

    Prime prime() const noexcept { return p_; }
    std::size_t dim() const noexcept { return rows_.size(); }
    std::size_t row_of_col(std::size_t c) const noexcept { return rows_[c]; }
    const Phase& phase_of_col(std::size_t c) const noexcept { return phases_[c]; }

    PhaseMonomial operator*(const PhaseMonomial& other) const;
    PhaseMonomial adjoint() const;
    PhaseMonomial scaled(const Phase& phase) const;
    PhaseMonomial kron(const PhaseMonomial& other) const;

    PhaseSum trace() const;
    Matrix to_matrix() const;

    friend bool operator==(const PhaseMonomial& a, const PhaseMonomial& b) noexcept {
        return a.p_ == b.p_ && a.rows_ == b.rows_ && a.phases_ == b.phases_;
    }

  private:
    Prime p_;
    std::vector<std::size_t> rows_;
    std::vector<Phase> phases_;
};

/// A dense p^N x p^N complex operator, optionally carrying its exact view.
class DenseOperator {
  public:
    explicit DenseOperator(Matrix values) : values_(std::move(values)) {}
    explicit DenseOperator(PhaseMonomial exact) : values_(exact.to_matrix()), exact_(std::move(exact)) {}

    std::size_t dim() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    const Matrix& matrix() const noexcept { return values_; }
    Complex operator()(std::size_t r, std::size_t c) const { return values_(r, c); }
    const std::optional<PhaseMonomial>& exact() const noexcept { return exact_; }
    bool has_exact() const noexcept { return exact_.has_value(); }

    DenseOperator adjoint() const;
    DenseOperator operator*(const DenseOperator& other) const;
    DenseOperator kron(const DenseOperator& other) const;
    Complex trace() const { return values_.trace(); }

  private:
    Matrix values_;
    std::optional<PhaseMonomial> exact_;
};

Matrix kron(const Matrix& a, const Matrix& b);

/// max_{ij} |a_ij - b_ij|.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// tr(a^dagger b).
Complex trace_inner(const Matrix& a, const Matrix& b);

/// Single-qubit Pauli matrices.
namespace pauli {
Matrix I();
Matrix X();
Matrix Y();
Matrix Z();
/// The single-site operator `op` acting on site k of n (site 1 is k = 0).
Matrix on_site(const Matrix& op, std::size_t k, std::size_t n);
}  // namespace pauli

}  // namespace qps
