#pragma once

// Von Neumann dynamics in phase-space coefficients (hbar = 1).
//
// Coefficients of an operator M are rho_B(a) = tr(B(a)^dagger M), and
// M = p^{-N} sum_a rho_B(a) B(a) reconstructs it.

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qps/errors.hpp"
#include "qps/gamma.hpp"
#include "qps/operator.hpp"
#include "qps/point.hpp"
#include "qps/wigner.hpp"

namespace qps {

CoeffGrid coeffs_from_density(const Matrix& rho, const BasisSet& basis);
CoeffGrid coeffs_from_density(const DenseOperator& rho, Basis basis, const Space& space);

DenseOperator density_from_coeffs(const CoeffGrid& grid, const BasisSet& basis);
DenseOperator density_from_coeffs(const CoeffGrid& grid, Basis basis);

/// A validated density matrix together with its FW coefficients.
class DensityState {
  public:
    /// Normalizes the trace, then requires Hermiticity (1e-10) and eigenvalues >= -1e-8.
    static DensityState from_matrix(const Space& space, Matrix rho);
    /// p = 2 product state with per-site Bloch vectors (x, y, z), |r| <= 1.
    static DensityState from_bloch(std::span<const std::array<double, 3>> bloch);
    static DensityState from_grid(const CoeffGrid& grid, Basis basis);

    const Space& space() const noexcept { return space_; }
    const Matrix& matrix() const noexcept { return rho_; }
    const CoeffGrid& fw() const noexcept { return fw_; }

  private:
    DensityState(Space space, Matrix rho, CoeffGrid fw);

    Space space_;
    Matrix rho_;
    CoeffGrid fw_;
};

/// H = 1/2 sum_{i != j} [ Jperp_ij / 2 (X_i X_j + Y_i Y_j) + Jz_ij Z_i Z_j ] + Omega sum_i X_i
/// on N qubits (p = 2). The sum runs over ordered pairs.
struct SpinHamiltonianSpec {
    std::size_t sites = 0;
    Eigen::MatrixXd j_perp;
    Eigen::MatrixXd j_z;
    double omega = 0.0;

    static SpinHamiltonianSpec zero(std::size_t sites);

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

DenseOperator build_hamiltonian(const SpinHamiltonianSpec& spec, const Limits& limits = {});

/// H_FW from the coefficient table, with each ordered pair (i, j) contributing
/// its tabulated value.
CoeffGrid hamiltonian_fw_coeffs(const SpinHamiltonianSpec& spec);

/// d rho_B / dt = -i p^{-2N} sum_{b,c} K(a, b, c) H_B(b) rho_B(c) with the
/// antisymmetrized structure tensor K (see gamma.hpp). Builds the tensor once.
class CoefficientRhs {
  public:
    CoefficientRhs(Basis basis, const Space& space, const Limits& limits = {},
                   GammaMethod method = GammaMethod::Auto);

    Basis basis() const noexcept { return tensor_.basis(); }
    const GammaTensor& tensor() const noexcept { return tensor_; }

    CoeffGrid operator()(const CoeffGrid& hamiltonian, const CoeffGrid& rho) const;

  private:
    GammaTensor tensor_;
};

CoeffGrid rhs_general(Basis basis, const CoeffGrid& hamiltonian, const CoeffGrid& rho);

/// The specialized FW right-hand side for the spin Hamiltonian, evaluated term
/// by term. Shifted labels are reduced mod 2 before entering the phases.
CoeffGrid rhs_spin_fw(const SpinHamiltonianSpec& spec, const CoeffGrid& rho);

/// Single-site FW modes of spin k: x = rho(e_k, 0), z = rho(0, e_k), y = rho(e_k, e_k).
struct SiteTriple {
    Complex x;
    Complex z;
    Complex y;
};

using MeanFieldState = std::vector<SiteTriple>;

/// The closed classical-spin system for the tensor-product ansatz.
MeanFieldState meanfield_rhs(const SpinHamiltonianSpec& spec, const MeanFieldState& state);

/// Reads the single-site modes out of a full p = 2 FW grid.
MeanFieldState site_triples(const CoeffGrid& grid);

/// rho(a) = prod_k rho^{(k)}(a^{(k)} e_k) for a product of single-site states.
CoeffGrid factorize_product_state(std::span<const Matrix> site_states, Basis basis = Basis::FourierWigner);
CoeffGrid factorize_product_state(const MeanFieldState& state);

enum class EvolveMethod { Full, MeanField };

std::string to_string(EvolveMethod method);
EvolveMethod parse_method(std::string_view text);

struct Trajectory {
    EvolveMethod method = EvolveMethod::Full;
    double dt = 0.0;
    std::vector<double> times;
    /// FW coefficient grids; mean-field states are stored in factorized form.
    std::vector<CoeffGrid> states;
};

/// Classic fixed-step RK4 from t = 0 to t_final. Every step is sampled; when
/// dt does not divide t_final the last step is shortened. Throws
/// NumericalFailure on a non-finite state.
Trajectory evolve(const CoeffGrid& initial_fw, const SpinHamiltonianSpec& spec, double t_final, double dt,
                  EvolveMethod method);
Trajectory evolve(const DensityState& initial, const SpinHamiltonianSpec& spec, double t_final, double dt,
                  EvolveMethod method);

/// tr(rho^dagger rho) from FW coefficients.
double purity(const CoeffGrid& fw);

/// max |rho - rho^dagger| of the reconstructed matrix.
double hermiticity_violation(const CoeffGrid& fw);

struct ConservationDiagnostics {
    double max_trace_drift = 0.0;
    double max_hermiticity_violation = 0.0;
    double max_purity_drift = 0.0;
};

ConservationDiagnostics diagnose(const Trajectory& trajectory);

}  // namespace qps
