#include "qps/dynamics.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace qps {

namespace {

void require_qubits(const Space& space, const char* what) {
    if (space.prime().value() != 2) {
        throw std::invalid_argument(std::string(what) + ": spin dynamics requires p = 2");
    }
}

void require_match(const SpinHamiltonianSpec& spec, const Space& space, const char* what) {
    require_qubits(space, what);
    if (spec.sites != space.sites()) {
        throw std::invalid_argument(std::string(what) + ": Hamiltonian has " + std::to_string(spec.sites) +
                                    " sites but the state has " + std::to_string(space.sites()));
    }
}

Complex tr_adjoint_times(const DenseOperator& b, const Matrix& rho) {
    if (const auto& exact = b.exact()) {
        Complex sum{0.0, 0.0};
        for (std::size_t c = 0; c < exact->dim(); ++c) {
            sum += std::conj(exact->phase_of_col(c).to_complex()) *
                   rho(static_cast<Eigen::Index>(exact->row_of_col(c)), static_cast<Eigen::Index>(c));
        }
        return sum;
    }
    return trace_inner(b.matrix(), rho);
}

// Powers of i indexed by the exponent mod 4.
constexpr Complex kIPow[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

Complex i_power(int e) { return kIPow[e & 3]; }
int sign(int e) { return (e & 1) ? -1 : 1; }
int bits(std::size_t x) { return std::popcount(x); }

// Flattened state for the integrator.
using Vec = std::vector<Complex>;

Vec axpy(const Vec& y, double h, const Vec& k) {
    Vec out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        out[i] = y[i] + h * k[i];
    }
    return out;
}

template <class F>
Vec rk4_step(const F& f, const Vec& y, double h) {
    const Vec k1 = f(y);
    const Vec k2 = f(axpy(y, h / 2, k1));
    const Vec k3 = f(axpy(y, h / 2, k2));
    const Vec k4 = f(axpy(y, h, k3));
    Vec out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        out[i] = y[i] + h / 6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

bool all_finite(const Vec& v) {
    for (const auto& z : v) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

Vec flatten(const MeanFieldState& s) {
    Vec v;
    v.reserve(3 * s.size());
    for (const auto& t : s) {
        v.push_back(t.x);
        v.push_back(t.z);
        v.push_back(t.y);
    }
    return v;
}

MeanFieldState unflatten(const Vec& v) {
    MeanFieldState s(v.size() / 3);
    for (std::size_t k = 0; k < s.size(); ++k) {
        s[k] = {v[3 * k], v[3 * k + 1], v[3 * k + 2]};
    }
    return s;
}

std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace

CoeffGrid coeffs_from_density(const Matrix& rho, const BasisSet& basis) {
    const auto d = static_cast<Eigen::Index>(basis.space().dim());
    if (rho.rows() != d || rho.cols() != d) {
        throw std::invalid_argument("coeffs_from_density: matrix is " + std::to_string(rho.rows()) + "x" +
                                    std::to_string(rho.cols()) + " but the space has dimension " +
                                    std::to_string(d));
    }
    CoeffGrid grid(basis.space());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        grid[i] = tr_adjoint_times(basis[i], rho);
    }
    return grid;
}

CoeffGrid coeffs_from_density(const DenseOperator& rho, Basis basis, const Space& space) {
    return coeffs_from_density(rho.matrix(), BasisSet(space, basis));
}

DenseOperator density_from_coeffs(const CoeffGrid& grid, const BasisSet& basis) {
    if (!(grid.space() == basis.space())) {
        throw std::invalid_argument("density_from_coeffs: grid and basis spaces differ");
    }
    const auto d = static_cast<Eigen::Index>(basis.space().dim());
    Matrix rho = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Complex g = grid[i];
        if (g == Complex{0.0, 0.0}) {
            continue;
        }
        if (const auto& exact = basis[i].exact()) {
            for (std::size_t c = 0; c < exact->dim(); ++c) {
                rho(static_cast<Eigen::Index>(exact->row_of_col(c)), static_cast<Eigen::Index>(c)) +=
                    g * exact->phase_of_col(c).to_complex();
            }
        } else {
            rho += g * basis[i].matrix();
        }
    }
    return DenseOperator(Matrix(rho / static_cast<double>(d)));
}

DenseOperator density_from_coeffs(const CoeffGrid& grid, Basis basis) {
    return density_from_coeffs(grid, BasisSet(grid.space(), basis));
}

DensityState::DensityState(Space space, Matrix rho, CoeffGrid fw)
    : space_(std::move(space)), rho_(std::move(rho)), fw_(std::move(fw)) {}

DensityState DensityState::from_matrix(const Space& space, Matrix rho) {
    const auto d = static_cast<Eigen::Index>(space.dim());
    if (rho.rows() != d || rho.cols() != d) {
        throw std::invalid_argument("density matrix is " + std::to_string(rho.rows()) + "x" +
                                    std::to_string(rho.cols()) + ", expected " + std::to_string(d) + "x" +
                                    std::to_string(d));
    }
    if (!rho.allFinite()) {
        throw std::invalid_argument("density matrix has non-finite entries");
    }
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-14) {
        throw std::invalid_argument("density matrix has zero trace");
    }
    rho /= tr;
    const double herm = max_abs_diff(rho, rho.adjoint());
    if (herm > 1e-10) {
        throw std::invalid_argument("density matrix is not Hermitian (deviation " + fmt(herm) + ")");
    }
    const Matrix sym = (rho + rho.adjoint()) / 2.0;
    const Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -1e-8) {
        throw std::invalid_argument("density matrix is not positive semidefinite (eigenvalue " + fmt(min_eig) +
                                    ")");
    }
    CoeffGrid fw = coeffs_from_density(rho, BasisSet(space, Basis::FourierWigner));
    return DensityState(space, std::move(rho), std::move(fw));
}

DensityState DensityState::from_bloch(std::span<const std::array<double, 3>> bloch) {
    if (bloch.empty()) {
        throw std::invalid_argument("bloch: at least one site is required");
    }
    std::vector<Matrix> sites;
    for (std::size_t k = 0; k < bloch.size(); ++k) {
        const auto [x, y, z] = bloch[k];
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
            throw std::invalid_argument("bloch[" + std::to_string(k) + "]: non-finite component");
        }
        const double r = std::sqrt(x * x + y * y + z * z);
        if (r > 1.0 + 1e-12) {
            throw std::invalid_argument("bloch[" + std::to_string(k) + "]: length " + fmt(r) + " exceeds 1");
        }
        sites.push_back((pauli::I() + x * pauli::X() + y * pauli::Y() + z * pauli::Z()) / 2.0);
    }
    Matrix rho = sites.front();
    for (std::size_t k = 1; k < sites.size(); ++k) {
        rho = kron(rho, sites[k]);
    }
    return from_matrix(Space(Prime(2), bloch.size()), std::move(rho));
}

DensityState DensityState::from_grid(const CoeffGrid& grid, Basis basis) {
    return from_matrix(grid.space(), density_from_coeffs(grid, basis).matrix());
}

SpinHamiltonianSpec SpinHamiltonianSpec::zero(std::size_t sites) {
    const auto n = static_cast<Eigen::Index>(sites);
    return {sites, Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n), 0.0};
}

void SpinHamiltonianSpec::validate() const {
    if (sites == 0) {
        throw std::invalid_argument("sites: must be at least 1");
    }
    if (!std::isfinite(omega)) {
        throw std::invalid_argument("omega: must be finite");
    }
    const auto n = static_cast<Eigen::Index>(sites);
    const auto check = [n](const Eigen::MatrixXd& m, const std::string& name) {
        if (m.rows() != n || m.cols() != n) {
            throw std::invalid_argument(name + ": expected " + std::to_string(n) + "x" + std::to_string(n) +
                                        ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                const std::string at = name + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
                if (!std::isfinite(m(i, j))) {
                    throw std::invalid_argument(at + ": must be finite");
                }
                if (i == j && m(i, j) != 0.0) {
                    throw std::invalid_argument(at + ": diagonal must be zero");
                }
                if (std::abs(m(i, j) - m(j, i)) > 1e-12 * std::max(1.0, std::abs(m(i, j)))) {
                    throw std::invalid_argument(at + ": matrix must be symmetric");
                }
            }
        }
    };
    check(j_perp, "j_perp");
    check(j_z, "j_z");
}

DenseOperator build_hamiltonian(const SpinHamiltonianSpec& spec, const Limits& limits) {
    spec.validate();
    const std::size_t n = spec.sites;
    limits.require_dim(ipow(2, n), "spin Hamiltonian");
    const auto d = static_cast<Eigen::Index>(ipow(2, n));
    Matrix h = Matrix::Zero(d, d);
    std::vector<Matrix> x, y, z;
    for (std::size_t k = 0; k < n; ++k) {
        x.push_back(pauli::on_site(pauli::X(), k, n));
        y.push_back(pauli::on_site(pauli::Y(), k, n));
        z.push_back(pauli::on_site(pauli::Z(), k, n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            const double jp = spec.j_perp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            const double jz = spec.j_z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            h += 0.5 * (jp / 2 * (x[i] * x[j] + y[i] * y[j]) + jz * (z[i] * z[j]));
        }
        h += spec.omega * x[i];
    }
    return DenseOperator(std::move(h));
}

CoeffGrid hamiltonian_fw_coeffs(const SpinHamiltonianSpec& spec) {
    spec.validate();
    const Prime two(2);
    const std::size_t n = spec.sites;
    const Space space(two, n);
    const double scale = static_cast<double>(space.dim());
    const ModVec zero(two, n);
    CoeffGrid grid(space);
    for (std::size_t i = 0; i < n; ++i) {
        const ModVec ei = unit_vector(two, n, i);
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            const ModVec eij = ei + unit_vector(two, n, j);
            const double jp = spec.j_perp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            const double jz = spec.j_z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            grid.at(PhasePoint(eij, zero)) += scale / 4 * jp;
            grid.at(PhasePoint(eij, eij)) += scale / 4 * jp;
            grid.at(PhasePoint(zero, eij)) += scale / 2 * jz;
        }
        grid.at(PhasePoint(ei, zero)) += scale * spec.omega;
    }
    return grid;
}

CoefficientRhs::CoefficientRhs(Basis basis, const Space& space, const Limits& limits, GammaMethod method)
    : tensor_(antisymmetrized_tensor(basis, space, limits, method)) {}

CoeffGrid CoefficientRhs::operator()(const CoeffGrid& hamiltonian, const CoeffGrid& rho) const {
    const Space& space = tensor_.space();
    if (!(hamiltonian.space() == space) || !(rho.space() == space)) {
        throw std::invalid_argument("rhs: grid spaces do not match the structure tensor");
    }
    CoeffGrid out(space);
    for (const auto& e : tensor_.entries()) {
        out[e.alpha] += e.value * hamiltonian[e.beta] * rho[e.gamma];
    }
    const double d = static_cast<double>(space.dim());
    const Complex scale = Complex(0.0, -1.0) / (d * d);
    for (auto& v : out.values()) {
        v *= scale;
    }
    return out;
}

CoeffGrid rhs_general(Basis basis, const CoeffGrid& hamiltonian, const CoeffGrid& rho) {
    return CoefficientRhs(basis, rho.space())(hamiltonian, rho);
}

CoeffGrid rhs_spin_fw(const SpinHamiltonianSpec& spec, const CoeffGrid& rho) {
    spec.validate();
    const Space& space = rho.space();
    require_match(spec, space, "rhs_spin_fw");
    const std::size_t n = spec.sites;
    const std::size_t dim = space.dim();
    // Site k is bit (n - 1 - k) of a label; labels are 0/1 vectors, so dot
    // products are popcounts and XOR is addition mod 2.
    const auto e = [n](std::size_t k) { return std::size_t{1} << (n - 1 - k); };
    const auto at = [&rho, dim](std::size_t a1, std::size_t a2) { return rho[a1 * dim + a2]; };

    CoeffGrid out(space);
    for (std::size_t a1 = 0; a1 < dim; ++a1) {
        for (std::size_t a2 = 0; a2 < dim; ++a2) {
            const int a12 = bits(a1 & a2);
            Complex s{0.0, 0.0};
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (i == j) {
                        continue;
                    }
                    const double jp = spec.j_perp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                    const double jz = spec.j_z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                    const std::size_t eij = e(i) | e(j);
                    const std::size_t b1 = a1 ^ eij;
                    const std::size_t c2 = a2 ^ eij;
                    const int a2b1 = bits(a2 & b1);
                    const int b1c2 = bits(b1 & c2);
                    const int a1c2 = bits(a1 & c2);
                    s += jp / 4 * i_power(a2b1) * double(sign(a12) - sign(a2b1)) * at(b1, a2);
                    s += jp / 4 * i_power(b1c2) * double(sign(a2b1) - sign(a1c2)) * at(b1, c2);
                    s += jz / 2 * i_power(a1c2) * double(sign(a1c2) - sign(a12)) * at(a1, c2);
                }
                const std::size_t b1 = a1 ^ e(i);
                const int a2b1 = bits(a2 & b1);
                s += spec.omega * i_power(a2b1) * double(sign(a12) - sign(a2b1)) * at(b1, a2);
            }
            out[a1 * dim + a2] = Complex(0.0, -1.0) * i_power(a12) * s;
        }
    }
    return out;
}

MeanFieldState meanfield_rhs(const SpinHamiltonianSpec& spec, const MeanFieldState& state) {
    spec.validate();
    if (state.size() != spec.sites) {
        throw std::invalid_argument("meanfield_rhs: state has " + std::to_string(state.size()) +
                                    " sites, Hamiltonian has " + std::to_string(spec.sites));
    }
    const std::size_t n = spec.sites;
    MeanFieldState out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& s = state[k];
        Complex dx = 0.0, dz = 2.0 * spec.omega * s.y, dy = -2.0 * spec.omega * s.z;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) {
                continue;
            }
            const double jp = spec.j_perp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
            const double jz = spec.j_z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
            const auto& o = state[i];
            dx += jp * s.z * o.y - 2.0 * jz * s.y * o.z;
            dz += jp * (s.y * o.x - s.x * o.y);
            dy += -jp * s.z * o.x + 2.0 * jz * s.x * o.z;
        }
        out[k] = {dx, dz, dy};
    }
    return out;
}

MeanFieldState site_triples(const CoeffGrid& grid) {
    const Space& space = grid.space();
    require_qubits(space, "site_triples");
    const Prime two(2);
    const std::size_t n = space.sites();
    const ModVec zero(two, n);
    MeanFieldState out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const ModVec ek = unit_vector(two, n, k);
        out[k] = {grid.at(PhasePoint(ek, zero)), grid.at(PhasePoint(zero, ek)), grid.at(PhasePoint(ek, ek))};
    }
    return out;
}

namespace {

// Multiplies single-site coefficient tables into the full grid.
CoeffGrid product_grid(const Space& space, const std::vector<CoeffGrid>& sites) {
    CoeffGrid out(space);
    for (std::size_t idx = 0; idx < space.grid_size(); ++idx) {
        const PhasePoint x = space.point_at(idx);
        Complex v{1.0, 0.0};
        for (std::size_t k = 0; k < sites.size(); ++k) {
            v *= sites[k].at(x.site(k));
        }
        out[idx] = v;
    }
    return out;
}

}  // namespace

CoeffGrid factorize_product_state(std::span<const Matrix> site_states, Basis basis) {
    if (site_states.empty()) {
        throw std::invalid_argument("factorize_product_state: no sites");
    }
    const auto p = site_states.front().rows();
    const Prime prime(p);
    const Space single(prime, 1);
    const BasisSet ops(single, basis);
    std::vector<CoeffGrid> sites;
    for (const auto& m : site_states) {
        if (m.rows() != p || m.cols() != p) {
            throw std::invalid_argument("factorize_product_state: all site states must be " + std::to_string(p) +
                                        "x" + std::to_string(p));
        }
        sites.push_back(coeffs_from_density(m, ops));
    }
    return product_grid(Space(prime, site_states.size()), sites);
}

CoeffGrid factorize_product_state(const MeanFieldState& state) {
    if (state.empty()) {
        throw std::invalid_argument("factorize_product_state: no sites");
    }
    const Prime two(2);
    const Space single(two, 1);
    std::vector<CoeffGrid> sites;
    for (const auto& t : state) {
        CoeffGrid g(single);
        g.at(PhasePoint::single(two, 0, 0)) = 1.0;
        g.at(PhasePoint::single(two, 1, 0)) = t.x;
        g.at(PhasePoint::single(two, 0, 1)) = t.z;
        g.at(PhasePoint::single(two, 1, 1)) = t.y;
        sites.push_back(std::move(g));
    }
    return product_grid(Space(two, state.size()), sites);
}

std::string to_string(EvolveMethod method) { return method == EvolveMethod::Full ? "full" : "meanfield"; }

EvolveMethod parse_method(std::string_view text) {
    if (text == "full") {
        return EvolveMethod::Full;
    }
    if (text == "meanfield" || text == "mean-field") {
        return EvolveMethod::MeanField;
    }
    throw std::invalid_argument("unknown method '" + std::string(text) + "' (expected full or meanfield)");
}

Trajectory evolve(const CoeffGrid& initial_fw, const SpinHamiltonianSpec& spec, double t_final, double dt,
                  EvolveMethod method) {
    spec.validate();
    require_match(spec, initial_fw.space(), "evolve");
    if (!(std::isfinite(dt) && dt > 0.0)) {
        throw std::invalid_argument("dt: must be positive and finite");
    }
    if (!(std::isfinite(t_final) && t_final >= 0.0)) {
        throw std::invalid_argument("t_final: must be non-negative and finite");
    }
    if (!all_finite(initial_fw.values())) {
        throw NumericalFailure("initial state has non-finite coefficients");
    }
    if (std::abs(initial_fw[0] - Complex(1.0, 0.0)) > 1e-8) {
        throw std::invalid_argument("initial state: rho_FW(0,0) must be 1 (unit trace)");
    }

    const Space space = initial_fw.space();
    const auto steps = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));

    Trajectory traj;
    traj.method = method;
    traj.dt = dt;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);

    std::function<Vec(const Vec&)> f;
    Vec y;
    if (method == EvolveMethod::Full) {
        f = [&spec, &space](const Vec& v) { return rhs_spin_fw(spec, CoeffGrid(space, v)).values(); };
        y = initial_fw.values();
        traj.states.push_back(initial_fw);
    } else {
        f = [&spec](const Vec& v) { return flatten(meanfield_rhs(spec, unflatten(v))); };
        const MeanFieldState start = site_triples(initial_fw);
        y = flatten(start);
        traj.states.push_back(factorize_product_state(start));
    }
    traj.times.push_back(0.0);

    for (std::size_t s = 1; s <= steps; ++s) {
        const double t = s == steps ? t_final : static_cast<double>(s) * dt;
        const double h = t - traj.times.back();
        y = rk4_step(f, y, h);
        if (!all_finite(y)) {
            throw NumericalFailure("non-finite state at t = " + fmt(t));
        }
        traj.times.push_back(t);
        if (method == EvolveMethod::Full) {
            traj.states.emplace_back(space, y);
        } else {
            traj.states.push_back(factorize_product_state(unflatten(y)));
        }
    }
    return traj;
}

Trajectory evolve(const DensityState& initial, const SpinHamiltonianSpec& spec, double t_final, double dt,
                  EvolveMethod method) {
    return evolve(initial.fw(), spec, t_final, dt, method);
}

double purity(const CoeffGrid& fw) {
    double sum = 0.0;
    for (const auto& v : fw.values()) {
        sum += std::norm(v);
    }
    return sum / static_cast<double>(fw.space().dim());
}

double hermiticity_violation(const CoeffGrid& fw) {
    const Matrix rho = density_from_coeffs(fw, Basis::FourierWigner).matrix();
    return max_abs_diff(rho, rho.adjoint());
}

ConservationDiagnostics diagnose(const Trajectory& trajectory) {
    ConservationDiagnostics out;
    if (trajectory.states.empty()) {
        return out;
    }
    const CoeffGrid& first = trajectory.states.front();
    const BasisSet ops(first.space(), Basis::FourierWigner);
    const std::size_t origin = 0;
    const Complex trace0 = first[origin];
    const double purity0 = purity(first);
    for (const auto& state : trajectory.states) {
        out.max_trace_drift = std::max(out.max_trace_drift, std::abs(state[origin] - trace0));
        out.max_purity_drift = std::max(out.max_purity_drift, std::abs(purity(state) - purity0));
        const Matrix rho = density_from_coeffs(state, ops).matrix();
        out.max_hermiticity_violation = std::max(out.max_hermiticity_violation, max_abs_diff(rho, rho.adjoint()));
    }
    return out;
}

}  // namespace qps
