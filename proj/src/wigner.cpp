#include "qps/wigner.hpp"

#include <stdexcept>

#include "qps/heisenberg_weyl.hpp"

namespace qps {

std::string to_string(Basis basis) { return basis == Basis::Wigner ? "w" : "fw"; }

Basis parse_basis(std::string_view text) {
    if (text == "w" || text == "wigner") {
        return Basis::Wigner;
    }
    if (text == "fw" || text == "fourier-wigner") {
        return Basis::FourierWigner;
    }
    throw std::invalid_argument("unknown basis '" + std::string(text) + "' (expected w or fw)");
}

Phase fourier_wigner_phase(const PhasePoint& point) {
    const Prime p = point.prime();
    const long long a1a2 = dot(point.a1, point.a2);
    if (p.value() == 2) {
        return i_pow(a1a2, p);
    }
    return omega_pow(std::get<long long>(half_inverse(p)) * a1a2, p);
}

PhaseMonomial fourier_wigner_exact(const PhasePoint& point) {
    return displacement_exact(point).scaled(fourier_wigner_phase(point));
}

DenseOperator fourier_wigner_op(const PhasePoint& point) { return DenseOperator(fourier_wigner_exact(point)); }

namespace {

// Precomputed omega^k for k in [p].
std::vector<Complex> omega_table(Prime p) {
    std::vector<Complex> table(static_cast<std::size_t>(p.value()));
    for (int k = 0; k < p.value(); ++k) {
        table[static_cast<std::size_t>(k)] = omega_pow(k, p).to_complex();
    }
    return table;
}

}  // namespace

DenseOperator wigner_op(const PhasePoint& point) {
    const Prime p = point.prime();
    const Space space(p, point.sites());
    const auto omega = omega_table(p);
    const auto dim = static_cast<Eigen::Index>(space.dim());
    Matrix out = Matrix::Zero(dim, dim);
    for (std::size_t j = 0; j < space.grid_size(); ++j) {
        const PhasePoint b = space.point_at(j);
        const long long e = -(dot(point.a1, b.a1) + dot(point.a2, b.a2));
        const Complex weight = omega[static_cast<std::size_t>(mod(e, p.value()))];
        const PhaseMonomial fw = fourier_wigner_exact(b);
        for (std::size_t c = 0; c < space.dim(); ++c) {
            out(static_cast<Eigen::Index>(fw.row_of_col(c)), static_cast<Eigen::Index>(c)) +=
                weight * fw.phase_of_col(c).to_complex();
        }
    }
    out /= static_cast<double>(space.dim());
    return DenseOperator(std::move(out));
}

PhaseMonomial wigner_closed_form(const PhasePoint& point) {
    const Prime p = point.prime();
    if (p.value() == 2) {
        throw std::domain_error("wigner_closed_form: undefined for p = 2");
    }
    const PhasePoint shifted(point.a2.scaled(2), point.a1.scaled(-2));
    return (displacement_exact(shifted) * flip_exact(p, point.sites()))
        .scaled(omega_pow(-2 * dot(point.a1, point.a2), p));
}

DenseOperator wootters_op(const PhasePoint& point) {
    if (point.sites() != 1) {
        throw std::invalid_argument("wootters_op: defined only for N = 1");
    }
    const Prime p = point.prime();
    const long long a1 = point.a1[0];
    const long long a2 = point.a2[0];
    if (p.value() == 2) {
        const double s1 = a1 ? -1.0 : 1.0;
        const double s2 = a2 ? -1.0 : 1.0;
        Matrix m = 0.5 * (pauli::I() + s1 * pauli::Z() + s2 * pauli::X() + s1 * s2 * pauli::Y());
        return DenseOperator(std::move(m));
    }
    // (A)_{jk} = delta(2 a1 = j + k) omega^{a2 (j - k)}: column k has its
    // single nonzero at row j = 2 a1 - k.
    std::vector<std::size_t> rows(static_cast<std::size_t>(p.value()));
    std::vector<Phase> phases(static_cast<std::size_t>(p.value()), Phase(p));
    for (long long k = 0; k < p.value(); ++k) {
        const long long j = mod(2 * a1 - k, p.value());
        rows[static_cast<std::size_t>(k)] = static_cast<std::size_t>(j);
        phases[static_cast<std::size_t>(k)] = omega_pow(a2 * (j - k), p);
    }
    return DenseOperator(PhaseMonomial(p, std::move(rows), std::move(phases)));
}

CoeffGrid::CoeffGrid(const Space& space) : space_(space), values_(space.grid_size(), Complex(0.0, 0.0)) {}

CoeffGrid::CoeffGrid(const Space& space, std::vector<Complex> values)
    : space_(space), values_(std::move(values)) {
    if (values_.size() != space_.grid_size()) {
        throw std::invalid_argument("CoeffGrid: expected " + std::to_string(space_.grid_size()) +
                                    " values, got " + std::to_string(values_.size()));
    }
}

CoeffGrid& CoeffGrid::operator+=(const CoeffGrid& other) {
    if (!(space_ == other.space_)) {
        throw std::invalid_argument("CoeffGrid: space mismatch");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] += other.values_[i];
    }
    return *this;
}

CoeffGrid CoeffGrid::operator+(const CoeffGrid& other) const {
    CoeffGrid out = *this;
    out += other;
    return out;
}

CoeffGrid CoeffGrid::operator*(Complex scale) const {
    CoeffGrid out = *this;
    for (auto& v : out.values_) {
        v *= scale;
    }
    return out;
}

CoeffGrid CoeffGrid::delta(const Space& space, const PhasePoint& x) {
    CoeffGrid g(space);
    g.at(x) = 1.0;
    return g;
}

double max_abs_diff(const CoeffGrid& a, const CoeffGrid& b) {
    if (!(a.space() == b.space())) {
        throw std::invalid_argument("max_abs_diff: grid space mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

namespace {

template <typename Kernel>
CoeffGrid transform(const CoeffGrid& grid, Direction direction, Kernel kernel) {
    const Space& space = grid.space();
    const Prime p = space.prime();
    const auto omega = omega_table(p);
    const long long sign = direction == Direction::Forward ? 1 : -1;
    const std::size_t n = space.grid_size();

    std::vector<PhasePoint> points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        points.push_back(space.point_at(i));
    }

    CoeffGrid out(space);
    const double norm = 1.0 / static_cast<double>(space.dim());
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            const long long e = sign * kernel(points[i], points[j]);
            acc += omega[static_cast<std::size_t>(mod(e, p.value()))] * grid[j];
        }
        out[i] = acc * norm;
    }
    return out;
}

}  // namespace

CoeffGrid fourier_grid(const CoeffGrid& grid, Direction direction) {
    return transform(grid, direction, [](const PhasePoint& a, const PhasePoint& b) {
        return dot(a.a1, b.a1) + dot(a.a2, b.a2);
    });
}

CoeffGrid symplectic_fourier_grid(const CoeffGrid& grid, Direction direction) {
    return transform(grid, direction, [](const PhasePoint& a, const PhasePoint& b) {
        return dot(a.a1, b.a2) - dot(a.a2, b.a1);
    });
}

IdentificationReport wootters_identification(Prime p) {
    const Space space(p, 1);
    const std::size_t n = space.grid_size();
    const auto d = static_cast<Eigen::Index>(space.dim());

    std::vector<Matrix> wootters(n);
    std::vector<Matrix> fw(n);
    IdentificationReport report;
    for (std::size_t i = 0; i < n; ++i) {
        const PhasePoint alpha = space.point_at(i);
        wootters[i] = wootters_op(alpha).matrix();
        fw[i] = fourier_wigner_op(alpha).matrix();
        const PhasePoint rotated = symplectic_rotate(alpha);
        report.rotation_error =
            std::max(report.rotation_error, max_abs_diff(wootters[i], wigner_op(rotated).matrix()));
        report.reversed_rotation_error =
            std::max(report.reversed_rotation_error, max_abs_diff(wootters[i], wigner_op(-rotated).matrix()));
    }

    // Treat each matrix entry (r, c) of the FW family as a grid over beta and
    // push it through the inverse symplectic transform.
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            CoeffGrid entry(space);
            for (std::size_t j = 0; j < n; ++j) {
                entry[j] = fw[j](r, c);
            }
            const CoeffGrid transformed = symplectic_fourier_grid(entry, Direction::Inverse);
            for (std::size_t i = 0; i < n; ++i) {
                report.symplectic_error =
                    std::max(report.symplectic_error, std::abs(transformed[i] - wootters[i](r, c)));
            }
        }
    }
    return report;
}

bool wootters_identification_check(Prime p, double tol) { return wootters_identification(p).ok(tol); }

DenseOperator basis_op(Basis basis, const PhasePoint& point) {
    return basis == Basis::Wigner ? wigner_op(point) : fourier_wigner_op(point);
}

BasisSet::BasisSet(const Space& space, Basis basis, const Limits& limits) : space_(space), basis_(basis) {
    limits.require_dim(space.dim(), "basis construction");
    const std::size_t n = space.grid_size();
    ops_.reserve(n);
    if (basis == Basis::FourierWigner) {
        for (std::size_t i = 0; i < n; ++i) {
            ops_.push_back(fourier_wigner_op(space.point_at(i)));
        }
        return;
    }
    // Many-body W factors over sites; build the single-site family once and
    // tensor it rather than re-running the p^{2N}-term sum per point.
    const Space single(space.prime(), 1);
    std::vector<Matrix> site_ops;
    for (std::size_t i = 0; i < single.grid_size(); ++i) {
        site_ops.push_back(wigner_op(single.point_at(i)).matrix());
    }
    for (std::size_t i = 0; i < n; ++i) {
        const PhasePoint x = space.point_at(i);
        Matrix m = site_ops[single.index_of(x.site(0))];
        for (std::size_t k = 1; k < space.sites(); ++k) {
            m = kron(m, site_ops[single.index_of(x.site(k))]);
        }
        ops_.emplace_back(std::move(m));
    }
}

}  // namespace qps
