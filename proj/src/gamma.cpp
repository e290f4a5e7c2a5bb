#include "qps/gamma.hpp"

#include <random>
#include <stdexcept>

namespace qps {

namespace {

void check_triple(const PhasePoint& a, const PhasePoint& b, const PhasePoint& c) {
    if (!(a.prime() == b.prime()) || !(a.prime() == c.prime()) || a.sites() != b.sites() ||
        a.sites() != c.sites()) {
        throw std::invalid_argument("gamma: points must share p and N");
    }
}

// tr(A B C) without forming the full triple product.
Complex trace3(const Matrix& a, const Matrix& b, const Matrix& c) {
    return (a * b).cwiseProduct(c.transpose()).sum();
}

GammaMethod resolve(GammaMethod method, Basis basis, Prime p) {
    if (method == GammaMethod::Auto) {
        return basis == Basis::FourierWigner ? GammaMethod::Closed : GammaMethod::Brute;
    }
    if (method == GammaMethod::Closed && !has_closed_form(basis, p)) {
        throw std::domain_error("no closed form for the Wigner structure constants at p = 2");
    }
    return method;
}

std::uint64_t cube(std::uint64_t n) { return n * n * n; }

// Row gamma holds vec(B_gamma^T) so that T = L R^T gives traces of triples.
Matrix transposed_rows(const BasisSet& ops) {
    const auto n = static_cast<Eigen::Index>(ops.size());
    const auto d = static_cast<Eigen::Index>(ops.space().dim());
    Matrix r(n, d * d);
    for (Eigen::Index g = 0; g < n; ++g) {
        const Matrix& m = ops[static_cast<std::size_t>(g)].matrix();
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index k = 0; k < d; ++k) {
                r(g, j * d + k) = m(k, j);
            }
        }
    }
    return r;
}

// T(beta, gamma) = tr(A B_beta B_gamma) for all beta, gamma.
Matrix traces_with_left(const Matrix& left, const BasisSet& ops, const Matrix& rows) {
    const auto n = static_cast<Eigen::Index>(ops.size());
    const auto d = static_cast<Eigen::Index>(ops.space().dim());
    Matrix l(n, d * d);
    for (Eigen::Index b = 0; b < n; ++b) {
        const Matrix prod = left * ops[static_cast<std::size_t>(b)].matrix();
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index k = 0; k < d; ++k) {
                l(b, j * d + k) = prod(j, k);
            }
        }
    }
    return l * rows.transpose();
}

Complex closed_value(Basis basis, const PhasePoint& a, const PhasePoint& b, const PhasePoint& c) {
    return basis == Basis::FourierWigner ? gamma_fw_closed(a, b, c) : gamma_w_closed(a, b, c);
}

}  // namespace

bool has_closed_form(Basis basis, Prime p) noexcept {
    return basis == Basis::FourierWigner || p.value() != 2;
}

Complex gamma_brute(const BasisSet& basis, std::size_t a, std::size_t b, std::size_t c) {
    return trace3(basis[a].matrix(), basis[b].matrix(), basis[c].matrix());
}

Complex gamma_brute(Basis basis, const PhasePoint& a, const PhasePoint& b, const PhasePoint& c) {
    check_triple(a, b, c);
    return trace3(basis_op(basis, a).matrix(), basis_op(basis, b).matrix(), basis_op(basis, c).matrix());
}

std::optional<Phase> gamma_fw_phase(const PhasePoint& a, const PhasePoint& b, const PhasePoint& c) {
    check_triple(a, b, c);
    if (!(a + b + c).is_zero()) {
        return std::nullopt;
    }
    const Prime p = a.prime();
    if (p.value() == 2) {
        return sign_pow(dot(a.a2, b.a1), p) *
               i_pow(dot(a.a1, a.a2) + dot(b.a1, b.a2) - dot(c.a1, c.a2), p);
    }
    const long long half = std::get<long long>(half_inverse(p));
    return omega_pow(half * (dot(b.a2, c.a1) - dot(b.a1, c.a2)), p);
}

Complex gamma_fw_closed(const PhasePoint& a, const PhasePoint& b, const PhasePoint& c) {
    const auto phase = gamma_fw_phase(a, b, c);
    if (!phase) {
        return {0.0, 0.0};
    }
    return static_cast<double>(Space(a.prime(), a.sites()).dim()) * phase->to_complex();
}

Complex gamma_fw_intermediate(const PhasePoint& a, const PhasePoint& b, const PhasePoint& c) {
    check_triple(a, b, c);
    if (!(a + b + c).is_zero()) {
        return {0.0, 0.0};
    }
    const Prime p = a.prime();
    const long long quadratic = dot(a.a1, a.a2) + dot(b.a1, b.a2) + dot(c.a1, c.a2);
    const long long cross = dot(a.a2, b.a1) + dot(a.a2, c.a1) + dot(b.a2, c.a1);
    const Phase half_part = p.value() == 2
                                ? i_pow(quadratic, p)
                                : omega_pow(std::get<long long>(half_inverse(p)) * quadratic, p);
    const Phase phase = half_part * omega_pow(cross, p);
    return static_cast<double>(Space(p, a.sites()).dim()) * phase.to_complex();
}

Phase gamma_w_phase(const PhasePoint& a, const PhasePoint& b, const PhasePoint& c) {
    check_triple(a, b, c);
    const Prime p = a.prime();
    if (p.value() == 2) {
        throw std::domain_error("gamma_w_closed: no closed form for p = 2");
    }
    const PhasePoint u = b - a;
    const PhasePoint v = c - a;
    return omega_pow(2 * dot(u.a1, v.a2) - 2 * dot(u.a2, v.a1), p);
}

Complex gamma_w_closed(const PhasePoint& a, const PhasePoint& b, const PhasePoint& c) {
    return gamma_w_phase(a, b, c).to_complex();
}

void for_each_antisymmetrized(Basis basis, const Space& space, const Limits& limits, GammaMethod method,
                              const GammaVisitor& visit) {
    const Prime p = space.prime();
    method = resolve(method, basis, p);
    const std::size_t n = space.grid_size();
    limits.require_dim(space.dim(), "structure constants");

    std::vector<PhasePoint> points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        points.push_back(space.point_at(i));
    }

    if (method == GammaMethod::Closed && basis == Basis::FourierWigner) {
        // Both terms live on -alpha + beta + gamma = 0, so gamma = alpha - beta.
        limits.require_triples(static_cast<std::uint64_t>(n) * n, "FW structure constants");
        const double scale = static_cast<double>(space.dim());
        for (std::size_t i = 0; i < n; ++i) {
            const PhasePoint neg = -points[i];
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t k = space.index_of(points[i] - points[j]);
                const Phase first = *gamma_fw_phase(neg, points[j], points[k]);
                const Phase second = *gamma_fw_phase(neg, points[k], points[j]);
                if (!(first == second)) {
                    visit(i, j, k, scale * (first.to_complex() - second.to_complex()));
                }
            }
        }
        return;
    }

    limits.require_triples(cube(n), "structure constant enumeration");

    if (method == GammaMethod::Closed) {
        // Swapping beta and gamma negates the W exponent, so the difference
        // vanishes exactly when the exponent is 0 mod p.
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    const Phase phase = gamma_w_phase(points[i], points[j], points[k]);
                    if (!phase.is_one()) {
                        visit(i, j, k, phase.to_complex() - phase.inverse().to_complex());
                    }
                }
            }
        }
        return;
    }

    const BasisSet ops(space, basis, limits);
    const Matrix rows = transposed_rows(ops);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t left = basis == Basis::FourierWigner ? space.index_of(-points[i]) : i;
        const Matrix t = traces_with_left(ops[left].matrix(), ops, rows);
        for (Eigen::Index j = 0; j < t.rows(); ++j) {
            for (Eigen::Index k = 0; k < t.cols(); ++k) {
                const Complex value = t(j, k) - t(k, j);
                if (std::abs(value) > kGammaZeroTol) {
                    visit(i, static_cast<std::size_t>(j), static_cast<std::size_t>(k), value);
                }
            }
        }
    }
}

std::uint64_t antisymmetrized_nnz(Basis basis, const Space& space, const Limits& limits, GammaMethod method) {
    std::uint64_t count = 0;
    for_each_antisymmetrized(basis, space, limits, method,
                             [&count](std::size_t, std::size_t, std::size_t, Complex) { ++count; });
    return count;
}

GammaTensor antisymmetrized_tensor(Basis basis, const Space& space, const Limits& limits, GammaMethod method) {
    GammaTensor tensor(space, basis);
    for_each_antisymmetrized(basis, space, limits, method,
                             [&tensor](std::size_t a, std::size_t b, std::size_t c, Complex value) {
                                 tensor.push({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                                              static_cast<std::uint32_t>(c), value});
                             });
    return tensor;
}

GammaComparison compare_closed_to_brute(Basis basis, const Space& space, const Limits& limits,
                                        std::optional<std::uint64_t> samples, std::uint64_t seed) {
    if (!has_closed_form(basis, space.prime())) {
        throw std::domain_error("no closed form for the Wigner structure constants at p = 2");
    }
    const std::size_t n = space.grid_size();
    const BasisSet ops(space, basis, limits);
    std::vector<PhasePoint> points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        points.push_back(space.point_at(i));
    }

    GammaComparison result;
    if (samples) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (std::uint64_t s = 0; s < *samples; ++s) {
            const std::size_t a = pick(rng);
            const std::size_t b = pick(rng);
            const std::size_t c = pick(rng);
            const Complex err = gamma_brute(ops, a, b, c) - closed_value(basis, points[a], points[b], points[c]);
            result.max_error = std::max(result.max_error, std::abs(err));
            ++result.triples_checked;
        }
        return result;
    }

    limits.require_triples(cube(n), "closed-form comparison");
    const Matrix rows = transposed_rows(ops);
    for (std::size_t a = 0; a < n; ++a) {
        const Matrix t = traces_with_left(ops[a].matrix(), ops, rows);
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                const Complex expected = closed_value(basis, points[a], points[b], points[c]);
                const double err =
                    std::abs(t(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(c)) - expected);
                result.max_error = std::max(result.max_error, err);
                ++result.triples_checked;
            }
        }
    }
    return result;
}

}  // namespace qps
