#include "qps/heisenberg_weyl.hpp"

#include <stdexcept>

namespace qps {

namespace {

PhaseMonomial single_site_displacement(long long a1, long long a2, Prime p) {
    const int d = p.value();
    std::vector<std::size_t> rows(static_cast<std::size_t>(d));
    std::vector<Phase> phases(static_cast<std::size_t>(d), Phase(p));
    for (int l = 0; l < d; ++l) {
        rows[static_cast<std::size_t>(l)] = static_cast<std::size_t>(mod(a1 + l, d));
        phases[static_cast<std::size_t>(l)] = omega_pow(a2 * l, p);
    }
    return PhaseMonomial(p, std::move(rows), std::move(phases));
}

PhaseMonomial single_site_flip(Prime p) {
    const int d = p.value();
    std::vector<std::size_t> rows(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c) {
        rows[static_cast<std::size_t>(c)] = static_cast<std::size_t>(mod(-c, d));
    }
    return PhaseMonomial(p, std::move(rows), std::vector<Phase>(static_cast<std::size_t>(d), Phase(p)));
}

}  // namespace

PhaseMonomial displacement_exact(std::span<const long long> a1, std::span<const long long> a2, Prime p) {
    if (a1.size() != a2.size() || a1.empty()) {
        throw std::invalid_argument("displacement: a1 and a2 must have the same nonzero length");
    }
    PhaseMonomial out = single_site_displacement(a1[0], a2[0], p);
    for (std::size_t k = 1; k < a1.size(); ++k) {
        out = out.kron(single_site_displacement(a1[k], a2[k], p));
    }
    return out;
}

PhaseMonomial displacement_exact(const PhasePoint& point) {
    std::vector<long long> a1(point.a1.entries().begin(), point.a1.entries().end());
    std::vector<long long> a2(point.a2.entries().begin(), point.a2.entries().end());
    return displacement_exact(a1, a2, point.prime());
}

DenseOperator displacement(const PhasePoint& point) { return DenseOperator(displacement_exact(point)); }

DenseOperator displacement(std::span<const long long> a1, std::span<const long long> a2, Prime p) {
    return DenseOperator(displacement_exact(a1, a2, p));
}

PhaseMonomial flip_exact(Prime p, std::size_t sites) {
    if (sites == 0) {
        throw std::invalid_argument("flip_operator: N must be positive");
    }
    const PhaseMonomial single = single_site_flip(p);
    PhaseMonomial out = single;
    for (std::size_t k = 1; k < sites; ++k) {
        out = out.kron(single);
    }
    return out;
}

DenseOperator flip_operator(Prime p, std::size_t sites) { return DenseOperator(flip_exact(p, sites)); }

Phase compose_law_check(const PhasePoint& x, const PhasePoint& y) {
    if (!(x.prime() == y.prime()) || x.sites() != y.sites()) {
        throw std::invalid_argument("compose_law_check: shape mismatch");
    }
    return omega_pow(dot(x.a2, y.a1), x.prime());
}

std::pair<Phase, PhasePoint> dagger_law_check(const PhasePoint& x) {
    return {omega_pow(dot(x.a1, x.a2), x.prime()), -x};
}

bool hw_orthogonality(const Space& space, const Limits& limits) {
    limits.require_dim(space.dim(), "hw_orthogonality");
    const std::size_t n = space.grid_size();
    std::vector<PhaseMonomial> ops;
    ops.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        ops.push_back(displacement_exact(space.point_at(i)));
    }
    const auto scale = static_cast<long long>(space.dim());
    for (std::size_t i = 0; i < n; ++i) {
        const PhaseMonomial adj = ops[i].adjoint();
        for (std::size_t j = 0; j < n; ++j) {
            if (!(adj * ops[j]).trace().equals(i == j ? scale : 0)) {
                return false;
            }
        }
    }
    return true;
}

GroupLawReport verify_group_laws(const Space& space, const Limits& limits) {
    limits.require_dim(space.dim(), "verify_group_laws");
    const std::size_t n = space.grid_size();
    limits.require_triples(static_cast<std::uint64_t>(n) * n, "verify_group_laws pair enumeration");

    const Prime p = space.prime();
    const auto scale = static_cast<long long>(space.dim());
    const PhaseMonomial identity(p, space.dim());
    const PhaseMonomial flip = flip_exact(p, space.sites());

    std::vector<PhaseMonomial> ops;
    ops.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        ops.push_back(displacement_exact(space.point_at(i)));
    }

    GroupLawReport report;
    auto note = [&report](const std::string& what) {
        if (report.violations.size() < 32) {
            report.violations.push_back(what);
        }
    };

    for (std::size_t i = 0; i < n; ++i) {
        const PhasePoint x = space.point_at(i);
        const PhaseMonomial adj = ops[i].adjoint();

        const auto [dagger_phase, neg] = dagger_law_check(x);
        if (!(adj == ops[space.index_of(neg)].scaled(dagger_phase))) {
            ++report.dagger_failures;
            note("dagger " + x.str());
        }
        if (!(adj * ops[i] == identity)) {
            ++report.unitarity_failures;
            note("unitarity " + x.str());
        }
        if (p.value() > 2 && !(ops[i] * flip == flip * ops[space.index_of(neg)])) {
            ++report.flip_failures;
            note("flip " + x.str());
        }

        for (std::size_t j = 0; j < n; ++j) {
            const PhasePoint y = space.point_at(j);
            ++report.pairs_checked;
            const PhaseMonomial lhs = ops[i] * ops[j];
            const PhaseMonomial rhs = ops[space.index_of(x + y)].scaled(compose_law_check(x, y));
            if (!(lhs == rhs)) {
                ++report.compose_failures;
                note("compose " + x.str() + " " + y.str());
            }
            if (!(adj * ops[j]).trace().equals(i == j ? scale : 0)) {
                ++report.orthogonality_failures;
                note("orthogonality " + x.str() + " " + y.str());
            }
        }
    }
    return report;
}

}  // namespace qps
