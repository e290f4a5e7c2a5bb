#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qps/errors.hpp"
#include "qps/operator.hpp"
#include "qps/point.hpp"

namespace qps {

/// D(a1, a2) = sum_l omega^{a2 l} |a1 + l><l| per site, tensored over sites
/// with site 1 as the leftmost factor.
PhaseMonomial displacement_exact(const PhasePoint& point);

/// Same, evaluated literally from possibly unreduced integer labels.
PhaseMonomial displacement_exact(std::span<const long long> a1, std::span<const long long> a2, Prime p);

DenseOperator displacement(const PhasePoint& point);
DenseOperator displacement(std::span<const long long> a1, std::span<const long long> a2, Prime p);

/// U = sum_l |l><-l| on each site.
PhaseMonomial flip_exact(Prime p, std::size_t sites);
DenseOperator flip_operator(Prime p, std::size_t sites);

/// omega^{a2 . b1}, the phase in D(x) D(y) = omega^{a2 . b1} D(x + y).
Phase compose_law_check(const PhasePoint& x, const PhasePoint& y);

/// (omega^{a1 . a2}, -x), with D(x)^dagger = omega^{a1 . a2} D(-x).
std::pair<Phase, PhasePoint> dagger_law_check(const PhasePoint& x);

/// Exact check of tr(D(x)^dagger D(y)) = p^N delta(x, y) over all pairs.
bool hw_orthogonality(const Space& space, const Limits& limits = {});

struct GroupLawReport {
    std::size_t pairs_checked = 0;
    std::size_t compose_failures = 0;
    std::size_t dagger_failures = 0;
    std::size_t unitarity_failures = 0;
    std::size_t orthogonality_failures = 0;
    /// D(x) U = U D(-x); only meaningful for odd p.
    std::size_t flip_failures = 0;
    std::vector<std::string> violations;

    bool ok() const noexcept {
        return compose_failures == 0 && dagger_failures == 0 && unitarity_failures == 0 &&
               orthogonality_failures == 0 && flip_failures == 0;
    }
};

/// Exhaustive exact check of the group laws on every pair of points.
GroupLawReport verify_group_laws(const Space& space, const Limits& limits = {});

}  // namespace qps
