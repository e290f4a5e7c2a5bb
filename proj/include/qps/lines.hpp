#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qps/operator.hpp"
#include "qps/point.hpp"

namespace qps {

/// The line {(x, y) : n x + m y = k (mod p)} on Z_p^2.
struct Line {
    int n = 0;
    int m = 0;
    int k = 0;
    std::vector<PhasePoint> points;
};

/// Enumerates the p points of a line. Throws std::invalid_argument when
/// (n, m) = (0, 0) mod p.
Line line_points(long long n, long long m, long long k, Prime p);

/// The p parallel lines sharing a direction (n, m), indexed by k.
struct ParallelClass {
    int n = 0;
    int m = 0;
    std::vector<Line> lines;
};

/// The p + 1 distinct classes, represented by (1, m) for m in [p] and (0, 1).
std::vector<ParallelClass> parallel_classes(Prime p);

/// Operator family a line projector is built from.
enum class Family { Wigner, Wootters };

std::string to_string(Family family);
Family parse_family(std::string_view text);

/// The family's operator at a single-site point.
DenseOperator family_op(Family family, const PhasePoint& point);

/// P = (1/p) sum over the line of the family operators.
DenseOperator line_projector(const Line& line, Family family);

struct LineViolation {
    int n = 0;
    int m = 0;
    int k1 = 0;
    int k2 = 0;
    double error = 0.0;
    std::string str() const;
};

struct LineConditionReport {
    std::size_t classes_checked = 0;
    /// Largest deviation seen over all projector products and identity sums.
    double max_error = 0.0;
    /// k1 == k2 == -1 marks a failure of the resolution of the identity.
    std::vector<LineViolation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Checks P_{k1} P_{k2} = delta P_{k1} and sum_k P_k = I in every class.
LineConditionReport verify_line_condition(Prime p, Family family, double tol = 1e-12);

struct AxiomReport {
    Prime p;
    Family family;
    /// |tr A - 1| worst case.
    double trace_error = 0.0;
    /// |tr(A^dagger B) - p delta| worst case.
    double orthogonality_error = 0.0;
    LineConditionReport lines;
    double tol = 1e-12;

    bool w1() const noexcept { return trace_error <= tol; }
    bool w2() const noexcept { return orthogonality_error <= tol; }
    bool w3() const noexcept { return lines.ok(); }
    bool ok() const noexcept { return w1() && w2() && w3(); }
};

AxiomReport verify_wootters_axioms(Prime p, Family family, double tol = 1e-12);

}  // namespace qps
