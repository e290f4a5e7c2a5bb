#include "qps/lines.hpp"

#include <stdexcept>

#include "qps/wigner.hpp"

namespace qps {

Line line_points(long long n, long long m, long long k, Prime p) {
    const int q = p.value();
    Line line{static_cast<int>(mod(n, q)), static_cast<int>(mod(m, q)), static_cast<int>(mod(k, q)), {}};
    if (line.n == 0 && line.m == 0) {
        throw std::invalid_argument("line_points: (n, m) must not be (0, 0) mod p");
    }
    for (int x = 0; x < q; ++x) {
        for (int y = 0; y < q; ++y) {
            if (mod(static_cast<long long>(line.n) * x + static_cast<long long>(line.m) * y, q) == line.k) {
                line.points.push_back(PhasePoint::single(p, x, y));
            }
        }
    }
    return line;
}

std::vector<ParallelClass> parallel_classes(Prime p) {
    std::vector<std::pair<int, int>> directions;
    for (int m = 0; m < p.value(); ++m) {
        directions.emplace_back(1, m);
    }
    directions.emplace_back(0, 1);

    std::vector<ParallelClass> classes;
    for (auto [n, m] : directions) {
        ParallelClass cls{n, m, {}};
        for (int k = 0; k < p.value(); ++k) {
            cls.lines.push_back(line_points(n, m, k, p));
        }
        classes.push_back(std::move(cls));
    }
    return classes;
}

std::string to_string(Family family) { return family == Family::Wigner ? "wigner" : "wootters"; }

Family parse_family(std::string_view text) {
    if (text == "wigner" || text == "w") {
        return Family::Wigner;
    }
    if (text == "wootters") {
        return Family::Wootters;
    }
    throw std::invalid_argument("unknown basis '" + std::string(text) + "' (expected wigner or wootters)");
}

DenseOperator family_op(Family family, const PhasePoint& point) {
    return family == Family::Wigner ? wigner_op(point) : wootters_op(point);
}

DenseOperator line_projector(const Line& line, Family family) {
    if (line.points.empty()) {
        throw std::invalid_argument("line_projector: empty line");
    }
    const Prime p = line.points.front().prime();
    Matrix sum = Matrix::Zero(p.value(), p.value());
    for (const auto& point : line.points) {
        sum += family_op(family, point).matrix();
    }
    return DenseOperator(Matrix(sum / static_cast<double>(p.value())));
}

std::string LineViolation::str() const {
    return "(n,m)=(" + std::to_string(n) + "," + std::to_string(m) + ") k1=" + std::to_string(k1) +
           " k2=" + std::to_string(k2) + " error=" + std::to_string(error);
}

LineConditionReport verify_line_condition(Prime p, Family family, double tol) {
    LineConditionReport report;
    const Matrix identity = Matrix::Identity(p.value(), p.value());
    for (const auto& cls : parallel_classes(p)) {
        ++report.classes_checked;
        std::vector<Matrix> projectors;
        for (const auto& line : cls.lines) {
            projectors.push_back(line_projector(line, family).matrix());
        }
        Matrix total = Matrix::Zero(p.value(), p.value());
        for (std::size_t k1 = 0; k1 < projectors.size(); ++k1) {
            total += projectors[k1];
            for (std::size_t k2 = 0; k2 < projectors.size(); ++k2) {
                const Matrix expected =
                    k1 == k2 ? projectors[k1] : Matrix(Matrix::Zero(p.value(), p.value()));
                const double err = max_abs_diff(projectors[k1] * projectors[k2], expected);
                report.max_error = std::max(report.max_error, err);
                if (err > tol) {
                    report.violations.push_back(
                        {cls.n, cls.m, static_cast<int>(k1), static_cast<int>(k2), err});
                }
            }
        }
        const double err = max_abs_diff(total, identity);
        report.max_error = std::max(report.max_error, err);
        if (err > tol) {
            report.violations.push_back({cls.n, cls.m, -1, -1, err});
        }
    }
    return report;
}

AxiomReport verify_wootters_axioms(Prime p, Family family, double tol) {
    AxiomReport report{p, family, 0.0, 0.0, {}, tol};
    const Space space(p, 1);
    std::vector<Matrix> ops;
    for (std::size_t i = 0; i < space.grid_size(); ++i) {
        ops.push_back(family_op(family, space.point_at(i)).matrix());
        report.trace_error = std::max(report.trace_error, std::abs(ops.back().trace() - Complex(1.0, 0.0)));
    }
    for (std::size_t i = 0; i < ops.size(); ++i) {
        for (std::size_t j = 0; j < ops.size(); ++j) {
            const Complex expected(i == j ? p.value() : 0.0, 0.0);
            report.orthogonality_error =
                std::max(report.orthogonality_error, std::abs(trace_inner(ops[i], ops[j]) - expected));
        }
    }
    report.lines = verify_line_condition(p, family, tol);
    return report;
}

}  // namespace qps
