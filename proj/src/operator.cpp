#include "qps/operator.hpp"

#include <stdexcept>

namespace qps {

PhaseMonomial::PhaseMonomial(Prime p, std::size_t dim) : p_(p), rows_(dim), phases_(dim, Phase(p)) {
    for (std::size_t c = 0; c < dim; ++c) {
        rows_[c] = c;
    }
}

PhaseMonomial::PhaseMonomial(Prime p, std::vector<std::size_t> row_of_col, std::vector<Phase> phases)
    : p_(p), rows_(std::move(row_of_col)), phases_(std::move(phases)) {
    if (rows_.size() != phases_.size()) {
        throw std::invalid_argument("PhaseMonomial: rows/phases length mismatch");
    }
    std::vector<bool> seen(rows_.size(), false);
    for (std::size_t r : rows_) {
        if (r >= rows_.size() || seen[r]) {
            throw std::invalid_argument("PhaseMonomial: rows must form a permutation");
        }
        seen[r] = true;
    }
}

PhaseMonomial PhaseMonomial::operator*(const PhaseMonomial& other) const {
    if (dim() != other.dim()) {
        throw std::invalid_argument("PhaseMonomial: dimension mismatch");
    }
    std::vector<std::size_t> rows(dim());
    std::vector<Phase> phases(dim(), Phase(p_));
    for (std::size_t c = 0; c < dim(); ++c) {
        const std::size_t mid = other.rows_[c];
        rows[c] = rows_[mid];
        phases[c] = phases_[mid] * other.phases_[c];
    }
    return PhaseMonomial(p_, std::move(rows), std::move(phases));
}

PhaseMonomial PhaseMonomial::adjoint() const {
    std::vector<std::size_t> rows(dim());
    std::vector<Phase> phases(dim(), Phase(p_));
    for (std::size_t c = 0; c < dim(); ++c) {
        rows[rows_[c]] = c;
        phases[rows_[c]] = phases_[c].conj();
    }
    return PhaseMonomial(p_, std::move(rows), std::move(phases));
}

PhaseMonomial PhaseMonomial::scaled(const Phase& phase) const {
    PhaseMonomial out = *this;
    for (auto& ph : out.phases_) {
        ph *= phase;
    }
    return out;
}

PhaseMonomial PhaseMonomial::kron(const PhaseMonomial& other) const {
    const std::size_t db = other.dim();
    std::vector<std::size_t> rows(dim() * db);
    std::vector<Phase> phases(dim() * db, Phase(p_));
    for (std::size_t ca = 0; ca < dim(); ++ca) {
        for (std::size_t cb = 0; cb < db; ++cb) {
            rows[ca * db + cb] = rows_[ca] * db + other.rows_[cb];
            phases[ca * db + cb] = phases_[ca] * other.phases_[cb];
        }
    }
    return PhaseMonomial(p_, std::move(rows), std::move(phases));
}

PhaseSum PhaseMonomial::trace() const {
    PhaseSum sum(p_);
    for (std::size_t c = 0; c < dim(); ++c) {
        if (rows_[c] == c) {
            sum.add(phases_[c]);
        }
    }
    return sum;
}

Matrix PhaseMonomial::to_matrix() const {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(dim()));
    for (std::size_t c = 0; c < dim(); ++c) {
        m(static_cast<Eigen::Index>(rows_[c]), static_cast<Eigen::Index>(c)) = phases_[c].to_complex();
    }
    return m;
}

DenseOperator DenseOperator::adjoint() const {
    if (exact_) {
        return DenseOperator(exact_->adjoint());
    }
    return DenseOperator(Matrix(values_.adjoint()));
}

DenseOperator DenseOperator::operator*(const DenseOperator& other) const {
    if (exact_ && other.exact_) {
        return DenseOperator((*exact_) * (*other.exact_));
    }
    return DenseOperator(Matrix(values_ * other.values_));
}

DenseOperator DenseOperator::kron(const DenseOperator& other) const {
    if (exact_ && other.exact_) {
        return DenseOperator(exact_->kron(*other.exact_));
    }
    return DenseOperator(qps::kron(values_, other.values_));
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

Complex trace_inner(const Matrix& a, const Matrix& b) {
    // tr(a^dagger b) = sum_ij conj(a_ij) b_ij
    return (a.conjugate().cwiseProduct(b)).sum();
}

namespace pauli {

Matrix I() { return Matrix::Identity(2, 2); }

Matrix X() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix Y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

Matrix Z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix on_site(const Matrix& op, std::size_t k, std::size_t n) {
    Matrix out = Matrix::Identity(1, 1);
    for (std::size_t i = 0; i < n; ++i) {
        out = kron(out, i == k ? op : Matrix(Matrix::Identity(op.rows(), op.cols())));
    }
    return out;
}

}  // namespace pauli

}  // namespace qps
