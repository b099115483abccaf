#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace grpnet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Thrown when two inputs have incompatible shapes.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Family { Gaussian, Multinomial };

const char* family_name(Family family) noexcept;
Family parse_family(const std::string& name);

/**
 * Dense n x p design matrix.
 *
 * Column squared norms and column means are computed once at construction
 * and never recomputed by the solvers. Entries must be finite.
 */
class DesignMatrix {
public:
    DesignMatrix() = default;
    explicit DesignMatrix(Matrix values);

    const Matrix& values() const noexcept { return values_; }
    const Vector& col_sq_norms() const noexcept { return col_sq_norms_; }
    const Vector& col_means() const noexcept { return col_means_; }
    Index n_rows() const noexcept { return values_.rows(); }
    Index n_cols() const noexcept { return values_.cols(); }

    auto col(Index k) const { return values_.col(k); }

private:
    Matrix values_;
    Vector col_sq_norms_;
    Vector col_means_;
};

/**
 * n x M response. Gaussian responses are arbitrary finite reals; multinomial
 * responses are one-hot rows (entries in {0,1}, exactly one 1 per row).
 */
class ResponseMatrix {
public:
    ResponseMatrix() = default;
    ResponseMatrix(Matrix values, Family family);

    /// One-hot encodes 1-based class labels into an n x n_classes matrix.
    static ResponseMatrix from_labels(const std::vector<int>& labels, int n_classes);

    const Matrix& values() const noexcept { return values_; }
    Family family() const noexcept { return family_; }
    Index n_rows() const noexcept { return values_.rows(); }
    Index n_responses() const noexcept { return values_.cols(); }

private:
    Matrix values_;
    Family family_ = Family::Gaussian;
};

/// p x M penalized coefficients plus the unpenalized M-vector of intercepts.
struct CoefficientMatrix {
    Matrix beta;
    Vector intercept;

    CoefficientMatrix() = default;
    CoefficientMatrix(Matrix beta_, Vector intercept_);

    static CoefficientMatrix zeros(Index p, Index m);

    Index n_features() const noexcept { return beta.rows(); }
    Index n_responses() const noexcept { return beta.cols(); }
    bool all_finite() const;
};

/// lambda >= 0 and 0 <= alpha <= 1; alpha = 1 is the pure group lasso.
struct PenaltySpec {
    double lambda = 0.0;
    double alpha = 1.0;

    PenaltySpec() = default;
    PenaltySpec(double lambda_, double alpha_);

    double group_weight() const noexcept { return lambda * alpha; }
    double ridge_weight() const noexcept { return lambda * (1.0 - alpha); }
};

}  // namespace grpnet
