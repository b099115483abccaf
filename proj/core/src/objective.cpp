#include "grpnet/objective.hpp"

#include <cmath>

namespace grpnet {
namespace {

void check_conformance(const DesignMatrix& x, const ResponseMatrix& y, const CoefficientMatrix& coef)
{
    if (x.n_rows() != y.n_rows()) {
        throw DimensionError("X and Y have different numbers of rows");
    }
    if (coef.beta.rows() != x.n_cols()) {
        throw DimensionError("coefficient rows do not match the columns of X");
    }
    if (coef.beta.cols() != y.n_responses() || coef.intercept.size() != y.n_responses()) {
        throw DimensionError("coefficient columns do not match the columns of Y");
    }
}

}  // namespace

DesignMatrix center_design(const DesignMatrix& x)
{
    Matrix centered = x.values().rowwise() - x.col_means().transpose();
    return DesignMatrix(std::move(centered));
}

CenteredData center_columns(const DesignMatrix& x, const ResponseMatrix& y)
{
    if (x.n_rows() != y.n_rows()) {
        throw DimensionError("X and Y have different numbers of rows");
    }
    CenteredData out{center_design(x), y, x.col_means(), Vector::Zero(y.n_responses())};
    if (y.family() == Family::Gaussian) {
        out.y_means = y.values().colwise().mean().transpose();
        Matrix yc = y.values().rowwise() - out.y_means.transpose();
        out.y = ResponseMatrix(std::move(yc), Family::Gaussian);
    }
    return out;
}

Vector row_group_norms(const Matrix& beta)
{
    return beta.rowwise().norm();
}

double penalty_value(const CoefficientMatrix& coef, const PenaltySpec& spec)
{
    double value = 0.0;
    if (spec.group_weight() != 0.0) {
        value += spec.group_weight() * row_group_norms(coef.beta).sum();
    }
    if (spec.ridge_weight() != 0.0) {
        value += 0.5 * spec.ridge_weight() * coef.beta.squaredNorm();
    }
    return value;
}

Matrix linear_predictor(const DesignMatrix& x, const CoefficientMatrix& coef)
{
    Matrix eta(x.n_rows(), coef.beta.cols());
    eta.rowwise() = coef.intercept.transpose();
    for (Index k = 0; k < coef.beta.rows(); ++k) {
        if (!coef.beta.row(k).isZero(0.0)) eta.noalias() += x.col(k) * coef.beta.row(k);
    }
    return eta;
}

double objective_gaussian(const DesignMatrix& x, const ResponseMatrix& y,
                          const CoefficientMatrix& coef, const PenaltySpec& spec)
{
    check_conformance(x, y, coef);
    const Matrix resid = y.values() - linear_predictor(x, coef);
    return 0.5 * resid.squaredNorm() + penalty_value(coef, spec);
}

double multinomial_neg_loglik(const Matrix& y, const Matrix& eta)
{
    double total = 0.0;
    for (Index i = 0; i < eta.rows(); ++i) {
        const double top = eta.row(i).maxCoeff();
        const double lse = top + std::log((eta.row(i).array() - top).exp().sum());
        total += lse - y.row(i).dot(eta.row(i));
    }
    return total;
}

double objective_multinomial(const DesignMatrix& x, const ResponseMatrix& y,
                             const CoefficientMatrix& coef, const PenaltySpec& spec)
{
    check_conformance(x, y, coef);
    return multinomial_neg_loglik(y.values(), linear_predictor(x, coef)) + penalty_value(coef, spec);
}

double objective(const DesignMatrix& x, const ResponseMatrix& y,
                 const CoefficientMatrix& coef, const PenaltySpec& spec)
{
    return y.family() == Family::Gaussian ? objective_gaussian(x, y, coef, spec)
                                          : objective_multinomial(x, y, coef, spec);
}

}  // namespace grpnet
