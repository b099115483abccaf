#pragma once

#include "grpnet/types.hpp"

namespace grpnet {

struct CenteredData {
    DesignMatrix x;
    ResponseMatrix y;
    Vector x_means;
    Vector y_means;  // zero for multinomial responses
};

/// Mean-centers the columns of X, and of Y when the family is Gaussian.
/// Multinomial responses stay one-hot. Constant columns become all-zero.
CenteredData center_columns(const DesignMatrix& x, const ResponseMatrix& y);

/// Mean-centers the columns of X only.
DesignMatrix center_design(const DesignMatrix& x);

/// Entry k is the Euclidean norm of row k of beta.
Vector row_group_norms(const Matrix& beta);

/// lambda*alpha*sum_k ||beta_k.|| + lambda*(1-alpha)/2 * ||beta||_F^2.
/// The intercept is never penalized.
double penalty_value(const CoefficientMatrix& coef, const PenaltySpec& spec);

/// Linear predictor 1 * intercept^T + X * beta.
Matrix linear_predictor(const DesignMatrix& x, const CoefficientMatrix& coef);

/// 1/2 ||Y - X beta - 1 intercept^T||_F^2 + penalty.
double objective_gaussian(const DesignMatrix& x, const ResponseMatrix& y,
                          const CoefficientMatrix& coef, const PenaltySpec& spec);

/// Negative multinomial log-likelihood of the linear predictor plus penalty.
/// Log-sum-exp is evaluated with per-row max subtraction.
double objective_multinomial(const DesignMatrix& x, const ResponseMatrix& y,
                             const CoefficientMatrix& coef, const PenaltySpec& spec);

/// -loglik(eta) for one-hot Y, without any penalty.
double multinomial_neg_loglik(const Matrix& y, const Matrix& eta);

/// Dispatches on the response family.
double objective(const DesignMatrix& x, const ResponseMatrix& y,
                 const CoefficientMatrix& coef, const PenaltySpec& spec);

}  // namespace grpnet
