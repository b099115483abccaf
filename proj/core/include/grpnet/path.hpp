#pragma once

#include <vector>

#include "grpnet/gaussian.hpp"
#include "grpnet/multinomial.hpp"
#include "grpnet/types.hpp"

namespace grpnet {

struct PathConfig {
    int n_lambda = 100;
    /// lambda_min = lambda_min_ratio * lambda_max.
    double lambda_min_ratio = 0.05;
    /// Elastic-net mixing weight; must be positive so that lambda_max exists.
    double alpha = 1.0;
    bool screening = true;
    Family family = Family::Gaussian;

    void validate() const;
};

struct PathPoint {
    double lambda = 0.0;
    /// Coefficients on the scale of the uncentered inputs.
    CoefficientMatrix coef;
    double objective = 0.0;
    int outer_iterations = 0;
    /// Blockwise descent cycles summed over all solves at this lambda.
    int iterations = 0;
    double kkt_max_violation = 0.0;
    /// Rows the final solve was allowed to move.
    Index screened_size = 0;
    /// Rows restored by the KKT repair loop.
    Index kkt_repairs = 0;
    Index n_active = 0;
    bool converged = false;
};

struct PathFit {
    Family family = Family::Gaussian;
    double alpha = 1.0;
    std::vector<double> lambdas;
    std::vector<PathPoint> fits;

    bool all_converged() const;
    double max_kkt_violation() const;
};

/**
 * Smallest lambda at which the all-zero coefficient matrix is optimal:
 * max_k ||X_k^T (Y - 1 ybar^T)||_2 / alpha. For one-hot responses ybar holds
 * the sample class proportions, so the same expression covers both families.
 */
double lambda_max(const DesignMatrix& x, const ResponseMatrix& y, Family family, double alpha);

/// n_lambda geometric steps from lambda_max down to lambda_min_ratio * lambda_max inclusive.
std::vector<double> lambda_grid(double lambda_max, const PathConfig& config);

/**
 * Strong-rule candidates at lambda_j given the residual at lambda_prev:
 * rows with ||X_k^T R_prev|| > alpha * (2 lambda_j - lambda_prev). Rows that
 * are nonzero in `warm` (when given) are always kept. Sorted ascending.
 */
std::vector<Index> strong_rule_screen(const DesignMatrix& x, const Matrix& residual_prev, double lambda_j,
                                      double lambda_prev, double alpha, const Matrix* warm = nullptr);

/**
 * Warm-started path over the lambda grid. With screening on, each lambda is
 * solved on the strong set, then every row is checked against the KKT
 * conditions and violators are added back until none remain.
 */
PathFit fit_path(const DesignMatrix& x, const ResponseMatrix& y, const PathConfig& config,
                 const GaussianFitConfig& gaussian = {}, const MultinomialFitConfig& multinomial = {});

}  // namespace grpnet
