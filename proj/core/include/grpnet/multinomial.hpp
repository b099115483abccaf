#pragma once

#include <vector>

#include "grpnet/gaussian.hpp"
#include "grpnet/types.hpp"

namespace grpnet {

/// Row-stochastic n x M matrix. Rows sum to one; after clamping every entry
/// lies in [clamp, 1 - clamp].
struct ProbabilityMatrix {
    Matrix values;
};

inline constexpr double kDefaultProbClamp = 1e-5;

struct MultinomialFitConfig {
    /// Relative change in the penalized objective between outer iterations.
    double outer_tol = 1e-7;
    int max_outer = 10000;
    GaussianFitConfig inner{};
    double prob_clamp = kDefaultProbClamp;

    void validate() const;
};

struct MultinomialFit {
    CoefficientMatrix coef;
    int outer_iterations = 0;
    int inner_cycles = 0;
    bool converged = false;
    double final_objective = 0.0;
    double kkt_max_violation = 0.0;
    /// Penalized objective at the start and after each outer iteration.
    std::vector<double> objective_trace;
};

/// Row softmax with max subtraction, no clamping.
Matrix softmax_rows(const Matrix& eta);

/**
 * Row softmax followed by clamping to [clamp, 1 - clamp]. Entries below the
 * floor are raised to it and the deficit is taken from the remaining entries
 * in proportion to their excess over the floor, so rows still sum to one.
 */
ProbabilityMatrix probabilities(const Matrix& eta, double clamp = kDefaultProbClamp);

/// 2 * max_{i,m} p_im (1 - p_im); in (0, 1/2] for clamped input.
double majorization_t(const ProbabilityMatrix& p);

/// diag(p) - p p^T, the negated within-observation Hessian of the log-likelihood.
Matrix hessian_block(const Eigen::Ref<const Vector>& p_row);

/// (Y - P) / t.
Matrix working_response(const Matrix& y, const ProbabilityMatrix& p, double t);

/// Intercepts of the null model: log class proportions shifted to mean zero.
/// Throws if a class has no observations.
Vector null_intercept(const ResponseMatrix& y);

/// max_k ||X_k^T (Y - P0)||_2 with P0 the sample class proportions.
double multinomial_gradient_scale(const DesignMatrix& x, const ResponseMatrix& y);

/**
 * Majorize-minimize loop. Each outer iteration replaces the per-observation
 * Hessians by t*I and solves the resulting penalized least-squares problem
 * on the working response with blockwise descent (thresholds scaled by 1/t).
 * X is expected to be column-centered. On return the intercept is shifted to
 * mean zero.
 */
MultinomialFit fit_multinomial(const DesignMatrix& x, const ResponseMatrix& y, const PenaltySpec& spec,
                               const CoefficientMatrix& init, const MultinomialFitConfig& config = {},
                               std::span<const std::uint8_t> eligible = {});

MultinomialFit fit_multinomial(const DesignMatrix& x, const ResponseMatrix& y, const PenaltySpec& spec,
                               const MultinomialFitConfig& config = {});

/// KKT residuals using unclamped probabilities of the fitted linear predictor.
KktReport kkt_check_multinomial(const DesignMatrix& x, const ResponseMatrix& y, const CoefficientMatrix& coef,
                                const PenaltySpec& spec, double tolerance = kKktTolerance);

}  // namespace grpnet
