#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "grpnet/types.hpp"

namespace grpnet {

struct GaussianFitConfig {
    /// Relative to the null gradient scale max_k ||X_k^T (Y - 1 ybar^T)||.
    double tol = 1e-7;
    int max_cycles = 100000;
    /// Iterate over nonzero rows between full passes.
    bool active_set = true;
    /// Fit an unpenalized intercept by blockwise updates alongside the rows.
    bool fit_intercept = true;
    /// Test hook invoked after every row or intercept update.
    std::function<void()> on_update;

    void validate() const;
};

struct GaussianFit {
    CoefficientMatrix coef;
    int cycles = 0;
    bool converged = false;
    double final_objective = 0.0;
    double kkt_max_violation = 0.0;
};

/// Per-row stationarity residuals, scaled by the null gradient scale.
struct KktReport {
    double max_violation = 0.0;
    double max_raw_violation = 0.0;
    double scale = 1.0;
    std::vector<Index> violating_rows;
};

/// Default scaled tolerance for a certified fit.
inline constexpr double kKktTolerance = 1e-4;

/**
 * Closed-form minimizer of the single-row elastic-net problem:
 * (1 / (col_sq_norm + lambda(1-alpha))) * (1 - lambda*alpha / ||g||)_+ * g.
 * Returns an exact zero vector when ||g|| <= lambda*alpha, and also when the
 * denominator vanishes.
 */
Vector row_update(double col_sq_norm, const Eigen::Ref<const Vector>& gradient, const PenaltySpec& spec);

/// max_k ||X_k^T (Y - 1 ybar^T)||_2, the gradient norm at the null model.
double gaussian_gradient_scale(const DesignMatrix& x, const ResponseMatrix& y);

/// Blockwise coordinate descent at a single lambda. `eligible`, when
/// non-empty, restricts which rows may become nonzero.
GaussianFit fit_gaussian(const DesignMatrix& x, const ResponseMatrix& y, const PenaltySpec& spec,
                         const CoefficientMatrix& init, const GaussianFitConfig& config = {},
                         std::span<const std::uint8_t> eligible = {});

GaussianFit fit_gaussian(const DesignMatrix& x, const ResponseMatrix& y, const PenaltySpec& spec,
                         const GaussianFitConfig& config = {});

/// Rows whose scaled violation exceeds `tolerance` are listed.
KktReport kkt_check_gaussian(const DesignMatrix& x, const ResponseMatrix& y, const CoefficientMatrix& coef,
                             const PenaltySpec& spec, double tolerance = kKktTolerance);

/// Shared by both families: stationarity residuals given the loss gradient
/// G = X^T (residual) of shape p x M.
KktReport kkt_from_gradient(const Matrix& gradient, const Matrix& beta, const PenaltySpec& spec,
                            double scale, double tolerance);

}  // namespace grpnet
