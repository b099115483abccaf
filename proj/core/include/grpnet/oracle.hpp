#pragma once

#include <vector>

#include "grpnet/types.hpp"

namespace grpnet::oracle {

// Slow reference solvers used to certify the blockwise solvers. Only the
// data types and objective functions are shared with the main code path.

struct OracleConfig {
    long max_iter = 1'000'000;
    /// Stop once a successful step lowers the objective by less than tol * max(1, |objective|)
    /// and the gradient mapping (w - w_next) / step is below grad_tol times the
    /// largest row norm of the starting gradient.
    double tol = 1e-12;
    double grad_tol = 1e-9;
    bool fit_intercept = true;
    bool record_trace = false;

    void validate() const;
};

struct OracleResult {
    CoefficientMatrix coef;
    long iterations = 0;
    bool converged = false;
    double objective = 0.0;
    double step = 0.0;
    /// Objective after every accepted step when record_trace is set.
    std::vector<double> trace;
};

/// (1 / (1 + ridge)) * (1 - threshold / ||v||)_+ * v, the proximal map of
/// threshold*||.|| + ridge/2*||.||^2.
Vector prox_group_row(const Eigen::Ref<const Vector>& v, double threshold, double ridge);

/// Proximal gradient on the Gaussian objective with step 1/L, L the largest
/// eigenvalue of [1 X]^T [1 X] (or X^T X without intercept).
OracleResult oracle_fit_gaussian(const DesignMatrix& x, const ResponseMatrix& y, const PenaltySpec& spec,
                                 const OracleConfig& config = {});

/// Proximal gradient on the penalized multinomial objective with initial
/// step 2 / ||[1 X]||_2^2, halved whenever a step fails to decrease.
OracleResult oracle_fit_multinomial(const DesignMatrix& x, const ResponseMatrix& y, const PenaltySpec& spec,
                                    const OracleConfig& config = {});

}  // namespace grpnet::oracle
