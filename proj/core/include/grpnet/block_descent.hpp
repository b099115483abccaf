#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "grpnet/types.hpp"

namespace grpnet::detail {

/// Penalized least-squares subproblem solved by cyclic row updates:
///   min 1/2 ||R0 - X dB - 1 db0^T||_F^2 + group * sum ||B_k|| + ridge/2 ||B||_F^2
/// where R0 is the residual at the starting point.
struct BlockProblem {
    const DesignMatrix* x = nullptr;
    double group = 0.0;
    double ridge = 0.0;
    bool fit_intercept = true;
    /// A cycle converges when max_k ||X_k||^2 * ||dB_k||_inf <= threshold.
    double threshold = 0.0;
    int max_cycles = 100000;
    bool active_set = true;
    /// Rows allowed to move; empty means all rows. Excluded rows stay at zero.
    std::span<const std::uint8_t> eligible;
    /// Called after every row or intercept update.
    std::function<void()> on_update;
};

struct BlockResult {
    int cycles = 0;
    bool converged = false;
};

/// Group soft-threshold of one row: (1 - group/||g||)_+ g / (col_sq_norm + ridge).
/// Writes an exact zero row when ||g|| <= group or the denominator vanishes.
void shrink_row(double col_sq_norm, const Vector& gradient, double group, double ridge, Vector& out);

/// Runs blockwise descent in place. `residual` must equal the residual
/// of (beta, intercept) on entry and is kept in sync on exit.
BlockResult solve_blocks(const BlockProblem& problem, Matrix& beta, Vector& intercept, Matrix& residual);

}  // namespace grpnet::detail
