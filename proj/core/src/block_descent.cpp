#include "grpnet/block_descent.hpp"

#include <algorithm>
#include <vector>

namespace grpnet::detail {
void shrink_row(double col_sq_norm, const Vector& gradient, double group, double ridge, Vector& out)
{
    const double denom = col_sq_norm + ridge;
    const double gnorm = gradient.norm();
    if (gnorm <= group || denom <= 0.0) {
        out.setZero();
        return;
    }
    out = ((1.0 - group / gnorm) / denom) * gradient;
}

BlockResult solve_blocks(const BlockProblem& problem, Matrix& beta, Vector& intercept, Matrix& residual)
{
    const DesignMatrix& x = *problem.x;
    const Index p = x.n_cols();
    const Index m = beta.cols();
    const auto n = static_cast<double>(x.n_rows());
    const Vector& sq = x.col_sq_norms();

    Vector grad(m);
    Vector fresh(m);
    Vector diff(m);

    auto eligible = [&](Index k) {
        return problem.eligible.empty() || problem.eligible[static_cast<std::size_t>(k)] != 0;
    };

    auto update_row = [&](Index k) -> double {
        // X_k^T R_{-k} = X_k^T R + ||X_k||^2 beta_k
        grad.noalias() = residual.transpose() * x.col(k);
        grad += sq[k] * beta.row(k).transpose();
        shrink_row(sq[k], grad, problem.group, problem.ridge, fresh);
        diff = fresh - beta.row(k).transpose();
        const double change = diff.cwiseAbs().maxCoeff();
        if (change != 0.0) {
            residual.noalias() -= x.col(k) * diff.transpose();
            beta.row(k) = fresh.transpose();
        }
        if (problem.on_update) problem.on_update();
        return sq[k] * change;
    };

    auto update_intercept = [&]() -> double {
        const Eigen::RowVectorXd delta = residual.colwise().mean();
        const double change = delta.cwiseAbs().maxCoeff();
        if (change != 0.0) {
            intercept += delta.transpose();
            residual.rowwise() -= delta;
        }
        if (problem.on_update) problem.on_update();
        return n * change;
    };

    BlockResult result;
    std::vector<Index> active;
    active.reserve(static_cast<std::size_t>(p));

    while (result.cycles < problem.max_cycles) {
        double worst = problem.fit_intercept ? update_intercept() : 0.0;
        for (Index k = 0; k < p; ++k) {
            if (eligible(k)) worst = std::max(worst, update_row(k));
        }
        ++result.cycles;
        if (worst <= problem.threshold) {
            result.converged = true;
            break;
        }
        if (!problem.active_set) continue;

        active.clear();
        for (Index k = 0; k < p; ++k) {
            if (eligible(k) && !beta.row(k).isZero(0.0)) active.push_back(k);
        }
        while (result.cycles < problem.max_cycles) {
            double inner = problem.fit_intercept ? update_intercept() : 0.0;
            for (Index k : active) inner = std::max(inner, update_row(k));
            ++result.cycles;
            if (inner <= problem.threshold) break;
        }
    }
    return result;
}

}  // namespace grpnet::detail
