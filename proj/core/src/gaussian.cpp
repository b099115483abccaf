#include "grpnet/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include "grpnet/block_descent.hpp"
#include "grpnet/objective.hpp"

namespace grpnet {
namespace {

void check_inputs(const DesignMatrix& x, const ResponseMatrix& y, const CoefficientMatrix& init)
{
    if (x.n_rows() != y.n_rows()) throw DimensionError("X and Y have different numbers of rows");
    if (init.beta.rows() != x.n_cols() || init.beta.cols() != y.n_responses() ||
        init.intercept.size() != y.n_responses()) {
        throw DimensionError("initial coefficients do not conform to X and Y");
    }
}

}  // namespace

void GaussianFitConfig::validate() const
{
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (max_cycles < 1) throw std::invalid_argument("max_cycles must be at least 1");
}

Vector row_update(double col_sq_norm, const Eigen::Ref<const Vector>& gradient, const PenaltySpec& spec)
{
    Vector out(gradient.size());
    detail::shrink_row(col_sq_norm, gradient, spec.group_weight(), spec.ridge_weight(), out);
    return out;
}

double gaussian_gradient_scale(const DesignMatrix& x, const ResponseMatrix& y)
{
    const Matrix centered = y.values().rowwise() - y.values().colwise().mean();
    const Matrix grad = x.values().transpose() * centered;
    return grad.rowwise().norm().maxCoeff();
}

KktReport kkt_from_gradient(const Matrix& gradient, const Matrix& beta, const PenaltySpec& spec,
                            double scale, double tolerance)
{
    KktReport report;
    report.scale = scale > 0.0 ? scale : 1.0;
    const double group = spec.group_weight();
    const double ridge = spec.ridge_weight();
    for (Index k = 0; k < beta.rows(); ++k) {
        const double bnorm = beta.row(k).norm();
        double raw = 0.0;
        if (bnorm == 0.0) {
            raw = std::max(0.0, gradient.row(k).norm() - group);
        } else {
            const Eigen::RowVectorXd resid =
                gradient.row(k) - (group / bnorm) * beta.row(k) - ridge * beta.row(k);
            raw = resid.cwiseAbs().maxCoeff();
        }
        const double scaled = raw / report.scale;
        report.max_raw_violation = std::max(report.max_raw_violation, raw);
        report.max_violation = std::max(report.max_violation, scaled);
        if (scaled > tolerance) report.violating_rows.push_back(k);
    }
    return report;
}

GaussianFit fit_gaussian(const DesignMatrix& x, const ResponseMatrix& y, const PenaltySpec& spec,
                         const CoefficientMatrix& init, const GaussianFitConfig& config,
                         std::span<const std::uint8_t> eligible)
{
    config.validate();
    check_inputs(x, y, init);
    if (!eligible.empty() && static_cast<Index>(eligible.size()) != x.n_cols()) {
        throw DimensionError("eligibility mask length does not match the columns of X");
    }

    GaussianFit fit;
    fit.coef = init;
    Matrix residual = y.values() - linear_predictor(x, init);
    if (!eligible.empty()) {
        for (Index k = 0; k < x.n_cols(); ++k) {
            if (eligible[static_cast<std::size_t>(k)] == 0 && !fit.coef.beta.row(k).isZero(0.0)) {
                residual.noalias() += x.col(k) * fit.coef.beta.row(k);
                fit.coef.beta.row(k).setZero();
            }
        }
    }

    double scale = gaussian_gradient_scale(x, y);
    if (!(scale > 0.0)) scale = 1.0;

    detail::BlockProblem problem;
    problem.x = &x;
    problem.group = spec.group_weight();
    problem.ridge = spec.ridge_weight();
    problem.fit_intercept = config.fit_intercept;
    problem.threshold = config.tol * scale;
    problem.max_cycles = config.max_cycles;
    problem.active_set = config.active_set;
    problem.eligible = eligible;
    problem.on_update = config.on_update;

    const detail::BlockResult run = detail::solve_blocks(problem, fit.coef.beta, fit.coef.intercept, residual);
    fit.cycles = run.cycles;
    fit.converged = run.converged;
    fit.final_objective = objective_gaussian(x, y, fit.coef, spec);
    const Matrix gradient = x.values().transpose() * residual;
    fit.kkt_max_violation = kkt_from_gradient(gradient, fit.coef.beta, spec, scale, kKktTolerance).max_violation;
    return fit;
}

GaussianFit fit_gaussian(const DesignMatrix& x, const ResponseMatrix& y, const PenaltySpec& spec,
                         const GaussianFitConfig& config)
{
    return fit_gaussian(x, y, spec, CoefficientMatrix::zeros(x.n_cols(), y.n_responses()), config);
}

KktReport kkt_check_gaussian(const DesignMatrix& x, const ResponseMatrix& y, const CoefficientMatrix& coef,
                             const PenaltySpec& spec, double tolerance)
{
    check_inputs(x, y, coef);
    const Matrix residual = y.values() - linear_predictor(x, coef);
    const Matrix gradient = x.values().transpose() * residual;
    return kkt_from_gradient(gradient, coef.beta, spec, gaussian_gradient_scale(x, y), tolerance);
}

}  // namespace grpnet
