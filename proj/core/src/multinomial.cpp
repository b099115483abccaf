#include "grpnet/multinomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "grpnet/block_descent.hpp"
#include "grpnet/objective.hpp"

namespace grpnet {
namespace {

void clamp_row(Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> row, double floor)
{
    const auto m = static_cast<double>(row.size());
    if (floor * m >= 1.0) {
        row.setConstant(1.0 / m);
        return;
    }
    double deficit = 0.0;
    double excess = 0.0;
    for (Index j = 0; j < row.size(); ++j) {
        if (row[j] < floor) {
            deficit += floor - row[j];
        } else {
            excess += row[j] - floor;
        }
    }
    if (deficit == 0.0) return;
    const double keep = 1.0 - deficit / excess;
    for (Index j = 0; j < row.size(); ++j) {
        row[j] = row[j] < floor ? floor : floor + (row[j] - floor) * keep;
    }
}

void check_inputs(const DesignMatrix& x, const ResponseMatrix& y, const CoefficientMatrix& coef)
{
    if (y.family() != Family::Multinomial) {
        throw std::invalid_argument("multinomial fit requires a one-hot response");
    }
    if (x.n_rows() != y.n_rows()) throw DimensionError("X and Y have different numbers of rows");
    if (coef.beta.rows() != x.n_cols() || coef.beta.cols() != y.n_responses() ||
        coef.intercept.size() != y.n_responses()) {
        throw DimensionError("coefficients do not conform to X and Y");
    }
}

}  // namespace

void MultinomialFitConfig::validate() const
{
    if (!(outer_tol > 0.0)) throw std::invalid_argument("outer_tol must be positive");
    if (max_outer < 1) throw std::invalid_argument("max_outer must be at least 1");
    if (!(prob_clamp > 0.0 && prob_clamp < 0.5)) throw std::invalid_argument("prob_clamp must lie in (0, 0.5)");
    inner.validate();
}

Matrix softmax_rows(const Matrix& eta)
{
    Matrix p = eta.colwise() - eta.rowwise().maxCoeff();
    p = p.array().exp().matrix();
    p.array().colwise() /= p.rowwise().sum().array();
    return p;
}

ProbabilityMatrix probabilities(const Matrix& eta, double clamp)
{
    ProbabilityMatrix out{softmax_rows(eta)};
    if (clamp > 0.0) {
        for (Index i = 0; i < out.values.rows(); ++i) clamp_row(out.values.row(i), clamp);
    }
    return out;
}

double majorization_t(const ProbabilityMatrix& p)
{
    return 2.0 * (p.values.array() * (1.0 - p.values.array())).maxCoeff();
}

Matrix hessian_block(const Eigen::Ref<const Vector>& p_row)
{
    Matrix h = -p_row * p_row.transpose();
    h.diagonal() += p_row;
    return h;
}

Matrix working_response(const Matrix& y, const ProbabilityMatrix& p, double t)
{
    if (!(t > 0.0)) throw std::logic_error("majorization constant must be positive");
    return (y - p.values) / t;
}

Vector null_intercept(const ResponseMatrix& y)
{
    const Vector counts = y.values().colwise().sum().transpose();
    for (Index m = 0; m < counts.size(); ++m) {
        if (counts[m] == 0.0) {
            throw std::invalid_argument("class " + std::to_string(m + 1) + " has no observations");
        }
    }
    Vector logp = (counts / static_cast<double>(y.n_rows())).array().log().matrix();
    logp.array() -= logp.mean();
    return logp;
}

double multinomial_gradient_scale(const DesignMatrix& x, const ResponseMatrix& y)
{
    // the class proportions are the column means of the one-hot response
    return gaussian_gradient_scale(x, y);
}

MultinomialFit fit_multinomial(const DesignMatrix& x, const ResponseMatrix& y, const PenaltySpec& spec,
                               const CoefficientMatrix& init, const MultinomialFitConfig& config,
                               std::span<const std::uint8_t> eligible)
{
    config.validate();
    check_inputs(x, y, init);
    if (!eligible.empty() && static_cast<Index>(eligible.size()) != x.n_cols()) {
        throw DimensionError("eligibility mask length does not match the columns of X");
    }

    MultinomialFit fit;
    fit.coef = init;
    if (!eligible.empty()) {
        for (Index k = 0; k < x.n_cols(); ++k) {
            if (eligible[static_cast<std::size_t>(k)] == 0) fit.coef.beta.row(k).setZero();
        }
    }
    Matrix& beta = fit.coef.beta;
    Vector& intercept = fit.coef.intercept;
    const Matrix& yv = y.values();
    const Vector& sq = x.col_sq_norms();
    const auto n = static_cast<double>(x.n_rows());

    double scale = multinomial_gradient_scale(x, y);
    if (!(scale > 0.0)) scale = 1.0;
    const double coef_threshold = config.inner.tol * scale;

    Matrix eta = linear_predictor(x, fit.coef);
    double current = multinomial_neg_loglik(yv, eta) + penalty_value(fit.coef, spec);
    fit.objective_trace.push_back(current);

    detail::BlockProblem problem;
    problem.x = &x;
    problem.fit_intercept = true;
    problem.max_cycles = config.inner.max_cycles;
    problem.active_set = config.inner.active_set;
    problem.eligible = eligible;
    problem.on_update = config.inner.on_update;

    Matrix previous_beta;
    Vector previous_intercept;
    double last_step = 0.0;
    for (int outer = 0; outer < config.max_outer; ++outer) {
        const ProbabilityMatrix p = probabilities(eta, config.prob_clamp);
        const double t = majorization_t(p);
        const Matrix working = working_response(yv, p, t);
        Matrix residual = working;

        problem.group = spec.group_weight() / t;
        problem.ridge = spec.ridge_weight() / t;
        // early surrogates need not be solved to full accuracy
        problem.threshold = std::max(coef_threshold, 0.1 * last_step) / t;

        previous_beta = beta;
        previous_intercept = intercept;
        const detail::BlockResult run = detail::solve_blocks(problem, beta, intercept, residual);
        fit.inner_cycles += run.cycles;
        ++fit.outer_iterations;

        // X dB + 1 db0^T = working - residual, so eta moves without a product with X
        eta += working - residual;
        const double next = multinomial_neg_loglik(yv, eta) + penalty_value(fit.coef, spec);
        fit.objective_trace.push_back(next);

        const double rel_change = std::abs(current - next) / std::max(std::abs(next), 1e-300);
        double coef_change = n * (intercept - previous_intercept).cwiseAbs().maxCoeff();
        for (Index k = 0; k < beta.rows(); ++k) {
            coef_change = std::max(coef_change, sq[k] * (beta.row(k) - previous_beta.row(k)).cwiseAbs().maxCoeff());
        }
        current = next;
        last_step = t * coef_change;
        if (run.converged && rel_change <= config.outer_tol && t * coef_change <= coef_threshold) {
            fit.converged = true;
            break;
        }
    }

    intercept.array() -= intercept.mean();
    fit.final_objective = objective_multinomial(x, y, fit.coef, spec);
    const Matrix gradient = x.values().transpose() * (yv - softmax_rows(linear_predictor(x, fit.coef)));
    fit.kkt_max_violation = kkt_from_gradient(gradient, beta, spec, scale, kKktTolerance).max_violation;
    return fit;
}

MultinomialFit fit_multinomial(const DesignMatrix& x, const ResponseMatrix& y, const PenaltySpec& spec,
                               const MultinomialFitConfig& config)
{
    return fit_multinomial(x, y, spec, CoefficientMatrix::zeros(x.n_cols(), y.n_responses()), config);
}

KktReport kkt_check_multinomial(const DesignMatrix& x, const ResponseMatrix& y, const CoefficientMatrix& coef,
                                const PenaltySpec& spec, double tolerance)
{
    check_inputs(x, y, coef);
    const Matrix gradient = x.values().transpose() * (y.values() - softmax_rows(linear_predictor(x, coef)));
    return kkt_from_gradient(gradient, coef.beta, spec, multinomial_gradient_scale(x, y), tolerance);
}

}  // namespace grpnet
