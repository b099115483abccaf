#include "grpnet/path.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "grpnet/objective.hpp"

namespace grpnet {
namespace {

Matrix path_residual(const DesignMatrix& xc, const ResponseMatrix& yc, const CoefficientMatrix& coef)
{
    if (yc.family() == Family::Gaussian) {
        return yc.values() - linear_predictor(xc, coef);
    }
    return yc.values() - softmax_rows(linear_predictor(xc, coef));
}

Index count_nonzero_rows(const Matrix& beta)
{
    Index count = 0;
    for (Index k = 0; k < beta.rows(); ++k) {
        if (!beta.row(k).isZero(0.0)) ++count;
    }
    return count;
}

struct SolveOutcome {
    CoefficientMatrix coef;
    int outer = 0;
    int cycles = 0;
    bool converged = false;
};

}  // namespace

void PathConfig::validate() const
{
    if (n_lambda < 1) throw std::invalid_argument("n_lambda must be at least 1");
    if (!(lambda_min_ratio > 0.0 && lambda_min_ratio < 1.0)) {
        throw std::invalid_argument("lambda_min_ratio must lie in (0, 1)");
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must lie in (0, 1] for a path (lambda_max is undefined at 0)");
    }
}

bool PathFit::all_converged() const
{
    return std::all_of(fits.begin(), fits.end(), [](const PathPoint& f) { return f.converged; });
}

double PathFit::max_kkt_violation() const
{
    double worst = 0.0;
    for (const auto& f : fits) worst = std::max(worst, f.kkt_max_violation);
    return worst;
}

double lambda_max(const DesignMatrix& x, const ResponseMatrix& y, Family family, double alpha)
{
    if (!(alpha > 0.0)) throw std::invalid_argument("lambda_max is undefined for alpha = 0");
    if (x.n_rows() != y.n_rows()) throw DimensionError("X and Y have different numbers of rows");
    if (family != y.family()) throw std::invalid_argument("response family does not match");
    return gaussian_gradient_scale(x, y) / alpha;
}

std::vector<double> lambda_grid(double lambda_max, const PathConfig& config)
{
    config.validate();
    if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
        throw std::invalid_argument("lambda_max must be positive and finite");
    }
    std::vector<double> grid(static_cast<std::size_t>(config.n_lambda));
    grid[0] = lambda_max;
    for (int j = 1; j < config.n_lambda; ++j) {
        const double exponent = static_cast<double>(j) / static_cast<double>(config.n_lambda - 1);
        grid[static_cast<std::size_t>(j)] = lambda_max * std::pow(config.lambda_min_ratio, exponent);
    }
    return grid;
}

std::vector<Index> strong_rule_screen(const DesignMatrix& x, const Matrix& residual_prev, double lambda_j,
                                      double lambda_prev, double alpha, const Matrix* warm)
{
    if (residual_prev.rows() != x.n_rows()) throw DimensionError("residual rows do not match X");
    if (warm && warm->rows() != x.n_cols()) throw DimensionError("warm start rows do not match X");
    const double threshold = alpha * (2.0 * lambda_j - lambda_prev);
    const Vector scores = (x.values().transpose() * residual_prev).rowwise().norm();
    std::vector<Index> keep;
    for (Index k = 0; k < x.n_cols(); ++k) {
        if (scores[k] > threshold || (warm && !warm->row(k).isZero(0.0))) keep.push_back(k);
    }
    return keep;
}

PathFit fit_path(const DesignMatrix& x, const ResponseMatrix& y, const PathConfig& config,
                 const GaussianFitConfig& gaussian, const MultinomialFitConfig& multinomial)
{
    config.validate();
    if (config.family != y.family()) {
        throw std::invalid_argument("path family does not match the response family");
    }
    const CenteredData centered = center_columns(x, y);
    const DesignMatrix& xc = centered.x;
    const ResponseMatrix& yc = centered.y;
    const Index p = x.n_cols();
    const Index m = y.n_responses();
    const bool is_gaussian = config.family == Family::Gaussian;

    const double lmax = lambda_max(xc, yc, config.family, config.alpha);
    if (!(lmax > 0.0)) {
        throw std::invalid_argument("response carries no signal along X (lambda_max = 0)");
    }

    PathFit path;
    path.family = config.family;
    path.alpha = config.alpha;
    path.lambdas = lambda_grid(lmax, config);

    GaussianFitConfig gcfg = gaussian;
    gcfg.fit_intercept = false;  // X and Y are centered

    CoefficientMatrix current = CoefficientMatrix::zeros(p, m);
    if (!is_gaussian) current.intercept = null_intercept(yc);
    Matrix residual_prev = path_residual(xc, yc, current);
    double lambda_prev = path.lambdas.front();

    std::vector<std::uint8_t> eligible(static_cast<std::size_t>(p), 1);

    auto solve = [&](const PenaltySpec& spec, const CoefficientMatrix& start) {
        SolveOutcome out;
        if (is_gaussian) {
            GaussianFit fit = fit_gaussian(xc, yc, spec, start, gcfg, eligible);
            out.coef = std::move(fit.coef);
            out.cycles = fit.cycles;
            out.converged = fit.converged;
        } else {
            MultinomialFit fit = fit_multinomial(xc, yc, spec, start, multinomial, eligible);
            out.coef = std::move(fit.coef);
            out.outer = fit.outer_iterations;
            out.cycles = fit.inner_cycles;
            out.converged = fit.converged;
        }
        return out;
    };

    path.fits.reserve(path.lambdas.size());
    for (const double lambda : path.lambdas) {
        const PenaltySpec spec(lambda, config.alpha);

        if (config.screening) {
            std::fill(eligible.begin(), eligible.end(), std::uint8_t{0});
            for (Index k : strong_rule_screen(xc, residual_prev, lambda, lambda_prev, config.alpha, &current.beta)) {
                eligible[static_cast<std::size_t>(k)] = 1;
            }
        }

        PathPoint point;
        point.lambda = lambda;
        KktReport kkt;
        SolveOutcome outcome;
        CoefficientMatrix start = current;
        while (true) {
            outcome = solve(spec, start);
            point.outer_iterations += outcome.outer;
            point.iterations += outcome.cycles;
            kkt = is_gaussian ? kkt_check_gaussian(xc, yc, outcome.coef, spec, 0.0)
                              : kkt_check_multinomial(xc, yc, outcome.coef, spec, 0.0);
            if (!config.screening) break;
            Index added = 0;
            for (Index k : kkt.violating_rows) {
                auto& flag = eligible[static_cast<std::size_t>(k)];
                if (flag == 0) {
                    flag = 1;
                    ++added;
                }
            }
            if (added == 0) break;
            point.kkt_repairs += added;
            start = outcome.coef;
        }

        current = outcome.coef;
        residual_prev = path_residual(xc, yc, current);
        lambda_prev = lambda;

        point.screened_size = static_cast<Index>(std::count(eligible.begin(), eligible.end(), std::uint8_t{1}));
        point.converged = outcome.converged;
        point.kkt_max_violation = kkt.max_violation;
        point.n_active = count_nonzero_rows(current.beta);

        CoefficientMatrix original = current;
        original.intercept = current.intercept + centered.y_means - current.beta.transpose() * centered.x_means;
        if (!is_gaussian) original.intercept.array() -= original.intercept.mean();
        point.objective = objective(x, y, original, spec);
        point.coef = std::move(original);
        path.fits.push_back(std::move(point));
    }
    return path;
}

}  // namespace grpnet
