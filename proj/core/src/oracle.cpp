#include "grpnet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>

#include "grpnet/objective.hpp"

namespace grpnet::oracle {
namespace {

// Design with a leading column of ones when the intercept is fitted.
Matrix augmented_design(const DesignMatrix& x, bool fit_intercept)
{
    if (!fit_intercept) return x.values();
    Matrix a(x.n_rows(), x.n_cols() + 1);
    a.col(0).setOnes();
    a.rightCols(x.n_cols()) = x.values();
    return a;
}

double largest_eigenvalue(const Matrix& a)
{
    const Matrix gram = a.transpose() * a;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
}

CoefficientMatrix unpack(const Matrix& w, bool fit_intercept)
{
    const Index offset = fit_intercept ? 1 : 0;
    CoefficientMatrix coef(w.bottomRows(w.rows() - offset), Vector::Zero(w.cols()));
    if (fit_intercept) coef.intercept = w.row(0).transpose();
    return coef;
}

using GradientFn = std::function<Matrix(const Matrix& w)>;
using ObjectiveFn = std::function<double(const Matrix& w)>;

OracleResult proximal_descent(const Matrix& w0, double step, bool fit_intercept, const PenaltySpec& spec,
                              const OracleConfig& config, const GradientFn& gradient, const ObjectiveFn& value)
{
    const Index offset = fit_intercept ? 1 : 0;
    Matrix w = w0;
    double current = value(w);
    OracleResult out;
    if (config.record_trace) out.trace.push_back(current);

    double scale = 0.0;
    {
        const Matrix g0 = gradient(w);
        for (Index r = offset; r < g0.rows(); ++r) scale = std::max(scale, g0.row(r).norm());
        if (!(scale > 0.0)) scale = 1.0;
    }

    Matrix trial(w.rows(), w.cols());
    while (out.iterations < config.max_iter) {
        ++out.iterations;
        const Matrix g = gradient(w);
        trial = w - step * g;
        for (Index r = offset; r < trial.rows(); ++r) {
            trial.row(r) = prox_group_row(trial.row(r).transpose(), step * spec.group_weight(),
                                          step * spec.ridge_weight())
                               .transpose();
        }
        const double next = value(trial);
        if (next > current) {
            step *= 0.5;
            if (step < 1e-300) break;
            continue;
        }
        const double drop = current - next;
        const double mapping = (w - trial).cwiseAbs().maxCoeff() / step;
        w.swap(trial);
        current = next;
        if (config.record_trace) out.trace.push_back(current);
        if (drop <= config.tol * std::max(1.0, std::abs(current)) && mapping <= config.grad_tol * scale) {
            out.converged = true;
            break;
        }
    }
    out.coef = unpack(w, fit_intercept);
    out.objective = current;
    out.step = step;
    return out;
}

}  // namespace

void OracleConfig::validate() const
{
    if (max_iter < 1) throw std::invalid_argument("oracle max_iter must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("oracle tol must be positive");
    if (!(grad_tol > 0.0)) throw std::invalid_argument("oracle grad_tol must be positive");
}

Vector prox_group_row(const Eigen::Ref<const Vector>& v, double threshold, double ridge)
{
    if (threshold < 0.0 || ridge < 0.0) throw std::invalid_argument("prox parameters must be nonnegative");
    const double norm = v.norm();
    if (norm <= threshold) return Vector::Zero(v.size());
    return ((1.0 - threshold / norm) / (1.0 + ridge)) * v;
}

OracleResult oracle_fit_gaussian(const DesignMatrix& x, const ResponseMatrix& y, const PenaltySpec& spec,
                                 const OracleConfig& config)
{
    config.validate();
    if (x.n_rows() != y.n_rows()) throw DimensionError("X and Y have different numbers of rows");
    const Matrix a = augmented_design(x, config.fit_intercept);
    const Matrix& yv = y.values();
    const double lipschitz = largest_eigenvalue(a);
    const double step = lipschitz > 0.0 ? 1.0 / lipschitz : 1.0;

    const GradientFn gradient = [&](const Matrix& w) -> Matrix { return a.transpose() * (a * w - yv); };
    const ObjectiveFn value = [&](const Matrix& w) {
        return objective_gaussian(x, y, unpack(w, config.fit_intercept), spec);
    };
    const Matrix w0 = Matrix::Zero(a.cols(), yv.cols());
    return proximal_descent(w0, step, config.fit_intercept, spec, config, gradient, value);
}

OracleResult oracle_fit_multinomial(const DesignMatrix& x, const ResponseMatrix& y, const PenaltySpec& spec,
                                    const OracleConfig& config)
{
    config.validate();
    if (y.family() != Family::Multinomial) throw std::invalid_argument("oracle multinomial fit needs one-hot Y");
    if (x.n_rows() != y.n_rows()) throw DimensionError("X and Y have different numbers of rows");
    const Matrix a = augmented_design(x, config.fit_intercept);
    const Matrix& yv = y.values();
    // -H_i <= I/2 for every observation, so the loss gradient is ||A||^2/2 Lipschitz
    const double spectral_sq = largest_eigenvalue(a);
    const double step = spectral_sq > 0.0 ? 2.0 / spectral_sq : 1.0;

    const GradientFn gradient = [&](const Matrix& w) -> Matrix {
        Matrix eta = a * w;
        for (Index i = 0; i < eta.rows(); ++i) {
            const double top = eta.row(i).maxCoeff();
            eta.row(i) = (eta.row(i).array() - top).exp().matrix();
            eta.row(i) /= eta.row(i).sum();
        }
        return a.transpose() * (eta - yv);
    };
    const ObjectiveFn value = [&](const Matrix& w) {
        return objective_multinomial(x, y, unpack(w, config.fit_intercept), spec);
    };
    const Matrix w0 = Matrix::Zero(a.cols(), yv.cols());
    OracleResult out = proximal_descent(w0, step, config.fit_intercept, spec, config, gradient, value);
    out.coef.intercept.array() -= out.coef.intercept.mean();
    return out;
}

}  // namespace grpnet::oracle
