#include "grpnet/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "grpnet/multinomial.hpp"

namespace grpnet {

double Rng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal()
{
    if (spare_) {
        const double out = *spare_;
        spare_.reset();
        return out;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    return u * factor;
}

double SimulationSpec::effective_signal_sd() const
{
    return signal_sd.value_or(2.0 / static_cast<double>(classes));
}

void SimulationSpec::validate() const
{
    if (n < 1 || p < 1 || classes < 2) {
        throw std::invalid_argument("simulation needs n >= 1, p >= 1 and at least two classes");
    }
    if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in [0, 1)");
    if (signal_rows < 0) throw std::invalid_argument("signal_rows must be nonnegative");
    if (!(effective_signal_sd() >= 0.0)) throw std::invalid_argument("signal_sd must be nonnegative");
}

SyntheticData gen_synthetic(const SimulationSpec& spec)
{
    spec.validate();
    Rng rng(spec.seed);
    const Index n = spec.n;
    const Index p = spec.p;
    const Index m = spec.classes;

    Matrix beta = Matrix::Zero(p, m);
    const double sd = spec.effective_signal_sd();
    for (Index k = 0; k < std::min(spec.signal_rows, p); ++k) {
        for (Index j = 0; j < m; ++j) beta(k, j) = sd * rng.normal();
    }

    const double shared = std::sqrt(spec.rho);
    const double own = std::sqrt(1.0 - spec.rho);
    Matrix x(n, p);
    for (Index i = 0; i < n; ++i) {
        const double z = rng.normal();
        for (Index k = 0; k < p; ++k) x(i, k) = shared * z + own * rng.normal();
    }

    const Matrix eta = x * beta;
    Matrix yg = eta;
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < m; ++j) yg(i, j) += rng.normal();
    }

    const Matrix prob = softmax_rows(eta);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        const double u = rng.uniform();
        double cumulative = 0.0;
        int label = static_cast<int>(m);
        for (Index j = 0; j < m; ++j) {
            cumulative += prob(i, j);
            if (u < cumulative) {
                label = static_cast<int>(j) + 1;
                break;
            }
        }
        labels[static_cast<std::size_t>(i)] = label;
    }

    Matrix onehot = Matrix::Zero(n, m);
    for (Index i = 0; i < n; ++i) onehot(i, labels[static_cast<std::size_t>(i)] - 1) = 1.0;

    return SyntheticData{DesignMatrix(std::move(x)), std::move(beta), ResponseMatrix(std::move(yg), Family::Gaussian),
                         ResponseMatrix(std::move(onehot), Family::Multinomial), std::move(labels)};
}

}  // namespace grpnet
