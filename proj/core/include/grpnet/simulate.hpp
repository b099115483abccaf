#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "grpnet/types.hpp"

namespace grpnet {

/**
 * Pinned random source. The engine is std::mt19937_64, whose output
 * sequence is fixed by the standard; uniforms take the top 53 bits and
 * normals use the Marsaglia polar method, so draws do not depend on the
 * standard library's distribution implementations.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform();
    double normal();

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

struct SimulationSpec {
    Index n = 100;
    Index p = 1000;
    Index classes = 5;
    double rho = 0.0;
    std::uint64_t seed = 1;
    Index signal_rows = 3;
    /// Defaults to 2 / classes (variance 4 / classes^2).
    std::optional<double> signal_sd;

    double effective_signal_sd() const;
    void validate() const;
};

struct SyntheticData {
    DesignMatrix x;
    Matrix true_beta;
    ResponseMatrix y_gaussian;
    ResponseMatrix y_multinomial;
    std::vector<int> labels;  // 1-based
};

/**
 * Equicorrelated features x_ij = sqrt(rho) z_i + sqrt(1-rho) e_ij, true
 * coefficients iid N(0, sd^2) in the first signal_rows rows and zero
 * elsewhere. Gaussian responses add standard normal noise to X beta;
 * class labels are sampled from softmax(X beta).
 *
 * Draw order: true_beta row-major, then per observation z_i followed by
 * e_i1..e_ip, then Gaussian noise row-major, then one uniform per label.
 */
SyntheticData gen_synthetic(const SimulationSpec& spec);

}  // namespace grpnet
