#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "grpnet/path.hpp"
#include "grpnet/types.hpp"

namespace grpnet::bench {

struct BenchConfig {
    Index n = 100;
    Index p = 1000;
    Index classes = 5;
    double rho = 0.0;
    int trials = 10;
    int n_lambda = 100;
    double lambda_min_ratio = 0.05;
    double alpha = 1.0;
    std::uint64_t seed = 1;
    /// Trials run concurrently when > 1; timings are then subject to contention.
    int jobs = 1;

    void validate() const;
};

/// One row of a timing table for the multinomial group-lasso path.
struct BenchReport {
    BenchConfig config;
    std::vector<double> seconds;  // per trial
    double mean_seconds = 0.0;
    double max_kkt_violation = 0.0;
    bool all_certified = true;
    bool all_converged = true;
    Index total_fits = 0;
};

/**
 * Times fit_path on fresh synthetic multinomial data for each trial
 * (seed + trial). Data generation is outside the timed region. Every
 * path point is checked against the KKT tolerance.
 */
BenchReport run_bench(const BenchConfig& config, const MultinomialFitConfig& solver = {});

void print_table(std::ostream& out, const std::vector<BenchReport>& reports);
void write_csv(std::ostream& out, const std::vector<BenchReport>& reports);

}  // namespace grpnet::bench
