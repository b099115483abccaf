#include "grpnet/bench.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <iomanip>
#include <numeric>
#include <ostream>

#include "grpnet/simulate.hpp"

namespace grpnet::bench {
namespace {

struct TrialResult {
    double seconds = 0.0;
    double max_kkt = 0.0;
    bool converged = true;
    Index fits = 0;
};

// Classes absent from a draw make the null model undefined; redraw with a
// shifted seed until every class is present.
SyntheticData draw_trial(const BenchConfig& config, int trial)
{
    for (std::uint64_t attempt = 0;; ++attempt) {
        SimulationSpec spec;
        spec.n = config.n;
        spec.p = config.p;
        spec.classes = config.classes;
        spec.rho = config.rho;
        spec.seed = config.seed + static_cast<std::uint64_t>(trial) + attempt * 1'000'003ULL;
        SyntheticData data = gen_synthetic(spec);
        const Vector counts = data.y_multinomial.values().colwise().sum().transpose();
        if ((counts.array() > 0.0).all()) return data;
    }
}

TrialResult run_trial(const BenchConfig& config, const MultinomialFitConfig& solver, int trial)
{
    const SyntheticData data = draw_trial(config, trial);
    PathConfig path_config;
    path_config.family = Family::Multinomial;
    path_config.n_lambda = config.n_lambda;
    path_config.lambda_min_ratio = config.lambda_min_ratio;
    path_config.alpha = config.alpha;

    const auto start = std::chrono::steady_clock::now();
    const PathFit path = fit_path(data.x, data.y_multinomial, path_config, {}, solver);
    const auto stop = std::chrono::steady_clock::now();

    TrialResult result;
    result.seconds = std::chrono::duration<double>(stop - start).count();
    result.max_kkt = path.max_kkt_violation();
    result.converged = path.all_converged();
    result.fits = static_cast<Index>(path.fits.size());
    return result;
}

}  // namespace

void BenchConfig::validate() const
{
    if (n < 1 || p < 1 || classes < 2) throw std::invalid_argument("bench needs n, p >= 1 and classes >= 2");
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
    if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in [0, 1)");
}

BenchReport run_bench(const BenchConfig& config, const MultinomialFitConfig& solver)
{
    config.validate();
    std::vector<TrialResult> results(static_cast<std::size_t>(config.trials));
    if (config.jobs == 1) {
        for (int t = 0; t < config.trials; ++t) results[static_cast<std::size_t>(t)] = run_trial(config, solver, t);
    } else {
        for (int base = 0; base < config.trials; base += config.jobs) {
            std::vector<std::future<TrialResult>> pending;
            for (int t = base; t < std::min(config.trials, base + config.jobs); ++t) {
                pending.push_back(std::async(std::launch::async, run_trial, std::cref(config), std::cref(solver), t));
            }
            for (std::size_t i = 0; i < pending.size(); ++i) {
                results[static_cast<std::size_t>(base) + i] = pending[i].get();
            }
        }
    }

    BenchReport report;
    report.config = config;
    for (const auto& r : results) {
        report.seconds.push_back(r.seconds);
        report.max_kkt_violation = std::max(report.max_kkt_violation, r.max_kkt);
        report.all_converged = report.all_converged && r.converged;
        report.total_fits += r.fits;
    }
    report.all_certified = report.max_kkt_violation <= kKktTolerance;
    report.mean_seconds =
        std::accumulate(report.seconds.begin(), report.seconds.end(), 0.0) / static_cast<double>(report.seconds.size());
    return report;
}

void print_table(std::ostream& out, const std::vector<BenchReport>& reports)
{
    out << std::left << std::setw(8) << "n" << std::setw(8) << "p" << std::setw(6) << "M" << std::setw(7) << "rho"
        << std::setw(8) << "trials" << std::setw(9) << "nlambda" << std::right << std::setw(12) << "mean_sec"
        << std::setw(12) << "max_kkt" << std::setw(11) << "certified" << '\n';
    for (const auto& r : reports) {
        const auto& c = r.config;
        out << std::left << std::setw(8) << c.n << std::setw(8) << c.p << std::setw(6) << c.classes << std::setw(7)
            << c.rho << std::setw(8) << c.trials << std::setw(9) << c.n_lambda << std::right << std::fixed
            << std::setprecision(4) << std::setw(12) << r.mean_seconds << std::scientific << std::setprecision(2)
            << std::setw(12) << r.max_kkt_violation << std::setw(11) << (r.all_certified ? "yes" : "NO")
            << std::defaultfloat << '\n';
    }
}

void write_csv(std::ostream& out, const std::vector<BenchReport>& reports)
{
    out << "n,p,classes,rho,trials,n_lambda,mean_seconds,max_kkt_violation,all_certified,all_converged\n";
    out << std::setprecision(10);
    for (const auto& r : reports) {
        const auto& c = r.config;
        out << c.n << ',' << c.p << ',' << c.classes << ',' << c.rho << ',' << c.trials << ',' << c.n_lambda << ','
            << r.mean_seconds << ',' << r.max_kkt_violation << ',' << (r.all_certified ? 1 : 0) << ','
            << (r.all_converged ? 1 : 0) << '\n';
    }
}

}  // namespace grpnet::bench
