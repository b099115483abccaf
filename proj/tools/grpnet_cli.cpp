// grpnet: fit group-penalized multiresponse / multinomial paths and run timing benchmarks.
//
// Exit codes: 0 success, 2 input or usage error, 3 at least one lambda did not converge.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grpnet/bench.hpp"
#include "grpnet/io.hpp"
#include "grpnet/path.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNotConverged = 3;

struct FitArgs {
    std::string x_path;
    std::string y_path;
    std::string family = "gaussian";
    double alpha = 1.0;
    int n_lambda = 100;
    double lambda_min_ratio = 0.05;
    double tol = 1e-7;
    int max_iter = 0;
    bool no_screen = false;
    std::string out;
};

struct BenchArgs {
    std::vector<long> n{100};
    std::vector<long> p{1000};
    std::vector<long> classes{5};
    std::vector<double> rho{0.0};
    int trials = 10;
    int n_lambda = 100;
    std::uint64_t seed = 1;
    int jobs = 1;
    bool preset_shapes = false;
    std::string out;
};

int run_fit(const FitArgs& args)
{
    using namespace grpnet;
    const Family family = parse_family(args.family);
    const DesignMatrix x = io::read_design(args.x_path);
    const ResponseMatrix y = io::read_response(args.y_path, family);
    if (x.n_rows() != y.n_rows()) {
        throw io::InputError("X has " + std::to_string(x.n_rows()) + " rows but Y has " +
                             std::to_string(y.n_rows()));
    }

    PathConfig config;
    config.family = family;
    config.alpha = args.alpha;
    config.n_lambda = args.n_lambda;
    config.lambda_min_ratio = args.lambda_min_ratio;
    config.screening = !args.no_screen;

    GaussianFitConfig gaussian;
    gaussian.tol = args.tol;
    MultinomialFitConfig multinomial;
    multinomial.inner.tol = args.tol;
    if (args.max_iter > 0) {
        gaussian.max_cycles = args.max_iter;
        multinomial.max_outer = args.max_iter;
    }

    const PathFit path = fit_path(x, y, config, gaussian, multinomial);
    const std::string json = io::path_to_json(path);
    if (args.out.empty()) {
        std::cout << json << '\n';
    } else {
        std::ofstream out(args.out);
        if (!out) throw io::InputError("cannot write '" + args.out + "'");
        out << json << '\n';
    }

    if (!path.all_converged()) {
        std::cerr << "warning: some lambda values did not converge\n";
        return kExitNotConverged;
    }
    return 0;
}

std::vector<grpnet::bench::BenchConfig> bench_configs(const BenchArgs& args)
{
    grpnet::bench::BenchConfig base;
    base.trials = args.trials;
    base.n_lambda = args.n_lambda;
    base.seed = args.seed;
    base.jobs = args.jobs;

    struct Shape {
        long n, p, classes;
    };
    std::vector<Shape> shapes;
    if (args.preset_shapes) {
        shapes = {{50, 100, 5}, {100, 1000, 5}, {100, 5000, 10}, {200, 10000, 10}};
    } else {
        const std::size_t count = std::max({args.n.size(), args.p.size(), args.classes.size()});
        auto pick = [&](const std::vector<long>& v, std::size_t i) {
            if (v.size() != 1 && v.size() != count) {
                throw std::invalid_argument("--n, --p and --classes need equal lengths or a single value");
            }
            return v.size() == 1 ? v.front() : v[i];
        };
        for (std::size_t i = 0; i < count; ++i) shapes.push_back({pick(args.n, i), pick(args.p, i), pick(args.classes, i)});
    }

    std::vector<grpnet::bench::BenchConfig> configs;
    for (const auto& shape : shapes) {
        for (const double rho : args.rho) {
            auto c = base;
            c.n = shape.n;
            c.p = shape.p;
            c.classes = shape.classes;
            c.rho = rho;
            configs.push_back(c);
        }
    }
    return configs;
}

int run_bench(const BenchArgs& args)
{
    using namespace grpnet::bench;
    std::vector<BenchReport> reports;
    for (const auto& config : bench_configs(args)) {
        reports.push_back(grpnet::bench::run_bench(config));
        std::cerr << "done n=" << config.n << " p=" << config.p << " M=" << config.classes << " rho=" << config.rho
                  << " mean " << reports.back().mean_seconds << "s\n";
    }
    print_table(std::cout, reports);
    if (!args.out.empty()) {
        std::ofstream out(args.out);
        if (!out) throw grpnet::io::InputError("cannot write '" + args.out + "'");
        write_csv(out, reports);
    }
    for (const auto& r : reports) {
        if (!r.all_converged) return kExitNotConverged;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Group-penalized multiresponse and multinomial regression paths"};
    app.require_subcommand(1);

    FitArgs fit;
    auto* fit_cmd = app.add_subcommand("fit", "Fit a regularization path and write it as JSON");
    fit_cmd->add_option("--x", fit.x_path, "Design matrix CSV (n rows x p columns)")->required();
    fit_cmd->add_option("--y", fit.y_path, "Response CSV")->required();
    fit_cmd->add_option("--family", fit.family, "gaussian or multinomial")
        ->check(CLI::IsMember({"gaussian", "multinomial"}))
        ->capture_default_str();
    fit_cmd->add_option("--alpha", fit.alpha, "Elastic-net mixing weight in (0, 1]")->capture_default_str();
    fit_cmd->add_option("--nlambda", fit.n_lambda, "Number of lambda values")->capture_default_str();
    fit_cmd->add_option("--lambda-min-ratio", fit.lambda_min_ratio, "lambda_min / lambda_max")->capture_default_str();
    fit_cmd->add_option("--tol", fit.tol, "Relative convergence tolerance")->capture_default_str();
    fit_cmd->add_option("--max-iter", fit.max_iter, "Cap on descent cycles (gaussian) or outer steps (multinomial)");
    fit_cmd->add_flag("--no-screen", fit.no_screen, "Disable strong-rule screening");
    fit_cmd->add_option("--out", fit.out, "Output JSON file (default: stdout)");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Time multinomial paths on synthetic equicorrelated data");
    bench_cmd->add_option("--n", bench.n, "Observations (list allowed)")->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--p", bench.p, "Features (list allowed)")->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--classes", bench.classes, "Classes (list allowed)")->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--rho", bench.rho, "Feature equicorrelation (list allowed)")->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--trials", bench.trials, "Trials per configuration")->capture_default_str();
    bench_cmd->add_option("--nlambda", bench.n_lambda, "Number of lambda values")->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed, "Base seed")->capture_default_str();
    bench_cmd->add_option("--jobs", bench.jobs, "Trials run concurrently")->capture_default_str();
    bench_cmd->add_flag("--preset-shapes", bench.preset_shapes, "Run the shapes (50,100,5) (100,1000,5) (100,5000,10) (200,10000,10)");
    bench_cmd->add_option("--out", bench.out, "CSV report file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*fit_cmd) return run_fit(fit);
        return run_bench(bench);
    } catch (const grpnet::io::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
    }
    return kExitInput;
}
