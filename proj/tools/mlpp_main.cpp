#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mlpp/harness/experiment.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> trials;
    std::optional<std::int64_t> budget;
    std::optional<int> threads;
};

void add_common_options(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config_path, "experiment config file (JSON)")->required();
    sub->add_option("--seed", args.seed, "override the master seed");
    sub->add_option("--out", args.out, "override the CSV output path");
    sub->add_option("--trials", args.trials, "override the trial count");
    sub->add_option("--budget", args.budget, "override the budget value");
    sub->add_option("--threads", args.threads, "worker threads (0 = runtime default)");
}

mlpp::ExperimentConfig load_with_overrides(const CommonArgs& args) {
    auto cfg = mlpp::load_config(args.config_path);
    mlpp::ConfigOverrides ov;
    ov.seed = args.seed;
    ov.out_path = args.out;
    ov.trials = args.trials;
    ov.budget_value = args.budget;
    ov.threads = args.threads;
    mlpp::apply_overrides(cfg, ov);
    return cfg;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mlpp::ConfigError("cannot open output file '" + path + "'");
    return out;
}

int run_bench(const CommonArgs& args, const std::string& tree_dump) {
    auto cfg = load_with_overrides(args);
    if (!tree_dump.empty()) {
        std::ofstream dump(tree_dump, std::ios::binary);
        if (!dump) throw mlpp::ConfigError("cannot open tree dump file '" + tree_dump + "'");
        dump << mlpp::dump_first_plan_tree(cfg);
    }
    const auto result = mlpp::run_benchmark(cfg);
    if (!cfg.out_path.empty()) {
        auto out = open_output(cfg.out_path);
        mlpp::write_benchmark_csv(result, out);
    } else {
        mlpp::write_benchmark_csv(result, std::cout);
    }
    std::cout << cfg.solver.label() << " on " << cfg.scenario_name << ": mean return "
              << result.aggregate.mean_return << " (95% CI +/- " << result.aggregate.ci95_half
              << ", " << result.aggregate.trials << " trials)\n";
    return 0;
}

int run_variance(const CommonArgs& args) {
    auto cfg = load_with_overrides(args);
    const auto result = mlpp::run_variance_study(cfg);
    if (!cfg.out_path.empty()) {
        auto out = open_output(cfg.out_path);
        mlpp::write_variance_csv(result, out);
    } else {
        mlpp::write_variance_csv(result, std::cout);
    }
    for (const auto& agg : result.aggregate) {
        std::cout << "level " << agg.level;
        if (agg.has_q) std::cout << ": var[Q] " << agg.mean_var_q;
        if (agg.has_diff) std::cout << ", var[dQ] " << agg.mean_var_diff;
        std::cout << '\n';
    }
    return 0;
}

int run_sweep(const CommonArgs& args) {
    auto cfg = load_with_overrides(args);
    const auto rows = mlpp::run_budget_sweep(cfg);
    if (!cfg.out_path.empty()) {
        auto out = open_output(cfg.out_path);
        mlpp::write_sweep_csv(rows, out);
    } else {
        mlpp::write_sweep_csv(rows, std::cout);
    }
    for (const auto& row : rows) {
        std::cout << row.solver << " @ " << row.budget.value << ": mean return "
                  << row.aggregate.mean_return << " (95% CI +/- " << row.aggregate.ci95_half
                  << ")\n";
    }
    return 0;
}

int run_validate(const CommonArgs& args) {
    (void)load_with_overrides(args);
    std::cout << "config OK\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multilevel online POMDP planning experiments"};
    app.require_subcommand(1);

    CommonArgs bench_args, var_args, sweep_args, validate_args;
    std::string tree_dump;

    auto* bench = app.add_subcommand("bench", "run closed-loop trials, one CSV row per trial");
    add_common_options(bench, bench_args);
    bench->add_option("--tree-dump", tree_dump, "dump the first planning tree as JSON");

    auto* variance = app.add_subcommand("variance", "per-level value/difference variance study");
    add_common_options(variance, var_args);

    auto* sweep = app.add_subcommand("sweep", "benchmark across solvers and budgets");
    add_common_options(sweep, sweep_args);

    auto* validate = app.add_subcommand("validate-config", "parse and validate a config file");
    add_common_options(validate, validate_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (bench->parsed()) return run_bench(bench_args, tree_dump);
        if (variance->parsed()) return run_variance(var_args);
        if (sweep->parsed()) return run_sweep(sweep_args);
        if (validate->parsed()) return run_validate(validate_args);
    } catch (const mlpp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
