#include "mlpp/harness/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <ostream>

#include "mlpp/problems/factory.hpp"

namespace mlpp {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::uint64_t trial_seed(std::uint64_t master, int trial) {
    return mix_seed(master, 0x7452u, static_cast<std::uint64_t>(trial));
}

BenchAggregate aggregate_records(const std::vector<TrialRecord>& records) {
    BenchAggregate agg;
    agg.trials = static_cast<int>(records.size());
    if (records.empty()) return agg;
    double sum = 0.0, steps = 0.0, wall = 0.0;
    int goals = 0, collisions = 0, timeouts = 0;
    for (const auto& rec : records) {
        sum += rec.result.discounted_return;
        steps += rec.result.steps;
        wall += rec.result.wall_ms_per_step;
        switch (rec.result.outcome) {
            case Outcome::goal:
                ++goals;
                break;
            case Outcome::collision:
                ++collisions;
                break;
            case Outcome::timeout:
                ++timeouts;
                break;
            default:
                break;
        }
    }
    const double n = agg.trials;
    agg.mean_return = sum / n;
    double ss = 0.0;
    for (const auto& rec : records) {
        const double d = rec.result.discounted_return - agg.mean_return;
        ss += d * d;
    }
    const double sd = agg.trials > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    agg.stderr_mean = sd / std::sqrt(n);
    agg.ci95_half = 1.96 * agg.stderr_mean;
    agg.mean_steps = steps / n;
    agg.mean_wall_ms = wall / n;
    agg.goal_rate = goals / n;
    agg.collision_rate = collisions / n;
    agg.timeout_rate = timeouts / n;
    return agg;
}

BenchResult run_benchmark_with(const ExperimentConfig& cfg, const PomdpModel& model,
                               const SolverSpec& spec, const Budget& budget) {
    BenchResult out;
    out.records.resize(static_cast<std::size_t>(cfg.trials));
    parallel_for_dynamic(cfg.trials, cfg.exec, [&](std::int64_t t) {
        const std::uint64_t seed = trial_seed(cfg.seed, static_cast<int>(t));
        auto planner = make_planner(model, spec, cfg.solver_cfg, budget, seed);
        TrialRecord rec;
        rec.trial = static_cast<int>(t);
        rec.seed = seed;
        rec.result = run_trial(model, *planner, cfg.solver_cfg.particle_count, seed,
                               cfg.max_trial_steps, cfg.exec);
        out.records[static_cast<std::size_t>(t)] = std::move(rec);
    });
    out.aggregate = aggregate_records(out.records);
    return out;
}

/// Frozen-policy rollout: takes `first_action`, then follows the tree's
/// greedy action at each node reached (read-only; missing nodes or nodes
/// with no visited action end the episode with its tail value).
Episode sample_policy_episode(const SearchTree& tree, const PomdpModel& model, const State& s0,
                              int sim_level, int first_action, Rng& rng) {
    Episode e;
    e.level = sim_level;
    State s = s0;
    const HistoryNode* node = &tree.root();
    bool first = true;
    while (!model.is_terminal(s)) {
        int action;
        if (first) {
            action = first_action;
            first = false;
        } else {
            action = node ? best_action(*node) : -1;
        }
        if (action < 0) break;
        const NoiseDraw psi = NoiseDraw::sample(model.noise_dim(), rng);
        const StepResult sr = model.simulate(sim_level, s, action, psi);
        const ObsKey key = model.observation_key(sr.obs);
        e.steps.push_back({s, action, sr.obs, key, model.reward(s, action)});
        e.noise.push_back(psi);
        node = node ? node->find_child(action, key) : nullptr;
        s = sr.state;
    }
    e.final_state = s;
    e.terminal = model.is_terminal(s);
    e.tail_reward = model.tail_value(s);
    return e;
}

/// Replay without touching any tree (the variance study must not mutate it).
Episode replay_episode_free(const PomdpModel& model, const Episode& source, int sim_level) {
    Episode e;
    e.level = sim_level;
    State s = source.steps.empty() ? source.final_state : source.steps[0].state;
    for (std::size_t i = 0; i < source.length(); ++i) {
        const int action = source.steps[i].action;
        const StepResult sr = model.simulate(sim_level, s, action, source.noise[i]);
        e.steps.push_back({s, action, sr.obs, model.observation_key(sr.obs),
                           model.reward(s, action)});
        e.noise.push_back(source.noise[i]);
        s = sr.state;
        if (model.is_terminal(s)) break;
    }
    e.final_state = s;
    e.terminal = model.is_terminal(s);
    e.tail_reward = model.tail_value(s);
    return e;
}

double two_pass_variance(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        ss += d * d;
    }
    return ss / (n - 1.0);
}

}  // namespace

std::unique_ptr<Planner> make_planner(const PomdpModel& model, const SolverSpec& spec,
                                      const SolverConfig& solver_cfg, const Budget& budget,
                                      std::uint64_t seed) {
    if (spec.mlpp) {
        SolverConfig cfg = solver_cfg;
        cfg.budget = budget;
        cfg.seed = seed;
        return std::make_unique<MlppSolver>(model, cfg);
    }
    BaselineConfig cfg;
    cfg.level = spec.baseline_level;
    cfg.exploration = solver_cfg.c0;
    cfg.budget = budget;
    cfg.particle_count = solver_cfg.particle_count;
    cfg.seed = seed;
    return std::make_unique<SingleLevelSolver>(model, cfg);
}

BenchResult run_benchmark(const ExperimentConfig& cfg) {
    const auto model = make_model(cfg.scenario);
    return run_benchmark_with(cfg, *model, cfg.solver, cfg.solver_cfg.budget);
}

VarianceResult run_variance_study(const ExperimentConfig& cfg) {
    const auto model = make_model(cfg.scenario);
    const int levels = model->level_count();
    const int m = cfg.variance.samples_per_level;
    VarianceResult out;

    for (int run = 0; run < cfg.variance.runs; ++run) {
        const std::uint64_t seed = mix_seed(cfg.seed, 0x5643u, static_cast<std::uint64_t>(run));
        auto planner = make_planner(*model, cfg.solver, cfg.solver_cfg,
                                    cfg.solver_cfg.budget, seed);
        Rng world_rng(mix_seed(seed, 0x33));
        Rng belief_rng(mix_seed(seed, 0x44));
        State s = model->sample_initial_state(world_rng);
        auto belief = ParticleBelief::initial(
            *model, static_cast<std::size_t>(cfg.solver_cfg.particle_count), belief_rng);

        const int cap = cfg.max_trial_steps > 0 ? cfg.max_trial_steps : model->max_steps();
        for (int step = 0; step < cap && !model->is_terminal(s); ++step) {
            const int chosen = planner->plan(belief);
            const SearchTree& tree = planner->search_tree();
            const std::uint64_t measure_seed =
                mix_seed(seed, 0x77u, static_cast<std::uint64_t>(step));

            // Initial states for all measured episodes, drawn up front so the
            // per-index kernels stay order-independent.
            Rng draw_rng(mix_seed(measure_seed, 0x1));
            std::vector<State> starts(static_cast<std::size_t>(m));
            for (auto& st : starts) st = belief.sample(draw_rng);

            for (int level = 0; level < levels; ++level) {
                VarianceRecord rec;
                rec.run = run;
                rec.step = step;
                rec.level = level;
                if (m >= 2) {
                    std::vector<double> values(static_cast<std::size_t>(m));
                    parallel_for(m, cfg.exec, [&](std::int64_t i) {
                        Rng rng(mix_seed(measure_seed, 0x100u + static_cast<std::uint64_t>(level),
                                         static_cast<std::uint64_t>(i)));
                        const Episode e = sample_policy_episode(
                            tree, *model, starts[static_cast<std::size_t>(i)], level, chosen, rng);
                        values[static_cast<std::size_t>(i)] =
                            episode_value(e, 1, model->discount());
                    });
                    rec.has_var_q = true;
                    rec.var_q = two_pass_variance(values);

                    if (level >= 1) {
                        std::vector<double> diffs(static_cast<std::size_t>(m));
                        parallel_for(m, cfg.exec, [&](std::int64_t i) {
                            Rng rng(mix_seed(measure_seed,
                                             0x200u + static_cast<std::uint64_t>(level),
                                             static_cast<std::uint64_t>(i)));
                            const Episode fine = sample_policy_episode(
                                tree, *model, starts[static_cast<std::size_t>(i)], level, chosen,
                                rng);
                            const Episode coarse = replay_episode_free(*model, fine, level - 1);
                            diffs[static_cast<std::size_t>(i)] =
                                episode_value(fine, 1, model->discount()) -
                                episode_value(coarse, 1, model->discount());
                        });
                        rec.has_var_diff = true;
                        rec.var_diff = two_pass_variance(diffs);
                    }
                } else if (out.warnings++ == 0) {
                    std::cerr << "warning: variance undefined with a single sample per level; "
                                 "emitting missing values\n";
                }
                out.records.push_back(rec);
            }

            // Execute the frozen policy's action and move on.
            const NoiseDraw psi = NoiseDraw::sample(model->noise_dim(), world_rng);
            const StepResult sr = model->simulate(model->max_level(), s, chosen, psi);
            s = sr.state;
            if (model->is_terminal(s)) break;
            belief = update_belief(belief, chosen, sr.obs, *model, belief_rng, cfg.exec);
            planner->advance(chosen, model->observation_key(sr.obs));
        }
    }

    // Per-level means across runs and steps.
    for (int level = 0; level < levels; ++level) {
        VarianceLevelAggregate agg;
        agg.level = level;
        double sum_q = 0.0, sum_d = 0.0;
        int n_q = 0, n_d = 0;
        for (const auto& rec : out.records) {
            if (rec.level != level) continue;
            if (rec.has_var_q) {
                sum_q += rec.var_q;
                ++n_q;
            }
            if (rec.has_var_diff) {
                sum_d += rec.var_diff;
                ++n_d;
            }
        }
        if (n_q > 0) {
            agg.has_q = true;
            agg.mean_var_q = sum_q / n_q;
        }
        if (n_d > 0) {
            agg.has_diff = true;
            agg.mean_var_diff = sum_d / n_d;
        }
        out.aggregate.push_back(agg);
    }
    return out;
}

std::vector<SweepRow> run_budget_sweep(const ExperimentConfig& cfg) {
    const auto model = make_model(cfg.scenario);
    std::vector<SweepRow> rows;
    for (const auto& spec : cfg.solvers) {
        for (const auto& budget : cfg.budgets) {
            SweepRow row;
            row.solver = spec.label();
            row.budget = budget;
            row.aggregate = run_benchmark_with(cfg, *model, spec, budget).aggregate;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_benchmark_csv(const BenchResult& result, std::ostream& out) {
    out << "trial,seed,discounted_return,steps,outcome,wall_ms_per_step,fallbacks,"
           "episodes_per_level\n";
    for (const auto& rec : result.records) {
        out << rec.trial << ',' << rec.seed << ',' << fmt(rec.result.discounted_return) << ','
            << rec.result.steps << ',' << outcome_name(rec.result.outcome) << ','
            << fmt(rec.result.wall_ms_per_step) << ',' << rec.result.fallback_count << ',';
        for (std::size_t l = 0; l < rec.result.episodes_per_level.size(); ++l) {
            if (l) out << ';';
            out << rec.result.episodes_per_level[l];
        }
        out << '\n';
    }
}

void write_variance_csv(const VarianceResult& result, std::ostream& out) {
    out << "record,run,step,level,var_q,var_diff\n";
    for (const auto& rec : result.records) {
        out << "step," << rec.run << ',' << rec.step << ',' << rec.level << ',';
        if (rec.has_var_q) out << fmt(rec.var_q);
        out << ',';
        if (rec.has_var_diff) out << fmt(rec.var_diff);
        out << '\n';
    }
    for (const auto& agg : result.aggregate) {
        out << "aggregate,,," << agg.level << ',';
        if (agg.has_q) out << fmt(agg.mean_var_q);
        out << ',';
        if (agg.has_diff) out << fmt(agg.mean_var_diff);
        out << '\n';
    }
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "solver,budget_mode,budget_value,trials,mean_return,stderr,ci95_half,mean_steps,"
           "mean_wall_ms_per_step,goal_rate,collision_rate,timeout_rate\n";
    for (const auto& row : rows) {
        out << row.solver << ','
            << (row.budget.mode == Budget::Mode::episodes ? "episodes" : "wall_clock_ms") << ','
            << row.budget.value << ',' << row.aggregate.trials << ','
            << fmt(row.aggregate.mean_return) << ',' << fmt(row.aggregate.stderr_mean) << ','
            << fmt(row.aggregate.ci95_half) << ',' << fmt(row.aggregate.mean_steps) << ','
            << fmt(row.aggregate.mean_wall_ms) << ',' << fmt(row.aggregate.goal_rate) << ','
            << fmt(row.aggregate.collision_rate) << ',' << fmt(row.aggregate.timeout_rate)
            << '\n';
    }
}

std::string dump_first_plan_tree(const ExperimentConfig& cfg, int max_depth) {
    const auto model = make_model(cfg.scenario);
    const std::uint64_t seed = trial_seed(cfg.seed, 0);
    auto planner = make_planner(*model, cfg.solver, cfg.solver_cfg, cfg.solver_cfg.budget, seed);
    Rng belief_rng(mix_seed(seed, 0x44));
    const auto belief = ParticleBelief::initial(
        *model, static_cast<std::size_t>(cfg.solver_cfg.particle_count), belief_rng);
    planner->plan(belief);
    return tree_to_json(planner->search_tree(), max_depth);
}

}  // namespace mlpp
