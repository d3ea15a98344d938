#include "mlpp/harness/config.hpp"

#include <fstream>

#include "mlpp/problems/factory.hpp"

namespace mlpp {

using nlohmann::json;

std::string SolverSpec::label() const {
    if (mlpp) return "mlpp";
    return baseline_level < 0 ? "baseline" : "baseline@" + std::to_string(baseline_level);
}

SolverSpec SolverSpec::parse(const std::string& text) {
    SolverSpec spec;
    if (text == "mlpp") return spec;
    spec.mlpp = false;
    if (text == "baseline") return spec;
    if (text.rfind("baseline@", 0) == 0) {
        try {
            spec.baseline_level = std::stoi(text.substr(9));
        } catch (const std::exception&) {
            throw ConfigError("bad baseline level in solver '" + text + "'");
        }
        if (spec.baseline_level < 0) throw ConfigError("baseline level must be >= 0");
        return spec;
    }
    throw ConfigError("unknown solver '" + text + "' (expected mlpp, baseline, baseline@<l>)");
}

Budget parse_budget(const json& j) {
    Budget b;
    if (j.is_number_integer()) {
        b.value = j.get<std::int64_t>();
    } else if (j.is_object()) {
        const std::string mode = j.value("mode", "episodes");
        if (mode == "episodes") {
            b.mode = Budget::Mode::episodes;
        } else if (mode == "wall_clock_ms") {
            b.mode = Budget::Mode::wall_clock_ms;
        } else {
            throw ConfigError("unknown budget mode '" + mode + "'");
        }
        if (!j.contains("value")) throw ConfigError("budget needs a 'value'");
        b.value = j.at("value").get<std::int64_t>();
    } else {
        throw ConfigError("budget must be an integer or {mode, value}");
    }
    if (b.value <= 0) throw ConfigError("budget must be positive");
    return b;
}

ExperimentConfig parse_config(const json& doc) {
    ExperimentConfig cfg;
    try {
        if (!doc.contains("scenario")) throw ConfigError("missing 'scenario' section");
        cfg.scenario = doc.at("scenario");
        if (!cfg.scenario.contains("name")) throw ConfigError("scenario needs a 'name'");
        cfg.scenario_name = cfg.scenario.at("name").get<std::string>();

        // Construct once so bad scenarios fail at validation time.
        try {
            (void)make_model(cfg.scenario);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }

        const json solver = doc.value("solver", json::object());
        cfg.solver = SolverSpec::parse(solver.value("type", std::string("mlpp")));
        const double c_default = default_exploration(cfg.scenario_name);
        cfg.solver_cfg.c0 = solver.value("c0", c_default);
        cfg.solver_cfg.c_corr = solver.value("c_corr", cfg.solver_cfg.c0);
        cfg.solver_cfg.particle_count = solver.value("particles", 2000);
        cfg.solver_cfg.pairs_per_iteration = solver.value("pairs_per_iteration", 1);
        if (cfg.solver_cfg.particle_count < 1) throw ConfigError("particles must be >= 1");
        if (cfg.solver_cfg.pairs_per_iteration < 0) {
            throw ConfigError("pairs_per_iteration must be >= 0");
        }

        const json study = doc.value("study", json::object());
        const std::string kind = study.value("kind", std::string("bench"));
        if (kind == "bench") {
            cfg.study = StudyKind::bench;
        } else if (kind == "variance") {
            cfg.study = StudyKind::variance;
        } else if (kind == "sweep") {
            cfg.study = StudyKind::sweep;
        } else {
            throw ConfigError("unknown study kind '" + kind + "'");
        }

        cfg.trials = study.value("trials", 1);
        if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
        cfg.seed = study.value("seed", 1ULL);
        cfg.out_path = study.value("out", std::string());
        cfg.max_trial_steps = study.value("max_trial_steps", -1);
        if (study.contains("budget")) cfg.solver_cfg.budget = parse_budget(study.at("budget"));

        if (cfg.study == StudyKind::sweep) {
            if (!study.contains("budgets") || study.at("budgets").empty()) {
                throw ConfigError("sweep needs a non-empty 'budgets' list");
            }
            for (const auto& b : study.at("budgets")) cfg.budgets.push_back(parse_budget(b));
            const auto solver_names =
                study.value("solvers", std::vector<std::string>{"mlpp"});
            if (solver_names.empty()) throw ConfigError("sweep needs at least one solver");
            for (const auto& name : solver_names) {
                cfg.solvers.push_back(SolverSpec::parse(name));
            }
        }

        if (study.contains("variance")) {
            const json& v = study.at("variance");
            cfg.variance.runs = v.value("runs", cfg.variance.runs);
            cfg.variance.samples_per_level =
                v.value("samples", cfg.variance.samples_per_level);
            if (cfg.variance.runs < 1) throw ConfigError("variance runs must be >= 1");
            if (cfg.variance.samples_per_level < 1) {
                throw ConfigError("variance samples must be >= 1");
            }
        }
        if (cfg.study == StudyKind::variance) {
            const auto model = make_model(cfg.scenario);
            if (model->level_count() < 2) {
                throw ConfigError("variance study needs a scenario with at least two levels");
            }
        }

        const int threads = doc.value("threads", 0);
        cfg.exec.threads = threads;
        cfg.exec.mode = doc.value("serial", false) ? Exec::seq : Exec::par;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

void apply_overrides(ExperimentConfig& cfg, const ConfigOverrides& ov) {
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.out_path) cfg.out_path = *ov.out_path;
    if (ov.trials) {
        if (*ov.trials < 1) throw ConfigError("trials must be >= 1");
        cfg.trials = *ov.trials;
    }
    if (ov.budget_value) {
        if (*ov.budget_value <= 0) throw ConfigError("budget must be positive");
        cfg.solver_cfg.budget.value = *ov.budget_value;
        for (auto& b : cfg.budgets) b.value = *ov.budget_value;
    }
    if (ov.threads) cfg.exec.threads = *ov.threads;
}

}  // namespace mlpp
