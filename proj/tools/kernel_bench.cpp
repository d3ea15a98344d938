// Compares the serial reference path of each data-parallel kernel against
// the OpenMP path and checks that they produce identical results.

#include <chrono>
#include <cstdio>
#include <vector>

#include "mlpp/belief.hpp"
#include "mlpp/harness/experiment.hpp"
#include "mlpp/problems/car_navigation.hpp"
#include "mlpp/problems/tiger.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct KernelTiming {
    const char* name;
    double serial_ms;
    double parallel_ms;
    bool identical;
};

KernelTiming bench_sir_update(int particles, int reps) {
    mlpp::CarNavModel model;
    mlpp::Rng rng(7);
    auto belief = mlpp::ParticleBelief::initial(model, static_cast<std::size_t>(particles), rng);
    const mlpp::NoiseDraw psi = mlpp::NoiseDraw::sample(model.noise_dim(), rng);
    const auto step = model.simulate(model.max_level(), model.config().start, 4, psi);

    const auto run = [&](mlpp::Exec mode) {
        mlpp::Rng update_rng(11);
        std::optional<mlpp::ParticleBelief> out;
        const auto t0 = Clock::now();
        for (int r = 0; r < reps; ++r) {
            mlpp::Rng local(update_rng.next_u64());
            out = mlpp::sir_update(belief, 4, step.obs, model, local, {1.0, {mode, 0}});
        }
        return std::pair{ms_since(t0), std::move(out)};
    };
    auto [serial_ms, serial_out] = run(mlpp::Exec::seq);
    auto [parallel_ms, parallel_out] = run(mlpp::Exec::par);
    const bool same = serial_out && parallel_out &&
                      serial_out->particles() == parallel_out->particles();
    return {"sir_update", serial_ms, parallel_ms, same};
}

KernelTiming bench_variance_batches(int samples) {
    nlohmann::json doc = {
        {"scenario", {{"name", "car-nav-lite"}}},
        {"study",
         {{"kind", "variance"},
          {"budget", 200},
          {"max_trial_steps", 2},
          {"variance", {{"runs", 1}, {"samples", samples}}}}},
    };
    auto cfg = mlpp::parse_config(doc);
    const auto run = [&](mlpp::Exec mode) {
        cfg.exec.mode = mode;
        const auto t0 = Clock::now();
        auto result = mlpp::run_variance_study(cfg);
        return std::pair{ms_since(t0), std::move(result)};
    };
    auto [serial_ms, serial_out] = run(mlpp::Exec::seq);
    auto [parallel_ms, parallel_out] = run(mlpp::Exec::par);
    bool same = serial_out.records.size() == parallel_out.records.size();
    for (std::size_t i = 0; same && i < serial_out.records.size(); ++i) {
        same = serial_out.records[i].var_q == parallel_out.records[i].var_q &&
               serial_out.records[i].var_diff == parallel_out.records[i].var_diff;
    }
    return {"variance_batches", serial_ms, parallel_ms, same};
}

KernelTiming bench_trial_pool(int trials) {
    nlohmann::json doc = {
        {"scenario", {{"name", "tiger"}}},
        {"study", {{"kind", "bench"}, {"trials", trials}, {"budget", 300}}},
    };
    auto cfg = mlpp::parse_config(doc);
    const auto run = [&](mlpp::Exec mode) {
        cfg.exec.mode = mode;
        const auto t0 = Clock::now();
        auto result = mlpp::run_benchmark(cfg);
        return std::pair{ms_since(t0), std::move(result)};
    };
    auto [serial_ms, serial_out] = run(mlpp::Exec::seq);
    auto [parallel_ms, parallel_out] = run(mlpp::Exec::par);
    bool same = serial_out.records.size() == parallel_out.records.size();
    for (std::size_t i = 0; same && i < serial_out.records.size(); ++i) {
        same = serial_out.records[i].result.discounted_return ==
               parallel_out.records[i].result.discounted_return;
    }
    return {"trial_pool", serial_ms, parallel_ms, same};
}

}  // namespace

int main() {
    std::printf("OpenMP: %s, max threads %d\n",
                mlpp::openmp_enabled() ? "enabled" : "disabled", mlpp::hardware_threads());
    std::printf("%-18s %12s %12s %9s %10s\n", "kernel", "serial ms", "parallel ms", "speedup",
                "identical");

    KernelTiming rows[] = {
        bench_sir_update(100000, 5),
        bench_variance_batches(4000),
        bench_trial_pool(12),
    };
    bool all_same = true;
    for (const auto& row : rows) {
        std::printf("%-18s %12.1f %12.1f %8.2fx %10s\n", row.name, row.serial_ms,
                    row.parallel_ms, row.serial_ms / row.parallel_ms,
                    row.identical ? "yes" : "NO");
        all_same = all_same && row.identical;
    }
    return all_same ? 0 : 1;
}
