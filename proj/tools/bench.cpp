// Benchmark: OpenMP-sharded Monte Carlo engine vs the serial reference path.
// The two paths must produce identical estimates (fixed logical shard count
// and merge order); the benchmark reports their runtimes and the speedup.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "rfso/cli/config.hpp"
#include "rfso/system/monte_carlo.hpp"

using namespace rfso;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

} // namespace

int main(int argc, char** argv) {
    std::uint64_t trials = 4'000'000;
    if (argc > 1) trials = std::strtoull(argv[1], nullptr, 10);

    cli::RunConfig base = cli::parse_config("");
    base.scenario.iqi = {1.213, 1.213, 3.0 * M_PI / 180.0, 3.0 * M_PI / 180.0};
    base.scenario.rf.mean_snr = 100.0;
    base.scenario.fso.mu_rho = 100.0;
    base.scenario.fso.pointing.boresight = 0.3;

    system::McConfig cfg;
    cfg.trials = trials;
    cfg.seed = 1;

    std::printf("Monte Carlo engine benchmark, %llu trials\n",
                static_cast<unsigned long long>(trials));

    for (const char* metric : {"outage", "asr"}) {
        const bool outage = metric[0] == 'o';

        cfg.parallel = false;
        auto t0 = std::chrono::steady_clock::now();
        const auto serial = outage ? system::mc_outage(base.scenario, cfg)
                                   : system::mc_asr(base.scenario, cfg);
        auto t1 = std::chrono::steady_clock::now();

        cfg.parallel = true;
        auto t2 = std::chrono::steady_clock::now();
        const auto parallel = outage ? system::mc_outage(base.scenario, cfg)
                                     : system::mc_asr(base.scenario, cfg);
        auto t3 = std::chrono::steady_clock::now();

        const double ts = seconds(t0, t1), tp = seconds(t2, t3);
        std::printf("%-6s serial %.3fs  parallel %.3fs  speedup %.2fx  "
                    "value %.8g (se %.2g)  identical=%s\n",
                    metric, ts, tp, ts / tp, parallel.value,
                    parallel.stderr_,
                    (serial.value == parallel.value &&
                     serial.stderr_ == parallel.stderr_)
                        ? "yes"
                        : "NO");
        if (serial.value != parallel.value) {
            std::fprintf(stderr,
                         "error: serial and parallel paths disagree\n");
            return 1;
        }
    }
    return 0;
}
