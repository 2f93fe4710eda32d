#ifndef KMPP_BENCH_HPP
#define KMPP_BENCH_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <map>
#include <new>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "kmpp/cluster.hpp"
#include "kmpp/dataset.hpp"
#include "kmpp/errors.hpp"
#include "kmpp/exec.hpp"
#include "kmpp/rng.hpp"
#include "kmpp/seeding.hpp"

namespace kmpp {

enum class SweepAxis { Clusters, Points };

inline std::string_view to_string(SweepAxis a) {
    return a == SweepAxis::Clusters ? "clusters" : "points";
}

inline SweepAxis parse_sweep(std::string_view name) {
    if (name == "clusters") return SweepAxis::Clusters;
    if (name == "points") return SweepAxis::Points;
    throw std::invalid_argument("unknown sweep axis: " + std::string(name));
}

/**
 * One benchmark sweep: vary cluster count at fixed point count, or vary
 * point count at fixed cluster count, across layout strategies and worker
 * counts. Cells run strictly sequentially so timings are uncontended.
 */
struct ScenarioSpec {
    SweepAxis sweep = SweepAxis::Clusters;
    std::size_t fixed_value = 0;           // N for a clusters sweep, K for a points sweep
    std::vector<std::size_t> axis_values;  // strictly increasing
    std::vector<LayoutStrategy> strategies = {LayoutStrategy::SharedMutable,
                                              LayoutStrategy::ReplicatedCentroids,
                                              LayoutStrategy::ReadOnlyArena};
    std::vector<std::size_t> worker_counts = {1, default_workers()};
    std::size_t trials = 3;
    std::uint64_t rng_seed = 0;
    bool run_lloyd = false;
    std::size_t lloyd_max_iter = 100;
    double lloyd_tol = 1e-8;
    std::size_t chunk_size = 1024;
    std::size_t gen_dims = 2;
    std::size_t gen_blobs = 8;
    double gen_spread = 2.0;

    void validate() const {
        if (fixed_value < 1) throw std::invalid_argument("ScenarioSpec: fixed value must be >= 1");
        if (axis_values.empty()) throw std::invalid_argument("ScenarioSpec: no axis values");
        for (std::size_t i = 1; i < axis_values.size(); ++i)
            if (axis_values[i] <= axis_values[i - 1])
                throw std::invalid_argument("ScenarioSpec: axis values must be strictly increasing");
        if (strategies.empty()) throw std::invalid_argument("ScenarioSpec: no strategies");
        if (worker_counts.empty()) throw std::invalid_argument("ScenarioSpec: no worker counts");
        if (trials < 1) throw std::invalid_argument("ScenarioSpec: trials must be >= 1");
        if (chunk_size < 1) throw std::invalid_argument("ScenarioSpec: chunk_size must be >= 1");
    }
};

/// Desk-scale default for the cluster-count sweep (one tenth of the full sizes).
inline ScenarioSpec desk_scale_clusters_sweep() {
    ScenarioSpec s;
    s.sweep = SweepAxis::Clusters;
    s.fixed_value = 400000;
    s.axis_values = {10, 25, 50, 75, 100};
    return s;
}

/// Desk-scale default for the point-count sweep (one tenth of the full sizes).
inline ScenarioSpec desk_scale_points_sweep() {
    ScenarioSpec s;
    s.sweep = SweepAxis::Points;
    s.fixed_value = 50;
    s.axis_values = {100000, 200000, 300000, 400000, 500000,
                     600000, 700000, 800000, 900000, 1000000};
    return s;
}

enum class Phase { Seeding, Clustering, Total };

inline std::string_view to_string(Phase p) {
    switch (p) {
        case Phase::Seeding: return "seeding";
        case Phase::Clustering: return "clustering";
        case Phase::Total: return "total";
    }
    return "?";
}

inline Phase parse_phase(std::string_view name) {
    if (name == "seeding") return Phase::Seeding;
    if (name == "clustering") return Phase::Clustering;
    if (name == "total") return Phase::Total;
    throw std::invalid_argument("unknown phase: " + std::string(name));
}

struct TimingRow {
    std::string scenario;
    std::size_t n_points = 0;
    std::size_t k = 0;
    LayoutStrategy strategy = LayoutStrategy::SharedMutable;
    std::size_t workers = 1;
    std::size_t chunk_size = 1024;
    Phase phase = Phase::Seeding;
    std::size_t trial = 0;
    double wall_ms = 0.0;

    bool operator==(const TimingRow&) const = default;
};

struct TimingReport {
    std::size_t cores = 0;
    std::string timestamp; // ISO-8601 UTC
    std::vector<TimingRow> rows;
};

namespace detail {

// One standard normal deviate from two uniform draws (Box-Muller, cosine
// branch only so the draw count per coordinate is fixed).
inline double normal_draw(RngStream& rng) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace detail

/**
 * Synthetic blob dataset: `blobs` centers drawn uniformly in [0,100)^dims,
 * points dealt round-robin to blobs (point i belongs to blob i % blobs) with
 * isotropic Gaussian noise of standard deviation `spread`. Deterministic in
 * the rng stream.
 */
inline Dataset generate_points(std::size_t n, std::size_t dims, std::size_t blobs,
                               double spread, RngStream& rng) {
    if (blobs < 1) throw std::invalid_argument("generate_points: blobs must be >= 1");
    if (n < blobs) throw std::invalid_argument("generate_points: need n >= blobs");
    if (dims < 1) throw std::invalid_argument("generate_points: dims must be >= 1");
    if (!(spread >= 0.0)) throw std::invalid_argument("generate_points: spread must be >= 0");

    std::vector<double> centers(blobs * dims);
    for (auto& c : centers) c = 100.0 * rng.uniform();

    std::vector<double> pts;
    try {
        pts.resize(n * dims);
    } catch (const std::bad_alloc&) {
        throw ResourceError("generate_points: cannot allocate " + std::to_string(n) +
                            " points x " + std::to_string(dims) + " dims");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double* c = centers.data() + (i % blobs) * dims;
        for (std::size_t j = 0; j < dims; ++j)
            pts[i * dims + j] = c[j] + spread * detail::normal_draw(rng);
    }
    return Dataset(std::move(pts), n, dims);
}

/**
 * Execute a sweep. For every axis value the dataset is regenerated from the
 * spec's seed; every (strategy, workers, trial) cell then runs seeding —
 * the serial path for the workers=1 SharedMutable baseline cell, the
 * parallel path otherwise — plus Lloyd when enabled. Each phase is timed
 * with a monotonic clock around the whole phase, view construction
 * included. Emits one row per phase per trial; the total row is always
 * present (equal to seeding when Lloyd is off).
 */
inline TimingReport run_scenario(const ScenarioSpec& spec) {
    spec.validate();
    TimingReport report;
    report.cores = default_workers();
    report.timestamp = detail::utc_timestamp();
    const std::string scenario_name{to_string(spec.sweep)};

    using clock = std::chrono::steady_clock;
    const auto ms_between = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
    };

    for (const std::size_t axis : spec.axis_values) {
        const std::size_t n = spec.sweep == SweepAxis::Points ? axis : spec.fixed_value;
        const std::size_t k = spec.sweep == SweepAxis::Clusters ? axis : spec.fixed_value;
        RngStream gen_rng(spec.rng_seed);
        const Dataset data = generate_points(n, spec.gen_dims, spec.gen_blobs,
                                             spec.gen_spread, gen_rng);

        for (const LayoutStrategy strategy : spec.strategies) {
            for (const std::size_t workers : spec.worker_counts) {
                for (std::size_t trial = 0; trial < spec.trials; ++trial) {
                    TimingRow base;
                    base.scenario = scenario_name;
                    base.n_points = n;
                    base.k = k;
                    base.strategy = strategy;
                    base.workers = workers;
                    base.chunk_size = spec.chunk_size;
                    base.trial = trial;

                    ExecConfig cfg;
                    cfg.chunk_size = spec.chunk_size;
                    cfg.workers = workers;
                    cfg.strategy = strategy;
                    cfg.rng_seed = spec.rng_seed;

                    RngStream seed_rng(spec.rng_seed);
                    const bool serial_baseline =
                        workers == 1 && strategy == LayoutStrategy::SharedMutable;

                    const auto t0 = clock::now();
                    const SeedingResult seeds =
                        serial_baseline ? seed_serial(data, k, seed_rng)
                                        : seed_parallel(data, k, seed_rng, cfg);
                    const auto t1 = clock::now();

                    TimingRow row = base;
                    row.phase = Phase::Seeding;
                    row.wall_ms = ms_between(t0, t1);
                    report.rows.push_back(row);
                    double total_ms = row.wall_ms;

                    if (spec.run_lloyd) {
                        const auto t2 = clock::now();
                        lloyd(data, seeds.centers, spec.lloyd_max_iter, spec.lloyd_tol, cfg);
                        const auto t3 = clock::now();
                        row.phase = Phase::Clustering;
                        row.wall_ms = ms_between(t2, t3);
                        report.rows.push_back(row);
                        total_ms += row.wall_ms;
                    }

                    row.phase = Phase::Total;
                    row.wall_ms = total_ms;
                    report.rows.push_back(row);
                }
            }
        }
    }
    return report;
}

/// Aggregated view of one report cell.
struct SummaryRow {
    std::string scenario;
    std::size_t n_points = 0;
    std::size_t k = 0;
    LayoutStrategy strategy = LayoutStrategy::SharedMutable;
    std::size_t workers = 1;
    std::size_t chunk_size = 1024;
    Phase phase = Phase::Seeding;
    std::size_t trials = 0;
    double mean_ms = 0.0;
    double min_ms = 0.0;
    double speedup = 1.0;                        // workers=1 shared baseline mean / cell mean
    std::optional<double> delta_vs_shared_pct;   // (shared mean - cell mean) / shared mean * 100
};

/**
 * Per-cell means and minima plus two comparisons: speedup against the
 * workers=1 SharedMutable baseline of the same (scenario, n, k, chunk,
 * phase), and the percent improvement over the SharedMutable cell at the
 * same worker count. Throws SummaryError when a cell lacks its baseline.
 */
inline std::vector<SummaryRow> summarize(const TimingReport& report) {
    using CellKey = std::tuple<std::string, std::size_t, std::size_t, std::size_t,
                               LayoutStrategy, std::size_t, Phase>;
    std::map<CellKey, std::vector<double>> cells;
    for (const TimingRow& r : report.rows) {
        cells[CellKey{r.scenario, r.n_points, r.k, r.chunk_size, r.strategy, r.workers,
                      r.phase}]
            .push_back(r.wall_ms);
    }

    const auto mean_of = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };

    std::vector<SummaryRow> out;
    out.reserve(cells.size());
    for (const auto& [key, samples] : cells) {
        const auto& [scenario, n, k, chunk, strategy, workers, phase] = key;
        SummaryRow row;
        row.scenario = scenario;
        row.n_points = n;
        row.k = k;
        row.chunk_size = chunk;
        row.strategy = strategy;
        row.workers = workers;
        row.phase = phase;
        row.trials = samples.size();
        row.mean_ms = mean_of(samples);
        row.min_ms = *std::min_element(samples.begin(), samples.end());

        const auto baseline = cells.find(CellKey{scenario, n, k, chunk,
                                                 LayoutStrategy::SharedMutable, 1, phase});
        if (baseline == cells.end()) {
            std::ostringstream msg;
            msg << "summarize: no workers=1 shared baseline for cell (scenario=" << scenario
                << ", n=" << n << ", k=" << k << ", chunk=" << chunk
                << ", phase=" << to_string(phase) << ")";
            throw SummaryError(msg.str());
        }
        row.speedup = mean_of(baseline->second) / row.mean_ms;

        const auto shared_cell = cells.find(CellKey{scenario, n, k, chunk,
                                                    LayoutStrategy::SharedMutable, workers,
                                                    phase});
        if (shared_cell != cells.end()) {
            const double shared_mean = mean_of(shared_cell->second);
            row.delta_vs_shared_pct = (shared_mean - row.mean_ms) / shared_mean * 100.0;
        }
        out.push_back(std::move(row));
    }
    return out;
}

/// Plain-text table of a summary, one line per cell.
inline std::string format_summary(const std::vector<SummaryRow>& rows) {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-10s %9s %5s %-10s %7s %6s %-10s %6s %12s %12s %8s %9s\n",
                  "scenario", "n_points", "k", "strategy", "workers", "chunk", "phase",
                  "trials", "mean_ms", "min_ms", "speedup", "vs_shared");
    os << line;
    for (const SummaryRow& r : rows) {
        char delta[16];
        if (r.delta_vs_shared_pct)
            std::snprintf(delta, sizeof delta, "%+.1f%%", *r.delta_vs_shared_pct);
        else
            std::snprintf(delta, sizeof delta, "-");
        std::snprintf(line, sizeof line,
                      "%-10s %9zu %5zu %-10s %7zu %6zu %-10s %6zu %12.3f %12.3f %8.2f %9s\n",
                      r.scenario.c_str(), r.n_points, r.k,
                      std::string(to_string(r.strategy)).c_str(), r.workers, r.chunk_size,
                      std::string(to_string(r.phase)).c_str(), r.trials, r.mean_ms, r.min_ms,
                      r.speedup, delta);
        os << line;
    }
    return os.str();
}

} // namespace kmpp

#endif // KMPP_BENCH_HPP
