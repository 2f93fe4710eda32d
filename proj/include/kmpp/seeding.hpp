#ifndef KMPP_SEEDING_HPP
#define KMPP_SEEDING_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "kmpp/centroids.hpp"
#include "kmpp/dataset.hpp"
#include "kmpp/errors.hpp"
#include "kmpp/exec.hpp"
#include "kmpp/layout.hpp"
#include "kmpp/reduce.hpp"
#include "kmpp/rng.hpp"
#include "kmpp/worker_pool.hpp"

namespace kmpp {

/// D^2 weights for one selection round: a view over the distance table plus
/// its fixed-tree total.
struct WeightVector {
    std::span<const double> weights;
    double total = 0.0;
};

/**
 * Inverse-CDF draw: the smallest index i whose running left-to-right prefix
 * sum exceeds u * total. Zero-weight entries can never be selected; if
 * rounding pushes the threshold past the final prefix, the last
 * positive-weight index is returned. Throws DegenerateWeightsError when
 * total is not positive (every remaining point coincides with a chosen
 * center) — callers fall back to a uniform draw.
 *
 * Serial and parallel seeding share this exact function, which is one half
 * of their bit-equivalence (the other half is the fixed-tree total).
 */
inline std::size_t sample_weighted(const WeightVector& w, double u) {
    if (!(u >= 0.0 && u < 1.0))
        throw std::invalid_argument("sample_weighted: u must lie in [0, 1)");
    if (!(w.total > 0.0))
        throw DegenerateWeightsError("sample_weighted: total weight is zero");
    const double threshold = u * w.total;
    const double* v = w.weights.data();
    const std::size_t n = w.weights.size();
    double prefix = 0.0;
    std::size_t last_positive = n; // sentinel: no positive weight seen yet
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] > 0.0) {
            prefix += v[i];
            if (prefix > threshold) return i;
            last_positive = i;
        }
    }
    if (last_positive == n)
        throw DegenerateWeightsError("sample_weighted: positive total but no positive weight");
    return last_positive;
}

/// Selection trace of one seeding run.
struct SeedingResult {
    CentroidSet centers;
    std::size_t rounds = 0;                     // selections made, == centers.size()
    std::vector<double> per_round_total_weight; // normalizer at rounds 2..k
    bool degenerate_fallback = false;           // a uniform fallback round fired
};

/// Per-chunk instrumentation for the parallel path.
struct SeedingStats {
    std::vector<std::uint64_t> chunk_evals; // distance evaluations per chunk
};

namespace detail {

// Uniform pick among indices not yet chosen; `chosen` has one byte per point.
inline std::size_t pick_unchosen(std::span<const unsigned char> chosen,
                                 std::size_t unchosen_count, double u) {
    std::size_t target = static_cast<std::size_t>(u * static_cast<double>(unchosen_count));
    if (target >= unchosen_count) target = unchosen_count - 1;
    std::size_t seen = 0;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        if (!chosen[i]) {
            if (seen == target) return i;
            ++seen;
        }
    }
    throw std::logic_error("pick_unchosen: fewer unchosen points than expected");
}

// Shared driver for both seeding paths. UpdatePass refreshes the distance
// table against the newest center and returns the fixed-tree total; all
// randomness is drawn here, on the coordinator, in a fixed order (one index
// draw, then one uniform per remaining round) — the parallel path matches
// the serial one draw for draw.
template <typename UpdatePass>
SeedingResult seed_loop(const Dataset& data, std::size_t k, RngStream& rng,
                        UpdatePass&& update_pass) {
    const std::size_t n = data.size();
    if (k < 1) throw std::invalid_argument("seeding: k must be >= 1");
    if (k > n) throw std::invalid_argument("seeding: k must not exceed the point count");

    SeedingResult result{CentroidSet(data.dims()), 0, {}, false};
    result.centers.reserve(k);
    result.per_round_total_weight.reserve(k > 0 ? k - 1 : 0);

    NearestDistanceTable table(n);
    std::vector<unsigned char> chosen(n, 0);

    const std::size_t first = rng.uniform_index(n);
    result.centers.push_back(data.point(first), first);
    chosen[first] = 1;

    for (std::size_t round = 1; round < k; ++round) {
        const double total = update_pass(result.centers, table);
        table.total = total;
        result.per_round_total_weight.push_back(total);

        const double u = rng.uniform();
        std::size_t idx;
        if (total > 0.0) {
            idx = sample_weighted(WeightVector{table.dsq, total}, u);
        } else {
            // Every remaining point duplicates a chosen center.
            idx = pick_unchosen(chosen, n - round, u);
            result.degenerate_fallback = true;
        }
        table.dsq[idx] = 0.0;
        chosen[idx] = 1;
        result.centers.push_back(data.point(idx), idx);
    }

    result.rounds = result.centers.size();
    return result;
}

} // namespace detail

/**
 * Serial k-means++ seeding: first center uniform, every later center drawn
 * with probability proportional to its squared distance to the nearest
 * already-chosen center. The table update each round is incremental — only
 * distances to the newest center are computed.
 */
inline SeedingResult seed_serial(const Dataset& data, std::size_t k, RngStream& rng) {
    const double* pts = data.storage().data();
    const std::size_t dims = data.dims();
    const ChunkRange whole{0, data.size()};
    return detail::seed_loop(data, k, rng, [&](const CentroidSet& centers,
                                               NearestDistanceTable& table) {
        const double* newest = centers.coords().data() + (centers.size() - 1) * dims;
        detail::min_update_chunk(table.dsq.data(), pts, dims, whole, newest, nullptr);
        return parallel_sum(table.dsq, ReductionPlan{});
    });
}

/**
 * Parallel k-means++ seeding. Points are partitioned into chunks; each round
 * the distance-update/partial-sum pass runs on the pool under the configured
 * layout strategy, the normalizer is the fixed-tree combine of the partials,
 * and the selection draw happens on the coordinator.
 *
 * Output is bit-identical to seed_serial for the same rng seed, for any
 * worker count, chunk size, and strategy: the update is elementwise, the
 * normalizer is always evaluated at the reduction plan's block size, and the
 * sampling step is the literal function the serial path uses.
 */
inline SeedingResult seed_parallel(const Dataset& data, std::size_t k, RngStream& rng,
                                   const ExecConfig& cfg, SeedingStats* stats = nullptr) {
    cfg.validate();
    const std::size_t n = data.size();
    if (k < 1) throw std::invalid_argument("seeding: k must be >= 1");
    if (k > n) throw std::invalid_argument("seeding: k must not exceed the point count");

    const auto chunks = plan_chunks(n, cfg.chunk_size);
    const ReductionPlan sum_plan{};
    const bool chunks_are_blocks = cfg.chunk_size == sum_plan.block_size;

    WorkerViews views(data, CentroidSet(data.dims()), cfg.strategy, cfg.workers, k);
    WorkerPool pool(cfg.workers);
    const double* pts = views.points().data();
    const std::size_t dims = data.dims();

    return detail::seed_loop(data, k, rng, [&](const CentroidSet& centers,
                                               NearestDistanceTable& table) {
        views.refresh_centroids(centers);
        const std::size_t newest = centers.size() - 1;
        auto center_for = [&](std::size_t worker) {
            return views.centroids_for(worker) + newest * dims;
        };
        const auto partials =
            detail::min_update_pass(std::span<double>(table.dsq), pts, dims, chunks,
                                    center_for, &pool, stats ? &stats->chunk_evals : nullptr);
        // The normalizer is defined at the reduction plan's block size so it
        // cannot depend on the chunk plan; when chunks coincide with blocks
        // (the default) the fused partials already are the block partials.
        if (chunks_are_blocks) return detail::flat_sum(partials.data(), partials.size());
        return parallel_sum(table.dsq, sum_plan, pool);
    });
}

/// Outcome of running one seeding problem under all three layout strategies.
struct EquivalenceAuditReport {
    std::array<std::vector<std::size_t>, 3> indices; // shared, replicated, arena
    bool passed = false;
};

/**
 * Run seed_parallel under SharedMutable, ReplicatedCentroids, and
 * ReadOnlyArena with the same seed and report whether the chosen center
 * indices are identical. Strategies may only change placement and timing, so
 * a mismatch is a layout bug; the audit reports it rather than throwing.
 * Intended for small instances (n <= 10^4).
 */
inline EquivalenceAuditReport strategy_equivalence_audit(const Dataset& data, std::size_t k,
                                                         std::uint64_t seed,
                                                         ExecConfig base_cfg = {}) {
    if (data.size() > 10000)
        throw std::invalid_argument("strategy_equivalence_audit: instance too large (n > 10^4)");
    constexpr std::array<LayoutStrategy, 3> strategies = {
        LayoutStrategy::SharedMutable,
        LayoutStrategy::ReplicatedCentroids,
        LayoutStrategy::ReadOnlyArena,
    };
    EquivalenceAuditReport report;
    for (std::size_t s = 0; s < strategies.size(); ++s) {
        ExecConfig cfg = base_cfg;
        cfg.strategy = strategies[s];
        RngStream rng(seed);
        const SeedingResult r = seed_parallel(data, k, rng, cfg);
        const auto idx = r.centers.indices();
        report.indices[s].assign(idx.begin(), idx.end());
    }
    report.passed = report.indices[0] == report.indices[1] &&
                    report.indices[0] == report.indices[2];
    return report;
}

} // namespace kmpp

#endif // KMPP_SEEDING_HPP
