#ifndef KMPP_EXEC_HPP
#define KMPP_EXEC_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace kmpp {

/**
 * Data-placement policy for the parallel passes. Strategies change where
 * points and centroids live (and therefore timing), never any output.
 *
 *  - SharedMutable:       one shared point store and one shared centroid
 *                         store, read in place by every worker.
 *  - ReplicatedCentroids: each worker reads centroids from a private copy,
 *                         refreshed once per round; the copy is capped at
 *                         64 KiB. Points stay shared.
 *  - ReadOnlyArena:       points are sealed into an immutable arena before
 *                         seeding starts and read from there; centroids
 *                         stay shared.
 */
enum class LayoutStrategy {
    SharedMutable,
    ReplicatedCentroids,
    ReadOnlyArena,
};

inline std::string_view to_string(LayoutStrategy s) {
    switch (s) {
        case LayoutStrategy::SharedMutable: return "shared";
        case LayoutStrategy::ReplicatedCentroids: return "replicated";
        case LayoutStrategy::ReadOnlyArena: return "arena";
    }
    return "?";
}

inline LayoutStrategy parse_strategy(std::string_view name) {
    if (name == "shared") return LayoutStrategy::SharedMutable;
    if (name == "replicated") return LayoutStrategy::ReplicatedCentroids;
    if (name == "arena") return LayoutStrategy::ReadOnlyArena;
    throw std::invalid_argument("unknown layout strategy: " + std::string(name));
}

/// Half-open index range [begin, end) processed by one worker pass.
struct ChunkRange {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const { return end - begin; }
    bool operator==(const ChunkRange&) const = default;
};

/**
 * Partition [0, n) into contiguous, disjoint ranges of `chunk_size` points
 * (the last one may be shorter). Count = ceil(n / chunk_size).
 */
inline std::vector<ChunkRange> plan_chunks(std::size_t n, std::size_t chunk_size) {
    if (n < 1) throw std::invalid_argument("plan_chunks: n must be >= 1");
    if (chunk_size < 1) throw std::invalid_argument("plan_chunks: chunk_size must be >= 1");
    const std::size_t count = (n + chunk_size - 1) / chunk_size;
    std::vector<ChunkRange> chunks;
    chunks.reserve(count);
    for (std::size_t c = 0; c < count; ++c) {
        const std::size_t b = c * chunk_size;
        const std::size_t e = b + chunk_size < n ? b + chunk_size : n;
        chunks.push_back(ChunkRange{b, e});
    }
    return chunks;
}

inline std::size_t default_workers() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? hc : 1;
}

/**
 * Execution knobs for the parallel paths. Outputs of every algorithm are a
 * function of the input and rng_seed only; chunk_size and workers change
 * execution, not results.
 */
struct ExecConfig {
    std::size_t chunk_size = 1024;
    std::size_t workers = default_workers();
    LayoutStrategy strategy = LayoutStrategy::SharedMutable;
    std::uint64_t rng_seed = 0;

    std::size_t num_chunks(std::size_t n) const {
        return (n + chunk_size - 1) / chunk_size;
    }

    void validate() const {
        if (chunk_size < 1) throw std::invalid_argument("ExecConfig: chunk_size must be >= 1");
        if (workers < 1) throw std::invalid_argument("ExecConfig: workers must be >= 1");
    }
};

} // namespace kmpp

#endif // KMPP_EXEC_HPP
