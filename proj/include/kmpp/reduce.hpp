#ifndef KMPP_REDUCE_HPP
#define KMPP_REDUCE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "kmpp/dataset.hpp"
#include "kmpp/exec.hpp"
#include "kmpp/worker_pool.hpp"

namespace kmpp {

/**
 * Shape of the deterministic reduction: blocks of `block_size` elements are
 * summed left-to-right, then the block partials are summed left-to-right.
 * The combine tree depends only on (input length, block_size) — never on
 * worker count or scheduling — so the result is a value, not an execution
 * accident, and serial and parallel runs agree bit for bit.
 */
struct ReductionPlan {
    std::size_t block_size = 1024;
};

namespace detail {

inline double flat_sum(const double* v, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
}

} // namespace detail

/**
 * Fixed-tree sum of `values`. Empty input returns 0.0 (the reduction's
 * initial value). Serial execution; see the pool overload for the parallel
 * path — both produce identical bits.
 */
inline double parallel_sum(std::span<const double> values, ReductionPlan plan = {}) {
    if (plan.block_size < 1) throw std::invalid_argument("ReductionPlan: block_size must be >= 1");
    const std::size_t n = values.size();
    if (n == 0) return 0.0;
    if (n <= plan.block_size) return detail::flat_sum(values.data(), n);
    double acc = 0.0;
    for (std::size_t b = 0; b < n; b += plan.block_size) {
        const std::size_t len = b + plan.block_size < n ? plan.block_size : n - b;
        acc += detail::flat_sum(values.data() + b, len);
    }
    return acc;
}

/// Fixed-tree sum computed by the pool: workers sum whole blocks, the
/// coordinator combines block partials in block order. Bit-identical to the
/// serial overload for any worker count.
inline double parallel_sum(std::span<const double> values, ReductionPlan plan, WorkerPool& pool) {
    if (plan.block_size < 1) throw std::invalid_argument("ReductionPlan: block_size must be >= 1");
    const std::size_t n = values.size();
    if (n == 0) return 0.0;
    if (n <= plan.block_size) return detail::flat_sum(values.data(), n);
    const std::size_t blocks = (n + plan.block_size - 1) / plan.block_size;
    std::vector<double> partials(blocks);
    const double* data = values.data();
    pool.run(blocks, [&](std::size_t, std::size_t b) {
        const std::size_t begin = b * plan.block_size;
        const std::size_t len = begin + plan.block_size < n ? plan.block_size : n - begin;
        partials[b] = detail::flat_sum(data + begin, len);
    });
    return detail::flat_sum(partials.data(), partials.size());
}

namespace detail {

// One chunk of the fused min-update + partial-sum pass. Returns the flat
// left-to-right sum of the chunk's updated entries; eval_count reports how
// many distance evaluations the chunk performed.
inline double min_update_chunk(double* dsq, const double* pts, std::size_t dims,
                               ChunkRange r, const double* center,
                               std::uint64_t* eval_count) {
    double partial = 0.0;
    std::uint64_t evals = 0;
    if (dims == 2) {
        const double cx = center[0];
        const double cy = center[1];
        const double* p = pts + r.begin * 2;
        for (std::size_t i = r.begin; i < r.end; ++i, p += 2) {
            const double dx = p[0] - cx;
            const double dy = p[1] - cy;
            const double d = dx * dx + dy * dy;
            ++evals;
            if (d < dsq[i]) dsq[i] = d;
            partial += dsq[i];
        }
    } else {
        for (std::size_t i = r.begin; i < r.end; ++i) {
            const double d = sqdist(pts + i * dims, center, dims);
            ++evals;
            if (d < dsq[i]) dsq[i] = d;
            partial += dsq[i];
        }
    }
    if (eval_count) *eval_count += evals;
    return partial;
}

// Fused pass over all chunks. center_for(worker) resolves the centroid
// coordinates each worker reads (layout strategies hand different workers
// different storage). Pool may be null for serial execution; results are
// bit-identical either way.
template <typename CenterFn>
std::vector<double> min_update_pass(std::span<double> dsq, const double* pts, std::size_t dims,
                                    std::span<const ChunkRange> chunks, CenterFn&& center_for,
                                    WorkerPool* pool,
                                    std::vector<std::uint64_t>* eval_counts) {
    std::vector<double> partials(chunks.size());
    if (eval_counts && eval_counts->size() != chunks.size())
        eval_counts->assign(chunks.size(), 0);
    double* d = dsq.data();
    if (pool && pool->workers() > 1) {
        pool->run(chunks.size(), [&](std::size_t worker, std::size_t c) {
            partials[c] = min_update_chunk(d, pts, dims, chunks[c], center_for(worker),
                                           eval_counts ? &(*eval_counts)[c] : nullptr);
        });
    } else {
        for (std::size_t c = 0; c < chunks.size(); ++c) {
            partials[c] = min_update_chunk(d, pts, dims, chunks[c], center_for(0),
                                           eval_counts ? &(*eval_counts)[c] : nullptr);
        }
    }
    return partials;
}

} // namespace detail

/**
 * Lower every entry to min(dsq[i], squared_distance(point_i, center)) and
 * return the per-chunk partial sums of the updated entries (flat
 * left-to-right within each chunk). Entries outside the chunk plan are
 * untouched; chunks must cover [0, n) for a full update.
 */
inline std::vector<double> parallel_min_update(std::span<double> dsq, const Dataset& data,
                                               PointView center,
                                               std::span<const ChunkRange> chunks) {
    if (center.size() != data.dims())
        throw std::invalid_argument("parallel_min_update: center dimension mismatch");
    if (dsq.size() != data.size())
        throw std::invalid_argument("parallel_min_update: table length must equal point count");
    const double* c = center.data();
    return detail::min_update_pass(dsq, data.storage().data(), data.dims(), chunks,
                                   [c](std::size_t) { return c; }, nullptr, nullptr);
}

/// Pool-executed overload; bit-identical to the serial one for any worker count.
inline std::vector<double> parallel_min_update(std::span<double> dsq, const Dataset& data,
                                               PointView center,
                                               std::span<const ChunkRange> chunks,
                                               WorkerPool& pool) {
    if (center.size() != data.dims())
        throw std::invalid_argument("parallel_min_update: center dimension mismatch");
    if (dsq.size() != data.size())
        throw std::invalid_argument("parallel_min_update: table length must equal point count");
    const double* c = center.data();
    return detail::min_update_pass(dsq, data.storage().data(), data.dims(), chunks,
                                   [c](std::size_t) { return c; }, &pool, nullptr);
}

} // namespace kmpp

#endif // KMPP_REDUCE_HPP
