#ifndef KMPP_CLUSTER_HPP
#define KMPP_CLUSTER_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "kmpp/centroids.hpp"
#include "kmpp/dataset.hpp"
#include "kmpp/exec.hpp"
#include "kmpp/layout.hpp"
#include "kmpp/reduce.hpp"
#include "kmpp/worker_pool.hpp"

namespace kmpp {

/// Labels plus the within-cluster sum of squared distances they induce.
struct AssignResult {
    std::vector<std::uint32_t> labels;
    double cost = 0.0;
};

namespace detail {

// Label one chunk: nearest centroid per point, ties to the lowest index.
// Returns the chunk's flat cost partial.
inline double assign_chunk(const double* pts, std::size_t dims, ChunkRange r,
                           const double* centroids, std::size_t k,
                           std::uint32_t* labels) {
    double partial = 0.0;
    for (std::size_t i = r.begin; i < r.end; ++i) {
        const double* p = pts + i * dims;
        double best = sqdist(p, centroids, dims);
        std::uint32_t best_c = 0;
        for (std::size_t c = 1; c < k; ++c) {
            const double d = sqdist(p, centroids + c * dims, dims);
            if (d < best) {
                best = d;
                best_c = static_cast<std::uint32_t>(c);
            }
        }
        labels[i] = best_c;
        partial += best;
    }
    return partial;
}

inline double assign_with(const Dataset& data, WorkerViews& views,
                          std::span<const ChunkRange> chunks, WorkerPool* pool,
                          std::vector<std::uint32_t>& labels) {
    const std::size_t k = views.centroid_count();
    const std::size_t dims = data.dims();
    const double* pts = views.points().data();
    labels.resize(data.size());
    std::vector<double> partials(chunks.size());
    if (pool && pool->workers() > 1) {
        pool->run(chunks.size(), [&](std::size_t worker, std::size_t c) {
            partials[c] = assign_chunk(pts, dims, chunks[c], views.centroids_for(worker), k,
                                       labels.data());
        });
    } else {
        for (std::size_t c = 0; c < chunks.size(); ++c) {
            partials[c] = assign_chunk(pts, dims, chunks[c], views.centroids_for(0), k,
                                       labels.data());
        }
    }
    return flat_sum(partials.data(), partials.size());
}

inline CentroidSet update_with(const Dataset& data, std::span<const std::uint32_t> labels,
                               std::size_t k, std::span<const ChunkRange> chunks,
                               WorkerPool* pool) {
    const std::size_t n = data.size();
    const std::size_t dims = data.dims();
    const double* pts = data.storage().data();

    // Per-chunk accumulators, combined in chunk order so the result is the
    // same for any worker count.
    std::vector<double> chunk_sums(chunks.size() * k * dims, 0.0);
    std::vector<std::uint64_t> chunk_counts(chunks.size() * k, 0);
    auto accumulate_chunk = [&](std::size_t, std::size_t c) {
        double* sums = chunk_sums.data() + c * k * dims;
        std::uint64_t* counts = chunk_counts.data() + c * k;
        const ChunkRange r = chunks[c];
        for (std::size_t i = r.begin; i < r.end; ++i) {
            const std::uint32_t label = labels[i];
            if (label >= k) throw std::invalid_argument("update_centroids: label out of range");
            ++counts[label];
            const double* p = pts + i * dims;
            double* s = sums + label * dims;
            for (std::size_t j = 0; j < dims; ++j) s[j] += p[j];
        }
    };
    if (pool && pool->workers() > 1) {
        pool->run(chunks.size(), accumulate_chunk);
    } else {
        for (std::size_t c = 0; c < chunks.size(); ++c) accumulate_chunk(0, c);
    }

    std::vector<double> sums(k * dims, 0.0);
    std::vector<std::uint64_t> counts(k, 0);
    for (std::size_t c = 0; c < chunks.size(); ++c) {
        const double* cs = chunk_sums.data() + c * k * dims;
        const std::uint64_t* cc = chunk_counts.data() + c * k;
        for (std::size_t j = 0; j < k * dims; ++j) sums[j] += cs[j];
        for (std::size_t j = 0; j < k; ++j) counts[j] += cc[j];
    }

    CentroidSet out(dims);
    out.reserve(k);
    std::vector<std::size_t> empties;
    std::vector<double> mean(dims);
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] > 0) {
            for (std::size_t j = 0; j < dims; ++j)
                mean[j] = sums[c * dims + j] / static_cast<double>(counts[c]);
            out.push_back(PointView(mean), CentroidSet::synthetic_index);
        } else {
            // Placeholder; reseeded below.
            for (std::size_t j = 0; j < dims; ++j) mean[j] = 0.0;
            out.push_back(PointView(mean), CentroidSet::synthetic_index);
            empties.push_back(c);
        }
    }

    if (!empties.empty()) {
        // Reseed each empty cluster to the point farthest from its own (new)
        // centroid; each pick is excluded from the following ones.
        std::vector<double> dist(n);
        for (std::size_t i = 0; i < n; ++i)
            dist[i] = sqdist(pts + i * dims, out.coords().data() + labels[i] * dims, dims);
        std::vector<unsigned char> taken(n, 0);
        CentroidSet reseeded(dims);
        reseeded.reserve(k);
        std::vector<std::size_t> reseed_source(k, CentroidSet::synthetic_index);
        for (std::size_t e : empties) {
            std::size_t far = n;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (!taken[i] && dist[i] > far_d) {
                    far_d = dist[i];
                    far = i;
                }
            }
            if (far == n)
                throw std::invalid_argument("update_centroids: more clusters than points");
            taken[far] = 1;
            reseed_source[e] = far;
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (reseed_source[c] != CentroidSet::synthetic_index)
                reseeded.push_back(data.point(reseed_source[c]), reseed_source[c]);
            else
                reseeded.push_back(out.centroid(c), CentroidSet::synthetic_index);
        }
        return reseeded;
    }
    return out;
}

} // namespace detail

/**
 * Nearest-centroid assignment: labels[i] = argmin_c d^2(point_i, centroid_c)
 * with ties broken by the lowest centroid index, cost = fixed-tree sum of
 * the per-point minima. Chunked across the pool; worker-count invariant.
 */
inline AssignResult assign(const Dataset& data, const CentroidSet& centroids,
                           const ExecConfig& cfg = {}) {
    cfg.validate();
    if (centroids.size() < 1) throw std::invalid_argument("assign: need at least one centroid");
    if (centroids.dims() != data.dims())
        throw std::invalid_argument("assign: centroid dimension mismatch");
    WorkerViews views(data, centroids, cfg.strategy, cfg.workers);
    WorkerPool pool(cfg.workers);
    const auto chunks = plan_chunks(data.size(), cfg.chunk_size);
    AssignResult result;
    result.cost = detail::assign_with(data, views, chunks, &pool, result.labels);
    return result;
}

/**
 * Mean step: centroid_c = mean of the points labeled c (per-chunk sums
 * combined in chunk order / count). An empty cluster is reseeded to the
 * point with the largest squared distance to its assigned centroid, each
 * such point used at most once per call. Mean centroids carry the synthetic
 * index; reseeded ones carry their source point index.
 */
inline CentroidSet update_centroids(const Dataset& data, std::span<const std::uint32_t> labels,
                                    std::size_t k, const ExecConfig& cfg = {}) {
    cfg.validate();
    if (k < 1) throw std::invalid_argument("update_centroids: k must be >= 1");
    if (labels.size() != data.size())
        throw std::invalid_argument("update_centroids: one label per point required");
    WorkerPool pool(cfg.workers);
    const auto chunks = plan_chunks(data.size(), cfg.chunk_size);
    return detail::update_with(data, labels, k, chunks, &pool);
}

/// Full clustering state after Lloyd iterations.
struct ClusteringResult {
    std::vector<std::uint32_t> labels;
    CentroidSet centroids;
    double cost = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> cost_history; // assignment cost per iteration, then final
};

/**
 * Lloyd's algorithm from the given initial centers: alternate assignment and
 * mean update until the largest squared centroid displacement is <= tol or
 * max_iter rounds have run. A closing assignment against the final centroids
 * makes the returned labels, cost, and centroids mutually consistent.
 * Deterministic for fixed inputs and worker-count invariant.
 */
inline ClusteringResult lloyd(const Dataset& data, const CentroidSet& init,
                              std::size_t max_iter, double tol, const ExecConfig& cfg = {}) {
    cfg.validate();
    if (init.size() < 1) throw std::invalid_argument("lloyd: need at least one initial center");
    if (init.dims() != data.dims())
        throw std::invalid_argument("lloyd: centroid dimension mismatch");
    if (max_iter < 1) throw std::invalid_argument("lloyd: max_iter must be >= 1");
    if (!(tol >= 0.0)) throw std::invalid_argument("lloyd: tol must be >= 0");

    const std::size_t k = init.size();
    WorkerViews views(data, init, cfg.strategy, cfg.workers, k);
    WorkerPool pool(cfg.workers);
    const auto chunks = plan_chunks(data.size(), cfg.chunk_size);

    ClusteringResult result{{}, init, 0.0, 0, false, {}};
    for (std::size_t it = 0; it < max_iter; ++it) {
        views.refresh_centroids(result.centroids);
        const double cost = detail::assign_with(data, views, chunks, &pool, result.labels);
        result.cost_history.push_back(cost);
        CentroidSet next = detail::update_with(data, result.labels, k, chunks, &pool);
        double max_disp = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            const double d = squared_distance(result.centroids.centroid(c), next.centroid(c));
            if (d > max_disp) max_disp = d;
        }
        result.centroids = std::move(next);
        result.iterations = it + 1;
        if (max_disp <= tol) {
            result.converged = true;
            break;
        }
    }

    views.refresh_centroids(result.centroids);
    result.cost = detail::assign_with(data, views, chunks, &pool, result.labels);
    result.cost_history.push_back(result.cost);
    return result;
}

} // namespace kmpp

#endif // KMPP_CLUSTER_HPP
