#ifndef KMPP_LAYOUT_HPP
#define KMPP_LAYOUT_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kmpp/centroids.hpp"
#include "kmpp/dataset.hpp"
#include "kmpp/errors.hpp"
#include "kmpp/exec.hpp"

namespace kmpp {

/// Per-worker centroid replica budget in bytes (ReplicatedCentroids).
inline constexpr std::size_t replica_budget_bytes = 64 * 1024;

/**
 * Read handles the workers use during a parallel pass, built per the layout
 * strategy:
 *
 *  - SharedMutable:       points() aliases the dataset, every worker reads
 *                         centroids from the one shared set.
 *  - ReplicatedCentroids: points() aliases the dataset, each worker holds a
 *                         private centroid copy refreshed once per round.
 *                         The copy (capacity x dims x 8 bytes) must fit the
 *                         64 KiB budget; exceeding it is a CapacityError.
 *  - ReadOnlyArena:       points are copied once into an immutable arena at
 *                         construction and read from there; centroids are
 *                         shared. Point data is never copied per worker.
 *
 * Construction and refresh run on the coordinator between parallel passes;
 * their cost is part of the measured phase time, the same way transfers
 * were part of the timings the strategies model.
 */
class WorkerViews {
public:
    /**
     * @param data          points to read
     * @param centers       current centroids (may be empty before seeding)
     * @param strategy      placement policy
     * @param workers       worker count the views serve
     * @param capacity_hint largest centroid count the views must ever hold;
     *                      defaults to centers.size(). The replica budget is
     *                      checked against it up front so a run that would
     *                      blow the budget fails before doing any work.
     */
    WorkerViews(const Dataset& data, const CentroidSet& centers, LayoutStrategy strategy,
                std::size_t workers, std::size_t capacity_hint = 0)
        : strategy_(strategy),
          dims_(data.dims()),
          workers_(workers < 1 ? 1 : workers) {
        const std::size_t capacity =
            capacity_hint > centers.size() ? capacity_hint : centers.size();
        if (strategy_ == LayoutStrategy::ReplicatedCentroids) {
            const std::size_t bytes = capacity * dims_ * sizeof(double);
            if (bytes > replica_budget_bytes) {
                throw CapacityError(
                    "ReplicatedCentroids: centroid copy of " + std::to_string(bytes) +
                    " bytes per worker exceeds the 64 KiB budget (" +
                    std::to_string(replica_budget_bytes) + " bytes); " +
                    "reduce k or use the shared/arena strategy");
            }
            replicas_.resize(workers_);
            for (auto& r : replicas_) r.reserve(capacity * dims_);
        }
        if (strategy_ == LayoutStrategy::ReadOnlyArena) {
            const auto src = data.storage();
            arena_.assign(src.begin(), src.end());
            points_ = std::span<const double>(arena_);
        } else {
            points_ = data.storage();
        }
        refresh_centroids(centers);
    }

    LayoutStrategy strategy() const { return strategy_; }
    std::size_t workers() const { return workers_; }
    std::size_t centroid_count() const { return k_; }

    /// Point storage every worker reads (dataset or arena; never per-worker).
    std::span<const double> points() const { return points_; }

    /// Base of the k x dims centroid block worker `w` reads this pass.
    const double* centroids_for(std::size_t w) const {
        return strategy_ == LayoutStrategy::ReplicatedCentroids ? replicas_[w].data()
                                                                : shared_centroids_;
    }

    /// Snapshot the current centroid list into the views. Called once per
    /// round, before the parallel pass; workers never see a mid-round change.
    void refresh_centroids(const CentroidSet& centers) {
        k_ = centers.size();
        if (strategy_ == LayoutStrategy::ReplicatedCentroids) {
            const std::size_t bytes = k_ * dims_ * sizeof(double);
            if (bytes > replica_budget_bytes) {
                throw CapacityError(
                    "ReplicatedCentroids: centroid copy of " + std::to_string(bytes) +
                    " bytes per worker exceeds the 64 KiB budget (" +
                    std::to_string(replica_budget_bytes) + " bytes)");
            }
            const auto src = centers.coords();
            for (auto& r : replicas_) r.assign(src.begin(), src.end());
        } else {
            shared_centroids_ = centers.coords().data();
        }
    }

    /// Bytes of centroid copy each worker currently holds (0 unless replicated).
    std::size_t replica_bytes_per_worker() const {
        return strategy_ == LayoutStrategy::ReplicatedCentroids ? k_ * dims_ * sizeof(double)
                                                                : 0;
    }

private:
    LayoutStrategy strategy_;
    std::size_t dims_;
    std::size_t workers_;
    std::size_t k_ = 0;
    std::span<const double> points_;
    std::vector<double> arena_;                 // owned copy under ReadOnlyArena
    std::vector<std::vector<double>> replicas_; // per-worker copies, ReplicatedCentroids
    const double* shared_centroids_ = nullptr;
};

/// Convenience builder matching the strategy/placement rules above.
inline WorkerViews build_views(const Dataset& data, const CentroidSet& centers,
                               LayoutStrategy strategy, std::size_t workers,
                               std::size_t capacity_hint = 0) {
    return WorkerViews(data, centers, strategy, workers, capacity_hint);
}

} // namespace kmpp

#endif // KMPP_LAYOUT_HPP
