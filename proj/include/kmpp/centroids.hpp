#ifndef KMPP_CENTROIDS_HPP
#define KMPP_CENTROIDS_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "kmpp/dataset.hpp"

namespace kmpp {

/**
 * Chosen centers plus the index of the source point each one came from.
 *
 * During seeding every centroid is a copy of a dataset point and `index(c)`
 * names that point; the indices are kept in a separate array so the seeding
 * loop can hand out coordinates without touching the dataset. Once Lloyd
 * updates produce synthetic means, their index becomes `synthetic_index`.
 */
class CentroidSet {
public:
    static constexpr std::size_t synthetic_index = std::numeric_limits<std::size_t>::max();

    explicit CentroidSet(std::size_t dims) : dims_(dims) {
        if (dims_ < 1) throw std::invalid_argument("CentroidSet: need at least one dimension");
    }

    std::size_t size() const { return indices_.size(); }
    std::size_t dims() const { return dims_; }
    bool empty() const { return indices_.empty(); }

    void reserve(std::size_t k) {
        coords_.reserve(k * dims_);
        indices_.reserve(k);
    }

    /// Append a centroid; `source_index` is the dataset index it copies
    /// (or synthetic_index for a computed mean).
    void push_back(PointView coords, std::size_t source_index) {
        if (coords.size() != dims_)
            throw std::invalid_argument("CentroidSet: coordinate dimension mismatch");
        coords_.insert(coords_.end(), coords.begin(), coords.end());
        indices_.push_back(source_index);
    }

    PointView centroid(std::size_t c) const {
        return PointView{coords_.data() + c * dims_, dims_};
    }

    std::size_t index(std::size_t c) const { return indices_[c]; }

    std::span<const double> coords() const { return coords_; }
    std::span<const std::size_t> indices() const { return indices_; }

private:
    std::vector<double> coords_;
    std::vector<std::size_t> indices_;
    std::size_t dims_;
};

/**
 * Per-point squared distance to the nearest chosen center.
 *
 * Starts at the +infinity sentinel (no center chosen yet); after the first
 * update pass every entry is finite and entries only decrease as more
 * centers are added. Entries at chosen-center indices are exactly zero.
 * `total` caches the fixed-tree reduction of `dsq` for the current round.
 */
struct NearestDistanceTable {
    std::vector<double> dsq;
    double total = std::numeric_limits<double>::infinity();

    explicit NearestDistanceTable(std::size_t n)
        : dsq(n, std::numeric_limits<double>::infinity()) {}
};

} // namespace kmpp

#endif // KMPP_CENTROIDS_HPP
