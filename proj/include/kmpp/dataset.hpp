#ifndef KMPP_DATASET_HPP
#define KMPP_DATASET_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace kmpp {

/// Read-only view of one point's coordinates.
using PointView = std::span<const double>;

/**
 * Immutable, dense, row-major store of n points with `dims` coordinates each.
 *
 * All storage is fixed at construction; any view handed out stays valid and
 * read-only for the dataset's lifetime, so workers may read concurrently
 * without synchronization.
 */
class Dataset {
public:
    Dataset(std::vector<double> coords, std::size_t n, std::size_t dims)
        : coords_(std::move(coords)), n_(n), dims_(dims) {
        if (n_ < 1) throw std::invalid_argument("Dataset: need at least one point");
        if (dims_ < 1) throw std::invalid_argument("Dataset: need at least one dimension");
        if (coords_.size() != n_ * dims_)
            throw std::invalid_argument("Dataset: storage length must equal n * dims");
    }

    std::size_t size() const { return n_; }
    std::size_t dims() const { return dims_; }

    PointView point(std::size_t i) const {
        return PointView{coords_.data() + i * dims_, dims_};
    }

    /// Whole coordinate block, row-major.
    std::span<const double> storage() const { return coords_; }

private:
    std::vector<double> coords_;
    std::size_t n_;
    std::size_t dims_;
};

namespace detail {

// Unchecked hot-loop variant; callers validate dims once per pass.
inline double sqdist(const double* a, const double* b, std::size_t dims) {
    if (dims == 2) {
        const double d0 = a[0] - b[0];
        const double d1 = a[1] - b[1];
        return d0 * d0 + d1 * d1;
    }
    double s = 0.0;
    for (std::size_t j = 0; j < dims; ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return s;
}

} // namespace detail

/// Squared Euclidean distance. Symmetric, nonnegative, zero iff a == b.
inline double squared_distance(PointView a, PointView b) {
    if (a.size() != b.size())
        throw std::invalid_argument("squared_distance: dimension mismatch");
    return detail::sqdist(a.data(), b.data(), a.size());
}

} // namespace kmpp

#endif // KMPP_DATASET_HPP
