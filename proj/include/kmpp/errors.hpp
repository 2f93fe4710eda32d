#ifndef KMPP_ERRORS_HPP
#define KMPP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kmpp {

// Weighted draw requested while every weight is zero, i.e. all remaining
// points coincide with already-chosen centers. Callers of the seeding loop
// recover with a uniform fallback; direct users see this.
class DegenerateWeightsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A layout strategy cannot hold the requested data, e.g. the per-worker
// centroid replica exceeding its 64 KiB budget.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input too large for the machine (dataset allocation failed).
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// summarize() could not find the serial baseline cell it needs.
class SummaryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File reading/writing/parsing failure.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace kmpp

#endif // KMPP_ERRORS_HPP
