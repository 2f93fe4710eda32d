#ifndef KMPP_KMPP_HPP
#define KMPP_KMPP_HPP

// Umbrella header: data-parallel k-means++ seeding, deterministic
// reduction, Lloyd clustering, layout strategies, and the benchmark
// harness.

#include "kmpp/bench.hpp"
#include "kmpp/centroids.hpp"
#include "kmpp/cluster.hpp"
#include "kmpp/dataset.hpp"
#include "kmpp/errors.hpp"
#include "kmpp/exec.hpp"
#include "kmpp/io.hpp"
#include "kmpp/layout.hpp"
#include "kmpp/reduce.hpp"
#include "kmpp/rng.hpp"
#include "kmpp/seeding.hpp"
#include "kmpp/worker_pool.hpp"

#endif // KMPP_KMPP_HPP
