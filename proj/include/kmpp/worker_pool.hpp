#ifndef KMPP_WORKER_POOL_HPP
#define KMPP_WORKER_POOL_HPP

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace kmpp {

/**
 * Persistent pool of workers for chunked passes.
 *
 * run(num_tasks, fn) calls fn(worker, task) once for every task index in
 * [0, num_tasks). Tasks are split into contiguous spans, one span per
 * worker, and the calling thread participates as worker 0 — a pool of W
 * workers spawns W-1 threads. The split is a pure function of
 * (num_tasks, workers), so which worker runs which task never depends on
 * scheduling; callers still must not let results depend on the assignment
 * (chunks write disjoint slices and partials are combined in chunk order).
 *
 * run() is not reentrant: fn must not call run() on the same pool.
 */
class WorkerPool {
public:
    explicit WorkerPool(std::size_t workers) : workers_(workers < 1 ? 1 : workers) {
        threads_.reserve(workers_ - 1);
        for (std::size_t w = 1; w < workers_; ++w) {
            threads_.emplace_back([this, w] { worker_loop(w); });
        }
    }

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    ~WorkerPool() {
        {
            std::lock_guard<std::mutex> lk(mutex_);
            stop_ = true;
        }
        start_cv_.notify_all();
        for (auto& t : threads_) t.join();
    }

    std::size_t workers() const { return workers_; }

    void run(std::size_t num_tasks, const std::function<void(std::size_t, std::size_t)>& fn) {
        if (num_tasks == 0) return;
        if (workers_ == 1 || num_tasks == 1) {
            for (std::size_t t = 0; t < num_tasks; ++t) fn(0, t);
            return;
        }
        {
            std::lock_guard<std::mutex> lk(mutex_);
            fn_ = &fn;
            num_tasks_ = num_tasks;
            pending_ = workers_ - 1;
            ++generation_;
        }
        start_cv_.notify_all();

        std::exception_ptr my_error;
        try {
            run_span(0);
        } catch (...) {
            my_error = std::current_exception();
        }

        std::unique_lock<std::mutex> lk(mutex_);
        done_cv_.wait(lk, [this] { return pending_ == 0; });
        fn_ = nullptr;
        std::exception_ptr err = my_error ? my_error : worker_error_;
        worker_error_ = nullptr;
        lk.unlock();
        if (err) std::rethrow_exception(err);
    }

private:
    // Contiguous split of [0, num_tasks_) among workers_.
    void run_span(std::size_t w) {
        const std::size_t per = num_tasks_ / workers_;
        const std::size_t rem = num_tasks_ % workers_;
        const std::size_t begin = w * per + (w < rem ? w : rem);
        const std::size_t end = begin + per + (w < rem ? 1 : 0);
        for (std::size_t t = begin; t < end; ++t) (*fn_)(w, t);
    }

    void worker_loop(std::size_t w) {
        std::uint64_t seen = 0;
        for (;;) {
            std::unique_lock<std::mutex> lk(mutex_);
            start_cv_.wait(lk, [this, seen] { return stop_ || generation_ != seen; });
            if (stop_) return;
            seen = generation_;
            lk.unlock();

            std::exception_ptr err;
            try {
                run_span(w);
            } catch (...) {
                err = std::current_exception();
            }

            lk.lock();
            if (err && !worker_error_) worker_error_ = err;
            if (--pending_ == 0) done_cv_.notify_one();
        }
    }

    std::size_t workers_;
    std::vector<std::thread> threads_;

    std::mutex mutex_;
    std::condition_variable start_cv_;
    std::condition_variable done_cv_;
    const std::function<void(std::size_t, std::size_t)>* fn_ = nullptr;
    std::size_t num_tasks_ = 0;
    std::size_t pending_ = 0;
    std::uint64_t generation_ = 0;
    std::exception_ptr worker_error_;
    bool stop_ = false;
};

} // namespace kmpp

#endif // KMPP_WORKER_POOL_HPP
