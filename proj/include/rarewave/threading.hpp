#pragma once

// Persistent worker pool for slab-parallel stencil sweeps plus a fixed-slab
// deterministic sum. Reductions are partitioned into a slab count that does
// not depend on the number of workers: each slab is summed sequentially by
// whichever thread picks it up, and the slab partials are combined pairwise
// in slab order on one thread. Results are bit-identical for any worker count.

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "rarewave/core.hpp"

namespace rarewave {

class ThreadPool {
  public:
    explicit ThreadPool(unsigned n_threads = 0) {
        if (n_threads == 0) {
            n_threads = std::thread::hardware_concurrency();
            if (n_threads == 0) n_threads = 1;
        }
        n_workers_ = n_threads;
        for (unsigned t = 1; t < n_threads; ++t)
            workers_.emplace_back([this, t] { worker_loop(t); });
    }

    ~ThreadPool() {
        {
            std::unique_lock lk(mu_);
            stop_ = true;
            ++epoch_;
        }
        cv_.notify_all();
        for (auto& w : workers_) w.join();
    }

    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

    unsigned size() const { return n_workers_; }

    // Runs fn(begin, end) over [0, n) split into chunks claimed dynamically.
    // fn must only write disjoint state per index range.
    void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
        if (n == 0) return;
        if (n_workers_ == 1 || n < 2) {
            fn(0, n);
            return;
        }
        const std::size_t chunks = std::min<std::size_t>(n, 4 * n_workers_);
        {
            std::unique_lock lk(mu_);
            job_ = &fn;
            job_n_ = n;
            job_chunks_ = chunks;
            next_chunk_.store(0, std::memory_order_relaxed);
            pending_ = static_cast<int>(n_workers_);
            ++epoch_;
        }
        cv_.notify_all();
        run_chunks(fn, n, chunks);
        finish_one();
        std::unique_lock lk(mu_);
        done_cv_.wait(lk, [this] { return pending_ == 0; });
        job_ = nullptr;
    }

    // Deterministic sum of term(i) for i in [0, n): fixed 256-slab partition.
    double reduce_sum(std::size_t n, const std::function<double(std::size_t)>& term) {
        if (n == 0) return 0.0;
        const std::size_t nslabs = (n < 256) ? 1 : 256;
        std::vector<double> partial(nslabs, 0.0);
        parallel_for(nslabs, [&](std::size_t s0, std::size_t s1) {
            for (std::size_t s = s0; s < s1; ++s) {
                const std::size_t lo = n * s / nslabs, hi = n * (s + 1) / nslabs;
                double acc = 0.0;
                for (std::size_t i = lo; i < hi; ++i) acc += term(i);
                partial[s] = acc;
            }
        });
        return pairwise_sum(partial);
    }

  private:
    void worker_loop(unsigned /*id*/) {
        std::uint64_t seen = 0;
        for (;;) {
            const std::function<void(std::size_t, std::size_t)>* job;
            std::size_t n, chunks;
            {
                std::unique_lock lk(mu_);
                cv_.wait(lk, [&] { return epoch_ != seen; });
                seen = epoch_;
                if (stop_) return;
                job = job_;
                n = job_n_;
                chunks = job_chunks_;
            }
            if (job) run_chunks(*job, n, chunks);
            finish_one();
        }
    }

    void run_chunks(const std::function<void(std::size_t, std::size_t)>& fn, std::size_t n,
                    std::size_t chunks) {
        for (;;) {
            const std::size_t c = next_chunk_.fetch_add(1, std::memory_order_relaxed);
            if (c >= chunks) break;
            const std::size_t lo = n * c / chunks, hi = n * (c + 1) / chunks;
            if (lo < hi) fn(lo, hi);
        }
    }

    void finish_one() {
        std::unique_lock lk(mu_);
        if (--pending_ == 0) done_cv_.notify_all();
    }

    std::vector<std::thread> workers_;
    unsigned n_workers_ = 1;
    std::mutex mu_;
    std::condition_variable cv_, done_cv_;
    std::uint64_t epoch_ = 0;
    bool stop_ = false;
    const std::function<void(std::size_t, std::size_t)>* job_ = nullptr;
    std::size_t job_n_ = 0, job_chunks_ = 0;
    std::atomic<std::size_t> next_chunk_{0};
    int pending_ = 0;
};

// Global pool used by the solvers; sized once from the CLI --threads knob.
inline ThreadPool& global_pool(unsigned resize_to = 0) {
    static ThreadPool* pool = new ThreadPool(resize_to == 0 ? 1 : resize_to);
    if (resize_to != 0 && pool->size() != resize_to) {
        delete pool;
        pool = new ThreadPool(resize_to);
    }
    return *pool;
}

}  // namespace rarewave
