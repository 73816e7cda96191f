#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace symptrace {

/// Runs fn(shard) for shard in [0, shards) on at most `workers` threads.
/// Shards are claimed in a fixed round-robin so results stored per shard are
/// independent of the worker count.
template <typename Fn>
void parallel_shards(std::size_t shards, unsigned workers, Fn&& fn) {
    workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, shards))));
    if (workers == 1) {
        for (std::size_t s = 0; s < shards; ++s) fn(s);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t s = w; s < shards; s += workers) fn(s);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    pool.clear();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace symptrace
