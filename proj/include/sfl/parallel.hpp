#pragma once

#include <cstdint>
#include <functional>
#include <optional>

namespace sfl {

// Worker threads to use: hardware concurrency, capped by SFL_THREADS when set.
int worker_count();

// Smallest i in [0, count) with pred(i) true. Workers stop once every index
// below the current best has been examined, so the answer is deterministic.
std::optional<std::uint64_t> first_match(std::uint64_t count, const std::function<bool(std::uint64_t)>& pred);

// Runs fn(i) for every i in [0, count), possibly on several threads.
void parallel_for(std::uint64_t count, const std::function<void(std::uint64_t)>& fn);

}  // namespace sfl
