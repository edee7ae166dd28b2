#pragma once

// Deterministic parallel map: results come back in index order whatever the
// number of workers; the first exception (by completion) is rethrown.

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace racg {

template <class F>
auto parallel_map(std::size_t n, int workers, F fn) -> std::vector<decltype(fn(std::size_t{}))> {
    using R = decltype(fn(std::size_t{}));
    std::vector<std::optional<R>> slots(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    const auto count = static_cast<std::size_t>(std::clamp<long>(workers, 1, static_cast<long>(std::max<std::size_t>(n, 1))));
    if (count == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < count; ++w) pool.emplace_back(work);
    }
    if (error) std::rethrow_exception(error);
    std::vector<R> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace racg
