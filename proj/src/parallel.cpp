#include "prodkernel/parallel.hpp"

#include <atomic>

namespace prodkernel {

namespace {
std::atomic<std::size_t> g_threads{1};
}

std::size_t num_threads() noexcept { return g_threads.load(std::memory_order_relaxed); }

void set_num_threads(std::size_t n) noexcept { g_threads.store(n == 0 ? 1 : n, std::memory_order_relaxed); }

}  // namespace prodkernel
