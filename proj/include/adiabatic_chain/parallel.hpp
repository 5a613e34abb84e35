#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace adiabatic_chain {

/// Worker count for sweeps: ADIABATIC_CHAIN_THREADS when set to a positive
/// integer, otherwise the hardware concurrency.
inline unsigned sweep_thread_count()
{
  if (const char* env = std::getenv("ADIABATIC_CHAIN_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0)
        return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // fall through to auto
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, count). Cells must write only to their own
/// output slot; the first exception thrown by any cell is rethrown here.
template <typename Body>
void parallel_for(std::size_t count, Body&& body, unsigned threads = sweep_thread_count())
{
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count)
        return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back(worker);
  for (auto& th : pool)
    th.join();
  if (error)
    std::rethrow_exception(error);
}

} // namespace adiabatic_chain
