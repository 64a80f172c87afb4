#ifndef GAINTHRESH_PARALLEL_H
#define GAINTHRESH_PARALLEL_H

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace gainthresh {

/// Worker count: GAIN_THRESHOLD_THREADS if set to an integer >= 1, otherwise
/// the hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) across up to worker_count() threads, in
/// contiguous blocks. Each index must write only its own output slot. The
/// first exception thrown by any worker is rethrown.
template <typename Body>
void parallel_for(std::size_t n, Body&& body)
{
   const std::size_t workers = std::min(worker_count(), n);
   if (workers <= 1) {
      for (std::size_t i = 0; i < n; ++i) body(i);
      return;
   }
   std::vector<std::exception_ptr> errors(workers);
   std::vector<std::thread> threads;
   threads.reserve(workers);
   for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
         const std::size_t begin = n * w / workers;
         const std::size_t end = n * (w + 1) / workers;
         try {
            for (std::size_t i = begin; i < end; ++i) body(i);
         } catch (...) {
            errors[w] = std::current_exception();
         }
      });
   }
   for (auto& t : threads) t.join();
   for (auto& e : errors)
      if (e) std::rethrow_exception(e);
}

}  // namespace gainthresh

#endif  // GAINTHRESH_PARALLEL_H
