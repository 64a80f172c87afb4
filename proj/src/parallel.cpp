#include "gainthresh/parallel.h"

#include <cstdlib>
#include <string>

namespace gainthresh {

std::size_t worker_count()
{
   if (const char* env = std::getenv("GAIN_THRESHOLD_THREADS")) {
      try {
         const long value = std::stol(env);
         if (value >= 1) return static_cast<std::size_t>(value);
      } catch (const std::exception&) {
      }
   }
   const unsigned hw = std::thread::hardware_concurrency();
   return hw == 0 ? 1 : hw;
}

}  // namespace gainthresh
