#ifndef SINAI_ERRORS_HPP
#define SINAI_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sinai {

// The walk stepped outside the materialized environment window. The caller
// is expected to widen the window and rerun with the same seed.
struct WindowExhausted : std::runtime_error {
  std::int64_t position;
  std::uint64_t step;
  WindowExhausted(std::int64_t pos, std::uint64_t at)
      : std::runtime_error("walk left the environment window at z=" +
                           std::to_string(pos) + " (step " +
                           std::to_string(at) + ")"),
        position(pos),
        step(at) {}
};

// A path-level crossing needed by valley analysis does not occur within the
// materialized horizon. The caller extends the path and retries.
struct InsufficientHorizon : std::runtime_error {
  int side;  // -1 = negative axis, +1 = positive axis
  explicit InsufficientHorizon(int which)
      : std::runtime_error(std::string("path never reaches the threshold on the ") +
                           (which < 0 ? "negative" : "positive") + " side"),
        side(which) {}
};

// A Brownian path hit its hard per-side step cap before the requested
// functional resolved. Trials that see this are discarded and counted.
struct HorizonExceeded : std::runtime_error {
  std::uint64_t cap;
  explicit HorizonExceeded(std::uint64_t steps)
      : std::runtime_error("path step cap exceeded (" + std::to_string(steps) +
                           " steps per side)"),
        cap(steps) {}
};

// A triple handed to depth() fails one of the three valley conditions.
struct NotAValley : std::invalid_argument {
  explicit NotAValley(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace sinai

#endif  // SINAI_ERRORS_HPP
