#ifndef SINAI_RWRE_HPP
#define SINAI_RWRE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sinai/env.hpp"

namespace sinai {

struct WalkResult {
  std::int64_t final_position = 0;
  std::uint64_t steps = 0;
  // (checkpoint step, position after exactly that many steps), in input order.
  std::vector<std::pair<std::uint64_t, std::int64_t>> positions_at;
  // (target site, first-hitting step if it occurred).
  std::vector<std::pair<std::int64_t, std::optional<std::uint64_t>>> hit_records;
};

// Exact quenched chain: from z step +1 with prob w+_z, hold with w0_z, -1
// with w-_z. Deterministic given the seed. Throws WindowExhausted if the walk
// leaves [env.lo, env.hi]; rerunning with the same seed on a widened window
// reproduces the trajectory up to the old boundary.
WalkResult simulate_walk(const Environment& env, std::int64_t start,
                         std::uint64_t steps,
                         std::span<const std::uint64_t> checkpoints,
                         std::uint64_t seed,
                         std::span<const std::int64_t> hit_targets = {});

// Copy of env with the site at `reflect_at` forced to (0, 0, 1).
Environment with_reflection(const Environment& env, std::int64_t reflect_at);

// Walk until the first visit to lo_target or hi_target (start strictly
// between them). Returns the site hit and the step count; throws
// WindowExhausted / std::runtime_error on max_steps overrun.
struct FirstPassage {
  std::int64_t hit;
  std::uint64_t step;
};
FirstPassage simulate_until_hit(const Environment& env, std::int64_t start,
                                std::int64_t lo_target, std::int64_t hi_target,
                                std::uint64_t max_steps, std::uint64_t seed);

// P^z(hit -m_minus before m_plus), the unique harmonic interpolation with
// boundary values 1 at -m_minus and 0 at m_plus. All rho-products are
// accumulated in log space with a running-max reduction, so windows spanning
// potentials of hundreds are fine.
double hitting_probability(const Environment& env, std::int64_t m_minus,
                           std::int64_t m_plus, std::int64_t z);

struct ReflectedSpec {
  std::int64_t reflect_at;  // site where w+ is forced to 1
  std::int64_t target;      // target > reflect_at
};

// Expected first-hitting time of `target` from 0 for the walk reflected at
// `reflect_at` < 0:
//   sum_{i=1}^{b} sum_{j=0}^{i-1-a} (prod_{k=1}^{j} rho_{i-k}) / w~+_{i-j-1},
// empty products = 1, w~ equal to w except w~+ = 1 at the reflection site.
// Holding counts as a step, and the identity is exact for lazy chains too.
double expected_hitting_time_reflected(const Environment& env, ReflectedSpec spec);

// Normalized invariant function f_bar of the reflected chain on
// [reflect_at, env.hi]: f(z) ratios follow detailed balance
// f(z+1)/f(z) = w+_z / w-_{z+1}, f_bar = f / f(b). The boundary value
// f(reflect_at) = w-_{reflect_at + 1} comes from flow balance at the
// reflecting site, so A f_bar = f_bar holds there as well.
std::vector<double> invariant_function(const Environment& env,
                                       std::int64_t reflect_at, std::int64_t b);

// One application of the forward transition operator of the reflected chain,
//   (Ag)(z) = w~+_{z-1} g(z-1) + w~-_{z+1} g(z+1) + w~0_z g(z),
// with w~+ = 1 at reflect_at and w~+ = 0 at reflect_at - 1. `g` lives on
// [reflect_at, reflect_at + g.size() - 1]; the result is one entry shorter
// (the last point needs a neighbour beyond the window).
std::vector<double> apply_transition_operator(const Environment& env,
                                              std::int64_t reflect_at,
                                              std::span<const double> g);

}  // namespace sinai

#endif  // SINAI_RWRE_HPP
