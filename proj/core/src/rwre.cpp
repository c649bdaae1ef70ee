#include "sinai/rwre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sinai/errors.hpp"
#include "sinai/rng.hpp"

namespace sinai {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Streaming log-sum-exp with a running maximum.
struct LogSumExp {
  double max_term = kNegInf;
  double sum = 0.0;  // sum of exp(term - max_term)

  void add(double term) {
    if (term <= max_term) {
      sum += std::exp(term - max_term);
    } else {
      sum = sum * std::exp(max_term - term) + 1.0;
      max_term = term;
    }
  }
  bool empty() const { return max_term == kNegInf; }
  double value() const { return max_term + std::log(sum); }
};

struct StepTables {
  std::vector<double> up;       // w+
  std::vector<double> up_zero;  // w+ + w0
  std::int64_t lo;
};

StepTables make_tables(const Environment& env) {
  StepTables t;
  t.lo = env.lo;
  const std::size_t n = env.sites.size();
  t.up.resize(n);
  t.up_zero.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.up[i] = env.sites[i].plus;
    t.up_zero[i] = env.sites[i].plus + env.sites[i].zero;
  }
  return t;
}

}  // namespace

WalkResult simulate_walk(const Environment& env, std::int64_t start,
                         std::uint64_t steps,
                         std::span<const std::uint64_t> checkpoints,
                         std::uint64_t seed,
                         std::span<const std::int64_t> hit_targets) {
  if (!env.contains(start)) throw std::invalid_argument("start outside window");
  for (std::size_t i = 1; i < checkpoints.size(); ++i)
    if (checkpoints[i] < checkpoints[i - 1])
      throw std::invalid_argument("checkpoints must be sorted");

  const StepTables t = make_tables(env);
  WalkResult res;
  res.steps = steps;

  // First-hit bookkeeping on a dense window flag array.
  std::vector<std::uint8_t> is_target;
  std::vector<std::optional<std::uint64_t>> first_hit(hit_targets.size());
  if (!hit_targets.empty()) {
    is_target.assign(env.sites.size(), 0);
    for (std::size_t i = 0; i < hit_targets.size(); ++i) {
      if (!env.contains(hit_targets[i]))
        throw std::invalid_argument("hit target outside window");
      is_target[static_cast<std::size_t>(hit_targets[i] - env.lo)] = 1;
    }
    for (std::size_t i = 0; i < hit_targets.size(); ++i)
      if (hit_targets[i] == start) first_hit[i] = 0;
  }

  SplitMix64 rng(seed);
  std::int64_t x = start;
  std::size_t next_cp = 0;
  while (next_cp < checkpoints.size() && checkpoints[next_cp] == 0) {
    res.positions_at.emplace_back(0, x);
    ++next_cp;
  }

  const std::int64_t lo = env.lo, hi = env.hi;
  for (std::uint64_t s = 1; s <= steps; ++s) {
    const std::size_t i = static_cast<std::size_t>(x - lo);
    const double u = uniform01(rng);
    if (u < t.up[i]) {
      ++x;
    } else if (u >= t.up_zero[i]) {
      --x;
    }
    if (x < lo || x > hi) throw WindowExhausted(x, s);
    if (!hit_targets.empty() && is_target[static_cast<std::size_t>(x - lo)]) {
      for (std::size_t k = 0; k < hit_targets.size(); ++k)
        if (hit_targets[k] == x && !first_hit[k]) first_hit[k] = s;
    }
    while (next_cp < checkpoints.size() && checkpoints[next_cp] == s) {
      res.positions_at.emplace_back(s, x);
      ++next_cp;
    }
  }
  res.final_position = x;
  for (std::size_t k = 0; k < hit_targets.size(); ++k)
    res.hit_records.emplace_back(hit_targets[k], first_hit[k]);
  return res;
}

Environment with_reflection(const Environment& env, std::int64_t reflect_at) {
  Environment out = env;
  out.sites[static_cast<std::size_t>(reflect_at - env.lo)] = SiteProbs{0.0, 0.0, 1.0};
  return out;
}

FirstPassage simulate_until_hit(const Environment& env, std::int64_t start,
                                std::int64_t lo_target, std::int64_t hi_target,
                                std::uint64_t max_steps, std::uint64_t seed) {
  if (!(lo_target < start && start < hi_target))
    throw std::invalid_argument("start must lie strictly between the targets");
  if (!env.contains(lo_target) || !env.contains(hi_target))
    throw std::invalid_argument("targets outside window");
  const StepTables t = make_tables(env);
  SplitMix64 rng(seed);
  std::int64_t x = start;
  for (std::uint64_t s = 1; s <= max_steps; ++s) {
    const std::size_t i = static_cast<std::size_t>(x - t.lo);
    const double u = uniform01(rng);
    if (u < t.up[i]) {
      ++x;
    } else if (u >= t.up_zero[i]) {
      --x;
    }
    if (x == lo_target || x == hi_target) return FirstPassage{x, s};
  }
  throw std::runtime_error("simulate_until_hit: step budget exhausted");
}

double hitting_probability(const Environment& env, std::int64_t m_minus,
                           std::int64_t m_plus, std::int64_t z) {
  if (m_minus < 1 || m_plus < 1) throw std::invalid_argument("m_minus, m_plus >= 1");
  if (z < -m_minus || z > m_plus)
    throw std::invalid_argument("z outside [-m_minus, m_plus]");
  if (!env.contains(-m_minus) || !env.contains(m_plus))
    throw std::invalid_argument("interval outside window");
  if (z == m_plus) return 0.0;
  if (z == -m_minus) return 1.0;

  // Numerator terms i in (z, m_plus]: log prod_{j=z+1}^{i-1} rho_j.
  LogSumExp num;
  double acc = 0.0;
  for (std::int64_t i = z + 1; i <= m_plus; ++i) {
    num.add(acc);
    acc += log_rho(env, i);
  }
  // Extra denominator terms i in (-m_minus, z]: log prod_{j=i}^{z} 1/rho_j.
  LogSumExp den;
  acc = 0.0;
  for (std::int64_t i = z; i >= -m_minus + 1; --i) {
    acc -= log_rho(env, i);
    den.add(acc);
  }
  return 1.0 / (1.0 + std::exp(den.value() - num.value()));
}

double expected_hitting_time_reflected(const Environment& env, ReflectedSpec spec) {
  const std::int64_t a = spec.reflect_at, b = spec.target;
  if (!(a < 0 && 0 < b)) throw std::invalid_argument("need reflect_at < 0 < target");
  if (!env.contains(a) || !env.contains(b))
    throw std::invalid_argument("interval outside window");

  // log w~+ at the inner summation site; 0 at the reflection site.
  auto log_up = [&](std::int64_t s) {
    return s == a ? 0.0 : std::log(env.site(s).plus);
  };
  LogSumExp total;
  for (std::int64_t i = 1; i <= b; ++i) {
    double logprod = 0.0;  // log prod_{k=1}^{j} rho_{i-k}
    for (std::int64_t j = 0; j <= i - 1 - a; ++j) {
      if (j > 0) logprod += std::log(env.site(i - j).minus) - std::log(env.site(i - j).plus);
      total.add(logprod - log_up(i - j - 1));
    }
  }
  return std::exp(total.value());
}

std::vector<double> invariant_function(const Environment& env,
                                       std::int64_t reflect_at, std::int64_t b) {
  const std::int64_t a = reflect_at;
  if (!(a < b)) throw std::invalid_argument("need reflect_at < b");
  if (!env.contains(a) || !env.contains(b))
    throw std::invalid_argument("range outside window");

  const std::size_t n = static_cast<std::size_t>(env.hi - a + 1);
  std::vector<double> logf(n);
  logf[0] = std::log(env.site(a + 1).minus);  // flow balance at the boundary
  logf[1] = 0.0;
  for (std::int64_t z = a + 2; z <= env.hi; ++z) {
    logf[static_cast<std::size_t>(z - a)] =
        logf[static_cast<std::size_t>(z - 1 - a)] +
        std::log(env.site(z - 1).plus) - std::log(env.site(z).minus);
  }
  const double logfb = logf[static_cast<std::size_t>(b - a)];
  std::vector<double> fbar(n);
  for (std::size_t i = 0; i < n; ++i) fbar[i] = std::exp(logf[i] - logfb);
  return fbar;
}

std::vector<double> apply_transition_operator(const Environment& env,
                                              std::int64_t reflect_at,
                                              std::span<const double> g) {
  const std::int64_t a = reflect_at;
  if (g.size() < 2) throw std::invalid_argument("g too short");
  const std::int64_t g_hi = a + static_cast<std::int64_t>(g.size()) - 1;
  if (!env.contains(a) || !env.contains(g_hi))
    throw std::invalid_argument("g domain outside window");

  std::vector<double> out(g.size() - 1);
  for (std::int64_t z = a; z < g_hi; ++z) {
    const std::size_t i = static_cast<std::size_t>(z - a);
    double v = 0.0;
    if (z - 1 > a)
      v += env.site(z - 1).plus * g[i - 1];
    else if (z - 1 == a)
      v += g[i - 1];  // w~+ = 1 at the reflection site
    // z - 1 == a - 1: w~+ forced to 0, no inflow from the left.
    v += env.site(z + 1).minus * g[i + 1];
    if (z != a) v += env.site(z).zero * g[i];  // holding mass is 0 at the reflection site
    out[i] = v;
  }
  return out;
}

}  // namespace sinai
