#include "sinai/valley.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <ostream>
#include <set>
#include <stdexcept>

#include "sinai/brownian.hpp"
#include "sinai/errors.hpp"

namespace sinai {

PiecewisePath PiecewisePath::from_points(std::vector<double> grid,
                                         std::vector<double> values) {
  if (grid.size() != values.size() || grid.empty())
    throw std::invalid_argument("grid/value size mismatch");
  PiecewisePath p;
  p.grid = std::move(grid);
  p.values = std::move(values);
  bool found = false;
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    if (i > 0 && !(p.grid[i] > p.grid[i - 1]))
      throw std::invalid_argument("grid must be strictly increasing");
    if (p.grid[i] == 0.0) {
      p.origin = i;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("grid must contain t = 0");
  return p;
}

PiecewisePath PiecewisePath::from_potential(const PotentialPath& pot,
                                            double time_scale, double value_scale) {
  PiecewisePath p;
  const std::size_t n = pot.values.size();
  p.grid.resize(n);
  p.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t k = pot.lo + static_cast<std::int64_t>(i);
    p.grid[i] = static_cast<double>(k) * time_scale;
    p.values[i] = pot.values[i] * value_scale;
  }
  p.origin = static_cast<std::size_t>(-pot.lo);
  return p;
}

PiecewisePath PiecewisePath::from_brownian(BrownianPath& path, std::int64_t lo_k,
                                           std::int64_t hi_k) {
  if (lo_k > 0 || hi_k < 0) throw std::invalid_argument("window must contain 0");
  path.ensure(lo_k);
  path.ensure(hi_k);
  PiecewisePath p;
  const std::size_t n = static_cast<std::size_t>(hi_k - lo_k + 1);
  p.grid.resize(n);
  p.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t k = lo_k + static_cast<std::int64_t>(i);
    p.grid[i] = static_cast<double>(k) * path.dt();
    p.values[i] = path.value(k);
  }
  p.origin = static_cast<std::size_t>(-lo_k);
  return p;
}

double depth(const PiecewisePath& path, std::size_t a, std::size_t b, std::size_t c) {
  if (!(a < b && b < c) || c >= path.size())
    throw NotAValley("indices not ordered a < b < c within the path");
  const auto& w = path.values;
  for (std::size_t i = a; i <= c; ++i)
    if (w[i] < w[b]) throw NotAValley("W(b) is not the minimum on [a, c]");
  for (std::size_t i = a; i <= b; ++i)
    if (w[i] > w[a]) throw NotAValley("W(a) is not the maximum on [a, b]");
  for (std::size_t i = b; i <= c; ++i)
    if (w[i] > w[c]) throw NotAValley("W(c) is not the maximum on [b, c]");
  return std::min(w[a] - w[b], w[c] - w[b]);
}

namespace {

struct RisePair {
  std::size_t d, e;
  double rise;
};

// Maximal rise W(e) - W(d) over lo <= d < e <= hi; ties by smallest e, then
// largest d. Returns rise <= 0 when the segment admits no ascent.
RisePair max_rise(const std::vector<double>& w, std::size_t lo, std::size_t hi) {
  RisePair best{lo, lo + 1, -std::numeric_limits<double>::infinity()};
  double run_min = w[lo];
  std::size_t run_min_idx = lo;
  for (std::size_t e = lo + 1; e <= hi; ++e) {
    const double rise = w[e] - run_min;
    if (rise > best.rise) best = RisePair{run_min_idx, e, rise};
    if (w[e] <= run_min) {  // keep the latest argmin: largest d on ties
      run_min = w[e];
      run_min_idx = e;
    }
  }
  return best;
}

// Same scan on the reversed segment, which is exactly the right-refinement
// rule: maximal drop W(d) - W(e), ties by largest d, then smallest e.
RisePair max_drop(const std::vector<double>& w, std::size_t lo, std::size_t hi) {
  RisePair best{lo, lo + 1, -std::numeric_limits<double>::infinity()};
  double run_min = w[hi];  // min of w over (i, hi] while scanning i downward
  std::size_t run_min_idx = hi;
  for (std::size_t i = hi; i-- > lo;) {
    const double drop = w[i] - run_min;
    if (drop > best.rise) best = RisePair{i, run_min_idx, drop};
    if (w[i] <= run_min) {  // keep the earliest argmin: smallest e on ties
      run_min = w[i];
      run_min_idx = i;
    }
  }
  return best;
}

Valley make_valley(const std::vector<double>& w, std::size_t a, std::size_t b,
                   std::size_t c) {
  return Valley{a, b, c, std::min(w[a] - w[b], w[c] - w[b])};
}

}  // namespace

std::optional<std::pair<Valley, Valley>> refine_left(const PiecewisePath& path,
                                                     const Valley& v) {
  if (!(v.a < v.b && v.b < v.c && v.c < path.size()))
    throw std::invalid_argument("invalid valley indices");
  if (v.b == v.a + 1) return std::nullopt;
  const auto& w = path.values;
  const RisePair r = max_rise(w, v.a, v.b);
  if (!(r.rise > 0.0)) return std::nullopt;
  return std::make_pair(make_valley(w, v.a, r.d, r.e), make_valley(w, r.e, v.b, v.c));
}

std::optional<std::pair<Valley, Valley>> refine_right(const PiecewisePath& path,
                                                      const Valley& v) {
  if (!(v.a < v.b && v.b < v.c && v.c < path.size()))
    throw std::invalid_argument("invalid valley indices");
  if (v.c == v.b + 1) return std::nullopt;
  const auto& w = path.values;
  const RisePair r = max_drop(w, v.b, v.c);
  if (!(r.rise > 0.0)) return std::nullopt;
  return std::make_pair(make_valley(w, v.a, v.b, r.d), make_valley(w, r.d, r.e, v.c));
}

Valley initial_valley(const PiecewisePath& path, double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
  if (path.values[path.origin] >= threshold)
    throw std::invalid_argument("W(0) already at or above the threshold");
  const auto& w = path.values;

  std::size_t c = path.origin;
  while (c < path.size() && w[c] < threshold) ++c;
  if (c == path.size()) throw InsufficientHorizon(+1);

  std::size_t a = path.origin;
  while (w[a] < threshold) {
    if (a == 0) throw InsufficientHorizon(-1);
    --a;
  }

  // Bottom: argmin on [a, c]; ties by smallest |t|, then the negative side.
  std::size_t b = a;
  for (std::size_t i = a; i <= c; ++i) {
    if (w[i] < w[b]) {
      b = i;
    } else if (w[i] == w[b] && i != b) {
      const double ti = std::abs(path.grid[i]), tb = std::abs(path.grid[b]);
      if (ti < tb || (ti == tb && path.grid[i] < path.grid[b])) b = i;
    }
  }
  return make_valley(w, a, b, c);
}

namespace {

// The refined sub-valley strictly containing the origin, if it exists and
// clears the depth threshold.
std::optional<Valley> admissible_piece(const std::pair<Valley, Valley>& pieces,
                                       std::size_t origin, double threshold) {
  for (const Valley& v : {pieces.first, pieces.second}) {
    if (v.a < origin && origin < v.c && v.depth >= threshold) return v;
  }
  return std::nullopt;
}

}  // namespace

Valley smallest_valley(const PiecewisePath& path, double threshold) {
  Valley v = initial_valley(path, threshold);
  const std::size_t o = path.origin;
  for (;;) {
    const bool left_first = v.b >= o;
    bool descended = false;
    for (int pass = 0; pass < 2 && !descended; ++pass) {
      const bool left = (pass == 0) ? left_first : !left_first;
      const auto pieces = left ? refine_left(path, v) : refine_right(path, v);
      if (!pieces) continue;
      if (auto next = admissible_piece(*pieces, o, threshold)) {
        v = *next;
        descended = true;
      }
    }
    if (!descended) return v;
  }
}

namespace {

// All single-step refinements of v; with `iterated`, the full refinement
// closure (memoized, capped).
std::vector<Valley> refinement_family(const PiecewisePath& path, const Valley& v,
                                      bool iterated) {
  std::vector<Valley> out;
  std::set<std::array<std::size_t, 3>> seen;
  std::deque<Valley> queue{v};
  constexpr std::size_t kCap = 1u << 20;
  while (!queue.empty()) {
    const Valley cur = queue.front();
    queue.pop_front();
    for (const auto& pieces : {refine_left(path, cur), refine_right(path, cur)}) {
      if (!pieces) continue;
      for (const Valley& piece : {pieces->first, pieces->second}) {
        if (!seen.insert({piece.a, piece.b, piece.c}).second) continue;
        out.push_back(piece);
        if (iterated) queue.push_back(piece);
        if (out.size() > kCap)
          throw std::runtime_error("refinement closure too large");
      }
    }
    if (!iterated) break;
  }
  return out;
}

}  // namespace

GoodEventRecord check_good_event(const PiecewisePath& path, double threshold,
                                 double J, double delta, bool iterated) {
  if (!(delta > 0.0) || !(J > 0.0)) throw std::invalid_argument("need J, delta > 0");
  const Valley v1 = smallest_valley(path, threshold);
  const Valley vd = smallest_valley(path, threshold + delta);

  GoodEventRecord r;
  r.bottom_stable = (v1.b == vd.b);

  r.no_deep_alternative = true;
  for (const Valley& alt : refinement_family(path, vd, iterated)) {
    if (alt.b != v1.b && alt.depth >= threshold - delta) {
      r.no_deep_alternative = false;
      break;
    }
  }

  // Minimum outside the closed band [t(b) - delta, t(b) + delta].
  const double tb = path.grid[v1.b], wb = path.values[v1.b];
  double min_outside = std::numeric_limits<double>::infinity();
  for (std::size_t i = v1.a; i <= v1.c; ++i) {
    if (std::abs(path.grid[i] - tb) <= delta) continue;
    min_outside = std::min(min_outside, path.values[i]);
  }
  r.well_separated = (min_outside - wb > delta * delta * delta);

  r.within_extent = (std::abs(path.grid[vd.a]) + std::abs(path.grid[vd.c]) <= J);
  r.all = r.bottom_stable && r.no_deep_alternative && r.well_separated && r.within_extent;
  return r;
}

void write_valley_json(const PiecewisePath& path, const Valley& v,
                       double threshold, std::ostream& os) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "{\"a\":%.17g,\"b\":%.17g,\"c\":%.17g,\"depth\":%.17g,\"threshold\":%.17g}\n",
                path.grid[v.a], path.grid[v.b], path.grid[v.c], v.depth, threshold);
  os << buf;
}

}  // namespace sinai
