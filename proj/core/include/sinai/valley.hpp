#ifndef SINAI_VALLEY_HPP
#define SINAI_VALLEY_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "sinai/env.hpp"

namespace sinai {

class BrownianPath;

// A discretely sampled real path on a strictly increasing grid that contains
// t = 0. Shared substrate for potential and Brownian valley analysis.
struct PiecewisePath {
  std::vector<double> grid;
  std::vector<double> values;
  std::size_t origin = 0;  // grid[origin] == 0

  double t(std::size_t i) const { return grid[i]; }
  double w(std::size_t i) const { return values[i]; }
  std::size_t size() const { return grid.size(); }

  static PiecewisePath from_points(std::vector<double> grid, std::vector<double> values);
  // grid k * time_scale, values V(k) * value_scale for k in [pot.lo, pot.hi].
  static PiecewisePath from_potential(const PotentialPath& pot, double time_scale,
                                      double value_scale);
  // grid k * dt for k in [lo_k, hi_k]; extends the path as needed.
  static PiecewisePath from_brownian(BrownianPath& path, std::int64_t lo_k,
                                     std::int64_t hi_k);
};

// Valley (a, b, c): W(b) is the minimum on [a, c], W(a) the maximum on
// [a, b], W(c) the maximum on [b, c]. depth = min of the two rises.
struct Valley {
  std::size_t a = 0, b = 0, c = 0;
  double depth = 0.0;
};

// Validates the three extremal conditions by rescanning and returns the
// depth; throws NotAValley naming the condition that failed.
double depth(const PiecewisePath& path, std::size_t a, std::size_t b, std::size_t c);

// Left refinement: the pair a <= d < e <= b maximizing W(e) - W(d) splits
// (a,b,c) into (a,d,e) and (e,b,c). Ties: smallest e, then largest d.
// Returns nullopt when the maximal rise is not positive (monotone descent).
std::optional<std::pair<Valley, Valley>> refine_left(const PiecewisePath& path,
                                                     const Valley& v);

// Mirror image on [b, c]: the pair maximizing the drop W(d) - W(e) splits
// (a,b,c) into (a,b,d) and (d,e,c). Ties: largest d, then smallest e.
std::optional<std::pair<Valley, Valley>> refine_right(const PiecewisePath& path,
                                                      const Valley& v);

// The valley between the first crossings of `threshold` on each side of the
// origin; bottom ties resolved by smallest |t|, then the negative side.
// Throws InsufficientHorizon when a side never reaches the threshold.
Valley initial_valley(const PiecewisePath& path, double threshold);

// Iterated refinement descent from initial_valley: descend into a refined
// sub-valley whenever it strictly contains the origin and keeps depth >=
// threshold, preferring the refinement on the origin's side of the bottom.
// The result is refinement-minimal: no single refinement of it produces a
// depth >= threshold sub-valley around the origin.
Valley smallest_valley(const PiecewisePath& path, double threshold);

struct GoodEventRecord {
  bool bottom_stable = false;       // bottom at threshold == bottom at threshold+delta
  bool no_deep_alternative = false; // refinements of the delta-valley with a
                                    // different bottom all have depth < threshold-delta
  bool well_separated = false;      // min of W outside [b-delta, b+delta] exceeds
                                    // W(b) + delta^3 on the threshold-valley
  bool within_extent = false;       // |a_delta| + |c_delta| <= J
  bool all = false;
};

// Regularity indicators of the localization well. `iterated` enumerates all
// iterated refinements of the delta-valley instead of single steps.
GoodEventRecord check_good_event(const PiecewisePath& path, double threshold,
                                 double J, double delta, bool iterated = false);

// One JSON record {a, b, c, depth, threshold} (grid times) per line.
void write_valley_json(const PiecewisePath& path, const Valley& v,
                       double threshold, std::ostream& os);

}  // namespace sinai

#endif  // SINAI_VALLEY_HPP
