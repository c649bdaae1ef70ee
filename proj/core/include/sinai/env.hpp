#ifndef SINAI_ENV_HPP
#define SINAI_ENV_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace sinai {

enum class LawKind { uniform_symmetric, three_point };

// An i.i.d. site law whose log-odds log(w-/w+) is symmetric about zero, so
// E log rho = 0 holds by construction. `epsilon` is the uniform ellipticity
// floor: min(w-, w+) >= epsilon * (1 - lazy_weight) at every site.
//
// uniform_symmetric: U ~ Uniform[eps, 1-eps], w+ = (1-lazy)U, w- = (1-lazy)(1-U).
// three_point:       w+/(w+ + w-) is p or 1-p with probability 1/2 each.
struct EnvironmentLaw {
  LawKind kind = LawKind::uniform_symmetric;
  double epsilon = 0.05;
  double p = 0.25;          // three_point only
  double lazy_weight = 0.0; // probability mass held on w0
  double sigma = 0.0;       // cached sqrt(E (log rho)^2); 0 marks a degenerate law

  static EnvironmentLaw uniform_symmetric(double epsilon, double lazy_weight = 0.0);
  // p == 1/2 yields the simple random walk (sigma = 0); it is constructible
  // for smoke tests but rejected by sigma_p() and by the experiment layer.
  static EnvironmentLaw three_point(double p, double epsilon, double lazy_weight = 0.0);
};

// sqrt(E (log rho)^2) to relative accuracy 1e-8 (adaptive quadrature for the
// uniform-symmetric family, exact two-point sum for three_point). Throws
// std::domain_error when the law is degenerate (sigma = 0).
double sigma_p(const EnvironmentLaw& law);

struct SiteProbs {
  double minus, zero, plus;
};

// A materialized window of site transition probabilities for z in [lo, hi].
// Sites are a pure per-site function of (law, seed, z): re-sampling the same
// (law, seed) reproduces them bitwise, and widening the window extends the
// environment without disturbing existing sites.
struct Environment {
  EnvironmentLaw law;
  std::int64_t lo = 0, hi = 0;
  std::uint64_t seed = 0;
  std::vector<SiteProbs> sites;  // index z - lo

  const SiteProbs& site(std::int64_t z) const;
  bool contains(std::int64_t z) const { return z >= lo && z <= hi; }
};

// Deterministic site draw for coordinate z; the building block shared by
// sample_environment and sample_potential.
SiteProbs sample_site(const EnvironmentLaw& law, std::uint64_t seed, std::int64_t z);

Environment sample_environment(const EnvironmentLaw& law, std::int64_t lo,
                               std::int64_t hi, std::uint64_t seed);

// log rho_z = log(w-) - log(w+), exactly that expression.
double log_rho(const Environment& env, std::int64_t z);

// Two-sided discrete potential, V(0) = 0 and
//   V(k) - V(k-1) = log rho_{k-1}   for k >= 1,
//   V(k) - V(k+1) = -log rho_k      for k <= -1.
struct PotentialPath {
  std::int64_t lo = 0, hi = 0;
  std::vector<double> values;  // index k - lo

  double at(std::int64_t k) const { return values[static_cast<std::size_t>(k - lo)]; }
};

PotentialPath potential(const Environment& env);

// Same values as potential(sample_environment(...)) but sites are generated
// on the fly; used for wide valley scans where the triples are never needed.
PotentialPath sample_potential(const EnvironmentLaw& law, std::int64_t lo,
                               std::int64_t hi, std::uint64_t seed);

// Reproducibility dump: columns z, w_minus, w_zero, w_plus at 17 significant
// digits.
void write_environment_csv(const Environment& env, std::ostream& os);

}  // namespace sinai

#endif  // SINAI_ENV_HPP
