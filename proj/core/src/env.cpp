#include "sinai/env.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "sinai/rng.hpp"

namespace sinai {

namespace {

void validate_common(double epsilon, double lazy_weight) {
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw std::invalid_argument("epsilon must lie in (0, 1/2)");
  if (!(lazy_weight >= 0.0 && lazy_weight < 1.0))
    throw std::invalid_argument("lazy_weight must lie in [0, 1)");
}

double uniform_symmetric_second_moment(double eps) {
  // E (log rho)^2 = (1-2eps)^-1 * int_eps^{1-eps} log((1-u)/u)^2 du
  auto f = [](double u) {
    const double l = std::log1p(-u) - std::log(u);
    return l * l;
  };
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          f, eps, 1.0 - eps, 12, 1e-11);
  return integral / (1.0 - 2.0 * eps);
}

double law_sigma(const EnvironmentLaw& law) {
  if (law.kind == LawKind::three_point) {
    // log rho in {+-log((1-p)/p)} with probability 1/2 each.
    return std::abs(std::log((1.0 - law.p) / law.p));
  }
  return std::sqrt(uniform_symmetric_second_moment(law.epsilon));
}

}  // namespace

EnvironmentLaw EnvironmentLaw::uniform_symmetric(double epsilon, double lazy_weight) {
  validate_common(epsilon, lazy_weight);
  EnvironmentLaw law;
  law.kind = LawKind::uniform_symmetric;
  law.epsilon = epsilon;
  law.lazy_weight = lazy_weight;
  law.sigma = law_sigma(law);
  return law;
}

EnvironmentLaw EnvironmentLaw::three_point(double p, double epsilon, double lazy_weight) {
  validate_common(epsilon, lazy_weight);
  if (!(p >= epsilon && p <= 0.5))
    throw std::invalid_argument("three-point p must lie in [epsilon, 1/2]");
  EnvironmentLaw law;
  law.kind = LawKind::three_point;
  law.epsilon = epsilon;
  law.p = p;
  law.lazy_weight = lazy_weight;
  law.sigma = law_sigma(law);
  return law;
}

double sigma_p(const EnvironmentLaw& law) {
  if (law.sigma <= 0.0)
    throw std::domain_error("degenerate law: sigma_P = 0 (simple random walk)");
  return law.sigma;
}

SiteProbs sample_site(const EnvironmentLaw& law, std::uint64_t seed, std::int64_t z) {
  SplitMix64 g(mix64(seed + 0x632be59bd9b4e019ULL) ^
               mix64(static_cast<std::uint64_t>(z) * kGolden64 + 0xd1b54a32d192ed03ULL));
  const double keep = 1.0 - law.lazy_weight;
  double up;
  if (law.kind == LawKind::uniform_symmetric) {
    const double u = uniform01(g);
    up = law.epsilon + (1.0 - 2.0 * law.epsilon) * u;
  } else {
    up = uniform01(g) < 0.5 ? law.p : 1.0 - law.p;
  }
  SiteProbs s;
  s.plus = keep * up;
  s.minus = keep - s.plus;
  s.zero = law.lazy_weight;
  return s;
}

const SiteProbs& Environment::site(std::int64_t z) const {
  if (!contains(z)) throw std::out_of_range("site index outside environment window");
  return sites[static_cast<std::size_t>(z - lo)];
}

Environment sample_environment(const EnvironmentLaw& law, std::int64_t lo,
                               std::int64_t hi, std::uint64_t seed) {
  if (lo > 0 || hi < 0)
    throw std::invalid_argument("environment window must contain the origin");
  validate_common(law.epsilon, law.lazy_weight);
  Environment env;
  env.law = law;
  env.lo = lo;
  env.hi = hi;
  env.seed = seed;
  env.sites.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t z = lo; z <= hi; ++z)
    env.sites.push_back(sample_site(law, seed, z));
  return env;
}

double log_rho(const Environment& env, std::int64_t z) {
  const SiteProbs& s = env.site(z);
  return std::log(s.minus) - std::log(s.plus);
}

namespace {

double site_log_rho(const SiteProbs& s) {
  return std::log(s.minus) - std::log(s.plus);
}

template <class SiteAt>
PotentialPath build_potential(std::int64_t lo, std::int64_t hi, SiteAt&& site_at) {
  PotentialPath path;
  path.lo = lo;
  path.hi = hi;
  path.values.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
  const std::size_t origin = static_cast<std::size_t>(-lo);
  double v = 0.0;
  for (std::int64_t k = 1; k <= hi; ++k) {
    v += site_log_rho(site_at(k - 1));
    path.values[origin + static_cast<std::size_t>(k)] = v;
  }
  v = 0.0;
  for (std::int64_t k = -1; k >= lo; --k) {
    v += site_log_rho(site_at(k));
    path.values[origin - static_cast<std::size_t>(-k)] = v;
  }
  return path;
}

}  // namespace

PotentialPath potential(const Environment& env) {
  return build_potential(env.lo, env.hi,
                         [&](std::int64_t z) -> const SiteProbs& { return env.site(z); });
}

PotentialPath sample_potential(const EnvironmentLaw& law, std::int64_t lo,
                               std::int64_t hi, std::uint64_t seed) {
  if (lo > 0 || hi < 0)
    throw std::invalid_argument("potential window must contain the origin");
  return build_potential(lo, hi, [&](std::int64_t z) { return sample_site(law, seed, z); });
}

void write_environment_csv(const Environment& env, std::ostream& os) {
  os << "z,w_minus,w_zero,w_plus\n";
  char buf[128];
  for (std::int64_t z = env.lo; z <= env.hi; ++z) {
    const SiteProbs& s = env.site(z);
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g\n",
                  static_cast<long long>(z), s.minus, s.zero, s.plus);
    os << buf;
  }
}

}  // namespace sinai
