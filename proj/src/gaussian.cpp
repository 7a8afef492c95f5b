#include "latgauss/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace latgauss {

namespace {
constexpr double kPi = std::numbers::pi;
}

double rho(const Vec& x, double s, const Vec& c) {
  if (x.size() != c.size()) {
    throw ValidationError("rho: dim(x) != dim(c)");
  }
  if (!(s > 0)) {
    throw ValidationError("rho: s must be positive");
  }
  return std::exp(-kPi * (x - c).squaredNorm() / (s * s));
}

// Sums exp(-pi (k-mu)^2 / s^2) outward from the nearest integer to mu.
// Factoring out the peak term keeps the accumulation stable for tiny s,
// where every raw term underflows. Returns log of the sum.
double log_rho_z(double s, double mu, const ThetaConfig& cfg) {
  if (!(s > 0)) {
    throw ValidationError("rho_z: s must be positive");
  }
  const double inv_s2 = 1.0 / (s * s);
  const long window =
      std::max<long>(static_cast<long>(std::ceil(12.0 * s)), 12);
  const long k0 = static_cast<long>(std::llround(mu));
  const double peak_exponent = -kPi * (k0 - mu) * (k0 - mu) * inv_s2;

  double sum = 1.0;  // peak term, after factoring exp(peak_exponent)
  for (long d = 1; d <= window; ++d) {
    double term = 0.0;
    for (long k : {k0 - d, k0 + d}) {
      term += std::exp(-kPi * (k - mu) * (k - mu) * inv_s2 - peak_exponent);
    }
    sum += term;
    if (term < cfg.relative_cutoff * sum) {
      break;
    }
  }
  return peak_exponent + std::log(sum);
}

double rho_z(double s, double mu, const ThetaConfig& cfg) {
  return std::exp(log_rho_z(s, mu, cfg));
}

double log_jacobi_theta3(double tau, const ThetaConfig& cfg) {
  if (!(tau > 0)) {
    throw ValidationError("jacobi_theta3: tau must be positive");
  }
  // theta3(tau) = rho_{1/sqrt(tau),0}(Z)
  return log_rho_z(1.0 / std::sqrt(tau), 0.0, cfg);
}

double jacobi_theta3(double tau, const ThetaConfig& cfg) {
  return std::exp(log_jacobi_theta3(tau, cfg));
}

std::int64_t sample_dgauss_z(double s, double mu, SplitMix64& rng) {
  if (!(s > 0)) {
    throw ValidationError("sample_dgauss_z: s must be positive");
  }
  const double window = std::max(12.0 * s, 12.0);
  const std::int64_t lo = static_cast<std::int64_t>(std::ceil(mu - window));
  const std::int64_t hi = static_cast<std::int64_t>(std::floor(mu + window));
  const double inv_s2 = 1.0 / (s * s);
  const std::int64_t k0 =
      std::clamp(static_cast<std::int64_t>(std::llround(mu)), lo, hi);
  const double peak = -kPi * (k0 - mu) * (k0 - mu) * inv_s2;

  std::vector<double> weights(static_cast<std::size_t>(hi - lo + 1));
  double total = 0.0;
  for (std::int64_t k = lo; k <= hi; ++k) {
    const double w = std::exp(-kPi * (k - mu) * (k - mu) * inv_s2 - peak);
    weights[static_cast<std::size_t>(k - lo)] = w;
    total += w;
  }

  const double u = rng.next_double() * total;
  double acc = 0.0;
  for (std::int64_t k = lo; k <= hi; ++k) {
    acc += weights[static_cast<std::size_t>(k - lo)];
    if (u < acc) {
      return k;
    }
  }
  return hi;
}

double tail_radius(int m, double s, double eps_tail) {
  if (!(eps_tail > 0.0 && eps_tail < 1.0)) {
    throw ValidationError("tail_radius: eps_tail must lie in (0,1)");
  }
  if (m < 1 || !(s > 0)) {
    throw ValidationError("tail_radius: need m >= 1 and s > 0");
  }
  return s * (std::sqrt(m / (2.0 * kPi)) +
              std::sqrt(std::log(1.0 / eps_tail) / kPi));
}

double tv_distance(const Pmf& p, const Pmf& q) {
  double total = 0.0;
  auto it_p = p.begin();
  auto it_q = q.begin();
  auto check = [](double mass) {
    if (mass < 0) {
      throw ValidationError("tv_distance: negative mass");
    }
  };
  while (it_p != p.end() || it_q != q.end()) {
    if (it_q == q.end() || (it_p != p.end() && it_p->first < it_q->first)) {
      check(it_p->second);
      total += it_p->second;
      ++it_p;
    } else if (it_p == p.end() || it_q->first < it_p->first) {
      check(it_q->second);
      total += it_q->second;
      ++it_q;
    } else {
      check(it_p->second);
      check(it_q->second);
      total += std::abs(it_p->second - it_q->second);
      ++it_p;
      ++it_q;
    }
  }
  return 0.5 * total;
}

}  // namespace latgauss
