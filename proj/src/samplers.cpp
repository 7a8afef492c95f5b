#include "latgauss/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace latgauss {

namespace {

constexpr double kPi = std::numbers::pi;

double mu_level(const KleinContext& ctx, const IntVec& x, int i) {
  double shifted = ctx.c_prime(i);
  for (int j = i + 1; j < ctx.rank(); ++j) {
    shifted -= ctx.qr.R(i, j) * static_cast<double>(x(j));
  }
  return shifted / ctx.qr.R(i, i);
}

// log prod_i rho_{s_i, mu_i(x_{>i})}(Z), the Klein pmf denominator.
double log_denominator(const KleinContext& ctx, const IntVec& x) {
  double acc = 0.0;
  for (int i = 0; i < ctx.rank(); ++i) {
    acc += log_rho_z(ctx.s_i[static_cast<std::size_t>(i)], mu_level(ctx, x, i));
  }
  return acc;
}

double log_centered_denominator(const KleinContext& ctx) {
  double acc = 0.0;
  for (double si : ctx.s_i) acc += log_rho_z(si, 0.0);
  return acc;
}

double log_rho_ambient(const KleinContext& ctx, const IntVec& x) {
  const Vec v = ctx.basis.columns * x.cast<double>();
  const double s = ctx.params.s;
  return -kPi * (v - ctx.params.c).squaredNorm() / (s * s);
}

double log_sum_exp(const std::vector<double>& logs) {
  const double m = *std::max_element(logs.begin(), logs.end());
  double acc = 0.0;
  for (double v : logs) acc += std::exp(v - m);
  return m + std::log(acc);
}

}  // namespace

KleinContext make_klein_context(const Basis& basis, const GaussianParams& params) {
  if (!(params.s > 0)) {
    throw ValidationError("klein: width s must be positive");
  }
  if (params.c.size() != basis.ambient_dim()) {
    throw ValidationError("klein: center dimension mismatch");
  }
  KleinContext ctx;
  ctx.basis = basis;
  ctx.qr = qr_decompose(basis);
  ctx.params = params;
  ctx.c_prime = ctx.qr.Q.transpose() * params.c;
  ctx.s_i.resize(static_cast<std::size_t>(basis.rank()));
  for (int i = 0; i < basis.rank(); ++i) {
    ctx.s_i[static_cast<std::size_t>(i)] = params.s / ctx.qr.R(i, i);
  }
  return ctx;
}

KleinDraw klein_sample(const KleinContext& ctx, SplitMix64& rng) {
  const int n = ctx.rank();
  IntVec x = IntVec::Zero(n);
  for (int i = n - 1; i >= 0; --i) {
    x(i) = sample_dgauss_z(ctx.s_i[static_cast<std::size_t>(i)],
                           mu_level(ctx, x, i), rng);
  }
  return {x, ctx.basis.columns * x.cast<double>()};
}

double log_klein_pmf(const KleinContext& ctx, const IntVec& x) {
  if (x.size() != ctx.rank()) {
    throw ValidationError("klein_pmf: coefficient dimension mismatch");
  }
  return log_rho_ambient(ctx, x) - log_denominator(ctx, x);
}

double klein_pmf(const KleinContext& ctx, const IntVec& x) {
  return std::exp(log_klein_pmf(ctx, x));
}

double acceptance_prob(const KleinContext& ctx, const IntVec& x) {
  const double log_a = log_denominator(ctx, x) - log_centered_denominator(ctx);
  return std::min(1.0, std::exp(log_a));
}

TruncatedSupport build_truncated_support(const KleinContext& ctx, double radius,
                                         std::size_t max_points) {
  TruncatedSupport sup;
  sup.radius = radius;
  sup.points = enumerate_ball(ctx.basis, ctx.params.c, radius, max_points);
  if (sup.points.empty()) {
    throw ValidationError("build_truncated_support: empty support (radius too small)");
  }
  const std::size_t count = sup.points.size();

  std::vector<double> log_q(count), log_rho_v(count);
  for (std::size_t i = 0; i < count; ++i) {
    log_q[i] = log_klein_pmf(ctx, sup.points[i]);
    log_rho_v[i] = log_rho_ambient(ctx, sup.points[i]);
  }
  const double log_qxr = log_sum_exp(log_q);
  const double log_rho_sum = log_sum_exp(log_rho_v);
  const double log_theta0 = log_centered_denominator(ctx);

  sup.q_mass.resize(count);
  sup.q_r.resize(count);
  sup.pi_r.resize(count);
  sup.accept.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    sup.q_mass[i] = std::exp(log_q[i]);
    sup.q_r[i] = std::exp(log_q[i] - log_qxr);
    sup.pi_r[i] = std::exp(log_rho_v[i] - log_rho_sum);
    // a(x) = prod_i rho_{s_i,mu_i}(Z)/rho_{s_i}(Z); the denominator product
    // is recovered from the pmf's ratio form.
    sup.accept[i] = std::min(1.0, std::exp(log_rho_v[i] - log_q[i] - log_theta0));
  }
  sup.q_xr = std::exp(log_qxr);
  sup.delta_r = std::exp(log_rho_sum - log_theta0);
  sup.p_r = std::min(1.0, std::exp(log_rho_sum - log_theta0 - log_qxr));

  // Full-lattice mass by brute force over a 4R ball; alpha_r stays unset
  // when the sum has not converged or the enumeration would explode.
  try {
    auto outer = enumerate_ball(ctx.basis, ctx.params.c, 4.0 * radius, max_points);
    std::vector<double> log_outer(outer.size());
    std::vector<double> log_inner3;
    const double r3 = 3.0 * radius;
    for (std::size_t i = 0; i < outer.size(); ++i) {
      log_outer[i] = log_rho_ambient(ctx, outer[i]);
      const Vec v = ctx.basis.columns * outer[i].cast<double>();
      if ((v - ctx.params.c).norm() <= r3) log_inner3.push_back(log_outer[i]);
    }
    const double log_mass4 = log_sum_exp(log_outer);
    const double log_mass3 = log_sum_exp(log_inner3);
    if (std::exp(log_mass3 - log_mass4) >= 1.0 - 1e-12) {
      sup.alpha_r = std::exp(log_rho_sum - log_mass4);
    }
  } catch (const SizeLimitError&) {
  }
  return sup;
}

RejectionDraw classical_rejection_sample(const TruncatedSupport& support,
                                         const KleinContext& ctx, SplitMix64& rng) {
  if (!(support.p_r > 0)) {
    throw ValidationError("classical_rejection_sample: p_R must be positive");
  }
  std::uint64_t trials = 0;
  std::uint64_t redraws = 0;
  for (;;) {
    KleinDraw draw = klein_sample(ctx, rng);
    if ((draw.v - ctx.params.c).norm() > support.radius) {
      ++redraws;
      continue;
    }
    ++trials;
    if (rng.next_double() < acceptance_prob(ctx, draw.x)) {
      return {std::move(draw.x), std::move(draw.v), trials, redraws};
    }
  }
}

std::vector<IntVec> imhk_sample(const KleinContext& ctx, std::uint64_t steps,
                                SplitMix64& rng, const std::optional<IntVec>& x0) {
  if (steps < 1) {
    throw ValidationError("imhk_sample: steps must be >= 1");
  }
  IntVec state = x0.has_value() ? *x0 : klein_sample(ctx, rng).x;
  if (state.size() != ctx.rank()) {
    throw ValidationError("imhk_sample: start state dimension mismatch");
  }
  // Acceptance ratio pi(y)Q(x)/(pi(x)Q(y)) telescopes to the ratio of the
  // pmf denominators, i.e. a(y)/a(x).
  double log_w_state = log_denominator(ctx, state);
  std::vector<IntVec> chain;
  chain.reserve(steps);
  for (std::uint64_t t = 0; t < steps; ++t) {
    KleinDraw prop = klein_sample(ctx, rng);
    const double log_w_prop = log_denominator(ctx, prop.x);
    if (std::log(rng.next_double()) < log_w_prop - log_w_state) {
      state = prop.x;
      log_w_state = log_w_prop;
    }
    chain.push_back(state);
  }
  return chain;
}

DeltaResult delta(const KleinContext& ctx) {
  const double radius =
      tail_radius(ctx.basis.ambient_dim(), ctx.params.s, 1e-13);
  std::vector<IntVec> points;
  try {
    points = enumerate_ball(ctx.basis, ctx.params.c, radius, (1u << 22));
  } catch (const SizeLimitError& e) {
    throw SizeLimitError("delta: lattice mass sum did not converge within the "
                         "enumeration cap", e.count);
  }
  if (points.empty()) {
    throw ValidationError("delta: no lattice points within the tail radius");
  }
  std::vector<double> logs(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    logs[i] = log_rho_ambient(ctx, points[i]);
  }
  const double log_mass = log_sum_exp(logs);
  const double log_delta = log_mass - log_centered_denominator(ctx);
  const double value = std::min(1.0, std::exp(log_delta));
  return {value, std::max(0.0, -log_delta / std::numbers::ln2)};
}

}  // namespace latgauss
