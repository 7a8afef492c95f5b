#include "latgauss/dual_attack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "latgauss/gaussian.hpp"

namespace latgauss {

namespace {

constexpr double kPi = std::numbers::pi;

std::int64_t mod_reduce(std::int64_t a, std::int64_t q) {
  std::int64_t r = a % q;
  return r < 0 ? r + q : r;
}

std::int64_t draw_error(const ErrorLaw& chi, SplitMix64& rng) {
  switch (chi.kind) {
    case ErrorLaw::Kind::kDiscreteGaussian:
      return sample_dgauss_z(chi.width, 0.0, rng);
    case ErrorLaw::Kind::kBoundedUniform:
      return static_cast<std::int64_t>(
                 rng.next_below(static_cast<std::uint64_t>(2 * chi.bound + 1))) -
             chi.bound;
    case ErrorLaw::Kind::kPointMass:
      return chi.value;
  }
  return 0;
}

}  // namespace

LweInstance gen_lwe(int m, int n, std::int64_t q, const ErrorLaw& chi,
                    SplitMix64& rng) {
  if (q < 2) throw ValidationError("gen_lwe: q must be >= 2");
  if (m < 1 || n < 1) throw ValidationError("gen_lwe: need m, n >= 1");
  LweInstance inst;
  inst.q = q;
  inst.chi = chi;
  inst.A.resize(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      inst.A(i, j) = static_cast<std::int64_t>(
          rng.next_below(static_cast<std::uint64_t>(q)));
    }
  }
  inst.s.resize(n);
  for (int j = 0; j < n; ++j) {
    inst.s(j) = static_cast<std::int64_t>(
        rng.next_below(static_cast<std::uint64_t>(q)));
  }
  inst.e.resize(m);
  for (int i = 0; i < m; ++i) inst.e(i) = draw_error(chi, rng);
  inst.b.resize(m);
  for (int i = 0; i < m; ++i) {
    std::int64_t acc = 0;
    for (int j = 0; j < n; ++j) {
      acc = (acc + inst.A(i, j) * inst.s(j)) % q;
    }
    inst.b(i) = mod_reduce(acc + inst.e(i), q);
  }
  return inst;
}

double score(const SampleList& W, const IntVec& y, std::int64_t q) {
  if (W.W.empty()) throw ValidationError("score: empty sample list");
  double acc = 0.0;
  for (const IntVec& w : W.W) {
    if (w.size() != y.size()) {
      throw ValidationError("score: dimension mismatch");
    }
    std::int64_t ip = 0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      ip = mod_reduce(ip + w(i) * mod_reduce(y(i), q), q);
    }
    acc += std::cos(2.0 * kPi * static_cast<double>(ip) / static_cast<double>(q));
  }
  return acc / static_cast<double>(W.W.size());
}

AttackResult run_attack(const LweInstance& instance, const AttackSplit& split,
                        const SampleList& W, bool keep_scores) {
  const int m = static_cast<int>(instance.A.rows());
  const int n = static_cast<int>(instance.A.cols());
  if (split.n_guess + split.n_dual != n) {
    throw ValidationError("run_attack: n_guess + n_dual must equal n");
  }
  if (split.n_guess < 0) throw ValidationError("run_attack: negative n_guess");

  std::vector<int> order(static_cast<std::size_t>(n));
  if (split.permutation.empty()) {
    for (int j = 0; j < n; ++j) order[static_cast<std::size_t>(j)] = j;
  } else if (static_cast<int>(split.permutation.size()) == n) {
    order = split.permutation;
  } else {
    throw ValidationError("run_attack: permutation length mismatch");
  }

  const std::int64_t q = instance.q;
  double candidates = 1.0;
  for (int j = 0; j < split.n_guess; ++j) candidates *= static_cast<double>(q);
  if (candidates > 1e6) {
    throw SizeLimitError("run_attack: guess-space cap (10^6) exceeded",
                         static_cast<std::uint64_t>(1e6));
  }

  AttackResult result;
  if (split.n_guess == 0) {
    result.guess = IntVec();
    result.best_score = score(W, instance.b, q) * static_cast<double>(W.W.size());
    return result;
  }

  // Residuals b - A_guess * s~ are updated incrementally as the candidate
  // steps through Z_q^{n_guess} in lexicographic order (last coordinate
  // fastest, odometer-style).
  IntVec cand = IntVec::Zero(split.n_guess);
  IntVec residual = instance.b;
  const auto total = static_cast<std::uint64_t>(candidates);

  IntVec best = cand;
  double best_f = -std::numeric_limits<double>::infinity();
  if (keep_scores) result.scores.reserve(total);

  for (std::uint64_t step = 0;; ++step) {
    double f = 0.0;
    for (const IntVec& w : W.W) {
      std::int64_t ip = 0;
      for (int i = 0; i < m; ++i) {
        ip = mod_reduce(ip + w(i) * residual(i), q);
      }
      f += std::cos(2.0 * kPi * static_cast<double>(ip) / static_cast<double>(q));
    }
    if (keep_scores) result.scores.push_back(f);
    if (f >= best_f) {
      best_f = f;
      best = cand;
    }
    if (step + 1 == total) break;
    // Advance the candidate and patch the residual by the changed columns.
    for (int j = split.n_guess - 1; j >= 0; --j) {
      const int col = order[static_cast<std::size_t>(j)];
      if (cand(j) + 1 < q) {
        cand(j) += 1;
        for (int i = 0; i < m; ++i) {
          residual(i) = mod_reduce(residual(i) - instance.A(i, col), q);
        }
        break;
      }
      // wrap: subtracting q-1 copies is the same as adding one copy back
      cand(j) = 0;
      for (int i = 0; i < m; ++i) {
        residual(i) = mod_reduce(residual(i) + instance.A(i, col) * (q - 1), q);
      }
    }
  }
  result.guess = best;
  result.best_score = best_f;
  return result;
}

SeparationReport separation_check(const Basis& sum_lattice, double e_norm,
                                  double s, double delta, double eta) {
  if (!(s > 0)) throw ValidationError("separation_check: s must be positive");
  if (e_norm < 0 || delta < 0 || eta < 0) {
    throw ValidationError("separation_check: negative argument");
  }
  const int m = sum_lattice.ambient_dim();
  SeparationReport report;
  report.lambda1 = shortest_vector(sum_lattice).norm;
  report.tau = (1.0 / s) * std::sqrt(static_cast<double>(m) / (2.0 * kPi));
  report.radius_ok = report.lambda1 >= report.tau + e_norm;

  // rho_{1/s} evaluated at a point of given norm: exp(-pi s^2 r^2).
  auto rho_point = [s](double r) { return std::exp(-kPi * s * s * r * r); };
  const double gap = report.lambda1 - e_norm - report.tau;
  const double lhs = rho_point(e_norm) - rho_point(gap);
  report.margin = lhs - (2.0 * delta + eta);
  report.ok = report.radius_ok && report.margin > 0.0;
  return report;
}

double success_bound(double n_samples, double delta, std::int64_t q, int m,
                     double eps_tail, double c_exp) {
  if (n_samples < 0 || delta < 0 || q < 2 || m < 1 || eps_tail < 0 || c_exp <= 0) {
    throw ValidationError("success_bound: argument out of range");
  }
  // q^m 2^{-c N delta^2} in the log2 domain to dodge overflow.
  const double log2_fail =
      static_cast<double>(m) * std::log2(static_cast<double>(q)) -
      c_exp * n_samples * delta * delta;
  const double fail = log2_fail > 1023.0 ? std::numeric_limits<double>::infinity()
                                         : std::exp2(log2_fail);
  const double bound = 1.0 - fail - eps_tail;
  return std::clamp(bound, 0.0, 1.0);
}

}  // namespace latgauss
