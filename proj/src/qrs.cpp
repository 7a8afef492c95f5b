#include "latgauss/qrs.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <numbers>

namespace latgauss {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> householder_direction(const TruncatedSupport& support) {
  // Completion of |0> -> sum_x sqrt(Q_R(x)) |x| as I - 2 w w^T. Returns an
  // empty vector when the proposal already equals |0> (single-point case).
  const std::size_t count = support.size();
  std::vector<double> w(count);
  const double q0 = std::sqrt(support.q_r[0]);
  const double norm2 = 2.0 * (1.0 - q0);
  if (norm2 < 1e-14) return {};
  w[0] = (1.0 - q0);
  for (std::size_t i = 1; i < count; ++i) w[i] = -std::sqrt(support.q_r[i]);
  const double inv_norm = 1.0 / std::sqrt(norm2);
  for (double& v : w) v *= inv_norm;
  return w;
}

}  // namespace

double StateVector::norm2() const {
  double acc = 0.0;
  for (const auto& a : amplitudes) acc += std::norm(a);
  return acc;
}

StateVector prepare_proposal(const TruncatedSupport& support) {
  StateVector state;
  state.support = &support;
  state.amplitudes.assign(2 * support.size(), {0.0, 0.0});
  for (std::size_t i = 0; i < support.size(); ++i) {
    state.amplitudes[2 * i] = std::sqrt(support.q_r[i]);
  }
  return state;
}

void apply_rotation(StateVector& state, RotationDirection direction) {
  const auto& support = *state.support;
  if (state.amplitudes.size() != 2 * support.size()) {
    throw ValidationError("apply_rotation: state/support size mismatch");
  }
  for (std::size_t i = 0; i < support.size(); ++i) {
    const double a = support.accept[i];
    const double ca = std::sqrt(std::max(0.0, 1.0 - a));
    const double sa = std::sqrt(a);
    auto& amp0 = state.amplitudes[2 * i];
    auto& amp1 = state.amplitudes[2 * i + 1];
    const auto old0 = amp0;
    const auto old1 = amp1;
    if (direction == RotationDirection::kForward) {
      amp0 = ca * old0 - sa * old1;
      amp1 = sa * old0 + ca * old1;
    } else {
      amp0 = ca * old0 + sa * old1;
      amp1 = -sa * old0 + ca * old1;
    }
  }
}

void apply_reflection_zero(StateVector& state) {
  state.amplitudes[0] = -state.amplitudes[0];
}

void apply_reflection_target(StateVector& state) {
  for (std::size_t i = 1; i < state.amplitudes.size(); i += 2) {
    state.amplitudes[i] = -state.amplitudes[i];
  }
}

void apply_proposal_oracle(StateVector& state, RotationDirection) {
  // The Householder completion is symmetric, so forward and inverse agree.
  const auto& support = *state.support;
  const std::vector<double> w = householder_direction(support);
  if (w.empty()) return;
  for (int coin = 0; coin < 2; ++coin) {
    std::complex<double> dot = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
      dot += w[i] * state.amplitudes[2 * i + static_cast<std::size_t>(coin)];
    }
    for (std::size_t i = 0; i < support.size(); ++i) {
      state.amplitudes[2 * i + static_cast<std::size_t>(coin)] -= 2.0 * w[i] * dot;
    }
  }
}

void aa_iterate(StateVector& state) {
  apply_reflection_target(state);
  apply_rotation(state, RotationDirection::kInverse);
  apply_proposal_oracle(state, RotationDirection::kInverse);
  apply_reflection_zero(state);
  apply_proposal_oracle(state, RotationDirection::kForward);
  apply_rotation(state, RotationDirection::kForward);
  state.global_sign = -state.global_sign;
}

std::uint64_t optimal_iterations(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw ValidationError("optimal_iterations: p must lie in (0,1]");
  }
  const double theta = std::asin(std::sqrt(p));
  const double k = std::nearbyint(kPi / (4.0 * theta) - 0.5);
  return k <= 0.0 ? 0 : static_cast<std::uint64_t>(k);
}

std::uint64_t fixed_point_iterations(double p_min, double eps) {
  if (!(p_min > 0.0 && p_min <= 1.0)) {
    throw ValidationError("fixed_point_iterations: p_min must lie in (0,1]");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw ValidationError("fixed_point_iterations: eps must lie in (0,1)");
  }
  return static_cast<std::uint64_t>(
      std::ceil(std::log(2.0 / eps) / std::sqrt(p_min)));
}

QrsResult run_qrs(const TruncatedSupport& support, const KleinContext& ctx,
                  SplitMix64& rng, QrsMode mode, double fixed_point_eps) {
  const std::uint64_t physical_k = optimal_iterations(support.p_r);
  // Fixed-point mode only changes the reported budget: the simulator knows
  // p_R exactly, so the amplification itself always runs on the optimal
  // schedule.
  const std::uint64_t recorded_k =
      mode == QrsMode::kOptimal
          ? physical_k
          : fixed_point_iterations(support.p_r, fixed_point_eps);

  QueryStats stats;
  stats.iterations = recorded_k;
  stats.oracle_calls = 1 + 2 * recorded_k;
  stats.rotation_calls = 1 + 2 * recorded_k;

  for (;;) {
    ++stats.attempts;
    StateVector state = prepare_proposal(support);
    apply_rotation(state, RotationDirection::kForward);
    for (std::uint64_t it = 0; it < physical_k; ++it) {
      aa_iterate(state);
    }
    double p1 = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
      p1 += std::norm(state.amplitudes[2 * i + 1]);
    }
    stats.success_prob = p1;
    if (rng.next_double() >= p1) {
      continue;  // coin came up 0: retry from scratch
    }
    double u = rng.next_double() * p1;
    std::size_t chosen = support.size() - 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
      acc += std::norm(state.amplitudes[2 * i + 1]);
      if (u < acc) {
        chosen = i;
        break;
      }
    }
    const IntVec& x = support.points[chosen];
    return {x, ctx.basis.columns * x.cast<double>(), stats};
  }
}

int qubit_count(std::size_t support_size) {
  if (support_size == 0) {
    throw ValidationError("qubit_count: empty support");
  }
  int bits = 0;
  while ((std::size_t{1} << bits) < support_size) ++bits;
  return bits + 1;
}

}  // namespace latgauss
