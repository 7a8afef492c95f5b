#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "latgauss/samplers.hpp"

namespace latgauss {

// Dense amplitudes over (support index, coin bit); index 2*i + coin.
// The global sign of the amplification iterate is tracked separately so
// amplitude comparisons against closed forms stay phase-free.
struct StateVector {
  std::vector<std::complex<double>> amplitudes;
  const TruncatedSupport* support = nullptr;
  int global_sign = 1;

  double norm2() const;
};

enum class RotationDirection { kForward, kInverse };

struct QueryStats {
  std::uint64_t oracle_calls = 0;    // O_{Q_R} and its inverse, per attempt
  std::uint64_t rotation_calls = 0;  // R_a and its inverse, per attempt
  std::uint64_t iterations = 0;      // amplification iterates per attempt
  std::uint64_t attempts = 0;        // measure-and-retry rounds
  double success_prob = 0.0;         // coin-1 probability at measurement
};

// |Q_R>|0>: amplitudes sqrt(Q_R(x)) on coin 0.
StateVector prepare_proposal(const TruncatedSupport& support);

// Per-point acceptance rotation: (x,0) -> sqrt(1-a)|x,0> + sqrt(a)|x,1>.
void apply_rotation(StateVector& state, RotationDirection direction);

// S_0 = I - 2|0><0| on the full register pair (first support point, coin 0).
void apply_reflection_zero(StateVector& state);

// S_Pi = I - 2 Pi with Pi the projector onto coin = 1.
void apply_reflection_target(StateVector& state);

// Proposal-preparation unitary extended to the whole support register: a
// Householder completion of |0> -> sum sqrt(Q_R(x))|x>, applied coin-wise.
void apply_proposal_oracle(StateVector& state, RotationDirection direction);

// One amplification iterate U = -A S_0 A^dagger S_Pi with A = R_a (O ox I).
void aa_iterate(StateVector& state);

// Iterate count k* = max(0, round(pi/(4 asin(sqrt(p))) - 1/2)); ties round
// to even. Guarantees sin^2((2k*+1) theta) >= max(p, 1-p).
std::uint64_t optimal_iterations(double p);

// ceil(ln(2/eps) / sqrt(p_min)): the fixed-point schedule usable when only
// a lower bound on p is certified. Query accounting only; the simulator
// always knows p exactly.
std::uint64_t fixed_point_iterations(double p_min, double eps);

enum class QrsMode { kOptimal, kFixedPoint };

struct QrsResult {
  IntVec x;
  Vec v;
  QueryStats stats;
};

// Full pipeline: prepare, rotate, iterate, measure the coin then the
// support register; a coin-0 outcome retries from scratch. Conditioned on
// coin 1 the output is exactly pi_R-distributed.
QrsResult run_qrs(const TruncatedSupport& support, const KleinContext& ctx,
                  SplitMix64& rng, QrsMode mode = QrsMode::kOptimal,
                  double fixed_point_eps = 1e-3);

// ceil(log2 |X_R|) + 1: coefficient register plus the accept coin.
int qubit_count(std::size_t support_size);

}  // namespace latgauss
