#pragma once

#include <cstdint>
#include <vector>

#include "latgauss/lattice.hpp"
#include "latgauss/rng.hpp"

namespace latgauss {

// Error-coordinate law for LWE instances.
struct ErrorLaw {
  enum class Kind { kDiscreteGaussian, kBoundedUniform, kPointMass };
  Kind kind = Kind::kDiscreteGaussian;
  double width = 1.0;       // Gaussian width s for kDiscreteGaussian
  std::int64_t bound = 1;   // uniform on [-bound, bound] for kBoundedUniform
  std::int64_t value = 0;   // constant for kPointMass
};

struct LweInstance {
  IntMat A;  // m x n, entries in [0, q)
  IntVec b;  // length m, entries in [0, q)
  IntVec s;  // secret, retained for testing
  IntVec e;  // error, retained for testing
  std::int64_t q = 0;
  ErrorLaw chi;
};

struct AttackSplit {
  int n_guess = 0;
  int n_dual = 0;
  std::vector<int> permutation;  // column ordering; identity when empty
};

// Short vectors in L_q^perp(A_dual), rows of the score sum.
struct SampleList {
  std::vector<IntVec> W;
};

LweInstance gen_lwe(int m, int n, std::int64_t q, const ErrorLaw& chi,
                    SplitMix64& rng);

// g_W(y) = (1/N) sum_j cos(2 pi <w_j, y> / q).
double score(const SampleList& W, const IntVec& y, std::int64_t q);

struct AttackResult {
  IntVec guess;                 // recovered s_guess (empty when n_guess = 0)
  double best_score = 0.0;      // N * g_W at the winner
  std::vector<double> scores;   // per-candidate F, lexicographic order
};

// Exhaustive loop over Z_q^{n_guess}; F >= F_max keeps the latest maximum.
// Guard: q^{n_guess} <= 10^6 candidates.
AttackResult run_attack(const LweInstance& instance, const AttackSplit& split,
                        const SampleList& W, bool keep_scores = false);

struct SeparationReport {
  bool ok = false;
  double margin = 0.0;   // lhs - (2 delta + eta)
  double lambda1 = 0.0;  // shortest vector of the sum lattice
  double tau = 0.0;      // (1/s) sqrt(m / 2 pi)
  bool radius_ok = false;  // lambda1 >= tau + ||e||
};

// Score-separation precondition: lambda1(sum lattice) >= tau + ||e|| and
// rho_{1/s}(e) - rho_{1/s}(lambda1 - ||e|| - tau) > 2 delta + eta, where
// rho_{1/s} at a point v means exp(-pi s^2 ||v||^2).
SeparationReport separation_check(const Basis& sum_lattice, double e_norm,
                                  double s, double delta, double eta);

// Lower bound 1 - q^m 2^{-c_exp N delta^2} - eps_tail, clamped to [0,1].
double success_bound(double n_samples, double delta, std::int64_t q, int m,
                     double eps_tail, double c_exp);

}  // namespace latgauss
