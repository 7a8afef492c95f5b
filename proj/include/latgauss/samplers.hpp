#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latgauss/gaussian.hpp"
#include "latgauss/lattice.hpp"
#include "latgauss/rng.hpp"

namespace latgauss {

// Everything Klein's randomized nearest-plane sampler needs, precomputed:
// QR factors, rotated center c' = Q^T c, and per-level widths s_i = s/r_ii.
struct KleinContext {
  Basis basis;
  QRFactorization qr;
  GaussianParams params;
  Vec c_prime;
  std::vector<double> s_i;

  int rank() const { return basis.rank(); }
};

KleinContext make_klein_context(const Basis& basis, const GaussianParams& params);

struct KleinDraw {
  IntVec x;  // coefficient vector
  Vec v;     // lattice vector Bx
};

// One pass of the randomized nearest-plane algorithm: coordinates sampled
// n..1 from D_{Z, s_i, mu_i(x_{>i})}.
KleinDraw klein_sample(const KleinContext& ctx, SplitMix64& rng);

// Probability that klein_sample returns x (the telescoping product of the
// one-dimensional conditional masses).
double klein_pmf(const KleinContext& ctx, const IntVec& x);
double log_klein_pmf(const KleinContext& ctx, const IntVec& x);

// Acceptance probability a(x) = prod_i rho_{s_i, mu_i(x_{>i})}(Z) / rho_{s_i}(Z),
// in [0,1] by center-maximality, and independent of the truncation radius.
double acceptance_prob(const KleinContext& ctx, const IntVec& x);

// The ball-truncated proposal/target pair with the constants that drive
// both rejection sampling and the amplified sampler:
//   Q_R   - Klein conditioned on the ball,
//   pi_R  - the truncated lattice Gaussian,
//   delta_r = rho_{s,c}(B X_R) / prod_i rho_{s_i}(Z),
//   p_r   = delta_r / Q(X_R), the pointwise domination constant,
//   alpha_r = retained Gaussian mass (set when the full normalizer
//             converges under brute-force summation over a 4R ball).
struct TruncatedSupport {
  std::vector<IntVec> points;  // lexicographic order; indexes every table
  std::vector<double> q_mass;  // Q(x), untruncated Klein pmf
  std::vector<double> q_r;     // Q_R(x)
  std::vector<double> pi_r;    // pi_R(x)
  std::vector<double> accept;  // a(x)
  double delta_r = 0.0;
  double q_xr = 0.0;  // Q(X_R)
  double p_r = 0.0;
  std::optional<double> alpha_r;
  double radius = 0.0;

  std::size_t size() const { return points.size(); }
};

TruncatedSupport build_truncated_support(const KleinContext& ctx, double radius,
                                         std::size_t max_points = (1u << 20));

struct RejectionDraw {
  IntVec x;
  Vec v;
  std::uint64_t trials;   // in-ball proposals until acceptance
  std::uint64_t redraws;  // Klein draws discarded for landing outside the ball
};

// von Neumann rejection: propose from Q_R (Klein re-drawn until inside the
// ball), accept with probability a(x). Output is exactly pi_R-distributed.
RejectionDraw classical_rejection_sample(const TruncatedSupport& support,
                                         const KleinContext& ctx, SplitMix64& rng);

// Independent Metropolis-Hastings with Klein proposals targeting the lattice
// Gaussian; returns the visited states x_1..x_steps (x0 excluded).
std::vector<IntVec> imhk_sample(const KleinContext& ctx, std::uint64_t steps,
                                SplitMix64& rng,
                                const std::optional<IntVec>& x0 = std::nullopt);

struct DeltaResult {
  double delta;           // rho_{s,c}(L) / prod_i rho_{s_i}(Z), in (0, 1]
  double log2_inv_delta;  // log2(1/delta)
};

// Exact small-dimension evaluation; the lattice mass is brute-forced over
// a ball large enough that the residual tail is below 1e-12 relative.
DeltaResult delta(const KleinContext& ctx);

}  // namespace latgauss
