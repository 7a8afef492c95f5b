#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latgauss/lattice.hpp"

namespace latgauss {

enum class BkzCostModel { kCoreSvpClassical, kCoreSvpQuantum, kGateCount };

// Attack parameters in the shape of the published comparison tables.
struct SchemeParams {
  std::string name;
  int n_lwe = 0;
  std::int64_t q = 0;
  int m = 0;
  int n_guess = 0;
  int n_dual = 0;
  int beta = 0;
  double s = 0.0;
  std::optional<double> n_log2;  // log2 of the sample count N
  double eps_tail = 1e-3;
  // log2 of the candidate count per guessed coordinate. Defaults to
  // log2(q); the modulus-switching rows guess binary coordinates.
  std::optional<double> guess_bits_per_coord;
};

struct CostReport {
  double bits_search = 0.0;
  double bits_bkz = 0.0;
  double bits_sampling_classical = 0.0;
  double bits_sampling_qrs = 0.0;
  double bits_total_classical = 0.0;
  double bits_total_qrs = 0.0;
  double log2_inv_delta = 0.0;
  double alpha_r = 1.0;
  double n_log2 = 0.0;
};

struct FalconBoundRow {
  double gamma = 0.0;
  double s_over_bmax = 0.0;      // sqrt(gamma)
  double sigma_over_bmax = 0.0;  // sqrt(gamma / 2 pi)
  double mcmc_bound = 0.0;       // theta3(gamma)^n (1 + 2 eps)
  double qrs_bound = 0.0;        // theta3(gamma)^{n/2} sqrt(1 + 2 eps)
  bool below_smoothing_warning = false;  // gamma < 1
};

// Geometric-series model of a blocksize-beta reduced basis of an m-dim
// q-ary lattice with k q-vectors (volume q^k): ||b_i^*|| =
// delta_beta^{m-2i+1} vol^{1/m}, clamped per coordinate into [1, q].
GramSchmidtProfile gsa_profile(int m, int beta, std::int64_t q, int k);

double gsa_root_hermite(int beta);

// log2(1/Delta) = sum_i log2 rho_{width/||b_i^*||}(Z) - log2 rho_width(L),
// with the lattice mass approximated by the Gaussian-heuristic value
// max(1, width^m / vol).
double delta_from_profile(const GramSchmidtProfile& profile, double width);

double bkz_cost_bits(int m, int beta, BkzCostModel model);

// Knobs the tables never pin down, exposed with the defaults used for the
// published comparisons.
struct DualCostOptions {
  BkzCostModel bkz_model = BkzCostModel::kCoreSvpClassical;
  double c_exp = 2.0;           // Hoeffding-style constant of the N bound
  double poly_bits = 0.0;       // log2 of the poly(m,n) search factor
  std::optional<double> delta;  // separation delta for the auto-N rule
};

CostReport dual_cost(const SchemeParams& params, const DualCostOptions& options = {});

std::vector<FalconBoundRow> falcon_bounds(int n, const std::vector<double>& gammas,
                                          double eps);

// Negacyclic matrix C(p): row i holds x^i p mod (x^d + 1) with sign wrap.
IntMat negacyclic_matrix(const std::vector<std::int64_t>& p);

struct NtruCheckResult {
  Basis basis;  // 2d x 2d block basis [[C(g), -C(f)], [C(G), -C(F)]]^T
  bool ok = false;
};

// Builds the trapdoor block basis and verifies f G - g F = q in
// Z[x]/(x^d + 1). d must be a power of two.
NtruCheckResult ntru_basis_check(const std::vector<std::int64_t>& f,
                                 const std::vector<std::int64_t>& g,
                                 const std::vector<std::int64_t>& F,
                                 const std::vector<std::int64_t>& G,
                                 std::int64_t q, int d);

struct FalconProfileBound {
  double gamma = 0.0;
  double mcmc_bound = 0.0;
  double qrs_bound = 0.0;
};

// gamma = (s / B_max)^2; errors when s < B_max (outside the gamma >= 1 regime).
FalconProfileBound falcon_profile_bound(double b_max, double s, int n, double eps);

// Built-in parameter presets matching the published comparison rows.
std::vector<SchemeParams> kyber_presets(bool modulus_switching);

// Published attack-cost figures the presets are compared against.
struct ReferenceCosts {
  double classical = 0.0;
  double qrs = 0.0;
};
ReferenceCosts reference_costs(const std::string& scheme, bool modulus_switching);

}  // namespace latgauss
