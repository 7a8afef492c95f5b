#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "latgauss/common.hpp"
#include "latgauss/rng.hpp"

namespace latgauss {

using Vec = Eigen::VectorXd;

// Width s and center c of the Gaussian mass function
// rho_{s,c}(x) = exp(-pi * ||x - c||^2 / s^2).
struct GaussianParams {
  double s = 1.0;
  Vec c;
};

// Truncation control for one-dimensional theta sums. Summation always stops
// once the next term falls below relative_cutoff times the partial sum;
// the hard window max(ceil(12 s), 12) bounds the work for huge widths.
struct ThetaConfig {
  double relative_cutoff = 1e-17;
};

double rho(const Vec& x, double s, const Vec& c);

// rho_{s,mu}(Z) = sum_k exp(-pi (k - mu)^2 / s^2).
double rho_z(double s, double mu, const ThetaConfig& cfg = {});
double log_rho_z(double s, double mu, const ThetaConfig& cfg = {});

// Jacobi theta ϑ3(tau) = sum_k exp(-pi tau k^2), tau > 0.
double jacobi_theta3(double tau, const ThetaConfig& cfg = {});
double log_jacobi_theta3(double tau, const ThetaConfig& cfg = {});

// Exact inverse-CDF sampler for the discrete Gaussian D_{Z,s,mu}, enumerated
// over the window |k - mu| <= max(12 s, 12) whose mass deficit is below
// 1e-30 relative and therefore statistically invisible.
std::int64_t sample_dgauss_z(double s, double mu, SplitMix64& rng);

// Radius R = s (sqrt(m / 2pi) + sqrt(ln(1/eps_tail) / pi)) such that the
// Gaussian mass of any m-dimensional lattice outside the R-ball is at most
// eps_tail times the total. Logarithm is natural.
double tail_radius(int m, double s, double eps_tail);

// Probability mass functions keyed by integer coefficient vectors.
using Pmf = std::map<std::vector<std::int64_t>, double>;

// (1/2) sum |p - q| over the union of supports; missing keys count as 0.
double tv_distance(const Pmf& p, const Pmf& q);

}  // namespace latgauss
