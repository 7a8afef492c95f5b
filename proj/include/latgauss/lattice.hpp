#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "latgauss/common.hpp"

namespace latgauss {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using IntMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

// Lattice basis: n linearly independent columns in R^m, m >= n.
struct Basis {
  Mat columns;  // m x n

  int ambient_dim() const { return static_cast<int>(columns.rows()); }
  int rank() const { return static_cast<int>(columns.cols()); }
};

struct QRFactorization {
  Mat Q;  // m x n, orthonormal columns
  Mat R;  // n x n, upper triangular, positive diagonal
};

struct GramSchmidtProfile {
  std::vector<double> norms;  // ||b_i^*|| = r_ii
};

// Thin QR with the sign convention r_ii > 0. Throws on rank deficiency
// (detected as |r_ii| <= 1e-9).
QRFactorization qr_decompose(const Basis& basis);

GramSchmidtProfile gram_schmidt_profile(const Basis& basis);

// Column-style Hermite normal form of an integer matrix (column lattice is
// preserved). Result is lower column echelon with positive pivots and
// reduced entries to the right of each pivot; zero columns are dropped.
// All arithmetic is exact; throws ValidationError on int64 overflow.
IntMat hnf(const IntMat& M);

// Basis of L_q(A) = {z in Z^m : z = A x mod q}: column HNF of [A | qI].
Basis qary_primal_basis(const IntMat& A, std::int64_t q);

// Basis of L_q^perp(A) = {z in Z^m : A^T z = 0 mod q}, built from the
// column HNF of the stacked system [[A^T, qI_n], [I_m, 0]]: columns whose
// top block vanishes generate exactly the mod-q kernel.
Basis qary_dual_basis(const IntMat& A, std::int64_t q);

// Exact membership test for integer lattices given an integer basis.
bool lattice_contains(const IntMat& basis, const IntVec& z);

struct LLLResult {
  Basis basis;
  IntMat transform;  // unimodular U with output = input * U
};

LLLResult lll_reduce(const Basis& basis, double delta = 0.99);

// All x in Z^n with ||Bx - c|| <= R, sorted lexicographically. Depth-first
// interval pruning on the R-factor, coordinates n..1. Throws SizeLimitError
// beyond max_points.
std::vector<IntVec> enumerate_ball(const Basis& basis, const Vec& center,
                                   double radius,
                                   std::size_t max_points = (1u << 20));

struct ShortestVectorResult {
  IntVec coefficients;
  Vec vector;
  double norm;
};

// Nonzero lattice vector of minimal norm; LLL preprocessing followed by
// radius-shrinking enumeration. Intended for toy dimensions (n <= 24).
ShortestVectorResult shortest_vector(const Basis& basis);

// Rounds a numerically integral matrix to exact integers; throws if any
// entry is farther than tol from an integer.
IntMat to_integer_matrix(const Mat& M, double tol = 1e-6);

// Sum of two integer lattices in the same ambient space (HNF of the
// concatenated generators).
IntMat lattice_sum(const IntMat& a, const IntMat& b);

}  // namespace latgauss
