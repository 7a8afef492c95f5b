#include "latgauss/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace latgauss {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw ValidationError("integer overflow in exact lattice arithmetic");
  }
  return out;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) {
    throw ValidationError("integer overflow in exact lattice arithmetic");
  }
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw ValidationError("integer overflow in exact lattice arithmetic");
  }
  return out;
}

// col_j -= q * col_p, exact.
void col_axpy(IntMat& M, Eigen::Index j, Eigen::Index p, std::int64_t q) {
  if (q == 0) return;
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    M(r, j) = checked_sub(M(r, j), checked_mul(q, M(r, p)));
  }
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t mod_reduce(std::int64_t a, std::int64_t q) {
  std::int64_t r = a % q;
  return r < 0 ? r + q : r;
}

}  // namespace

QRFactorization qr_decompose(const Basis& basis) {
  const auto& B = basis.columns;
  const int n = basis.rank();
  if (n == 0 || basis.ambient_dim() < n) {
    throw ValidationError("qr_decompose: need m >= n >= 1");
  }
  Eigen::HouseholderQR<Mat> qr(B);
  Mat Q = qr.householderQ() * Mat::Identity(B.rows(), n);
  Mat R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    if (R(i, i) < 0) {
      R.row(i) = -R.row(i);
      Q.col(i) = -Q.col(i);
    }
    if (std::abs(R(i, i)) <= 1e-9) {
      throw ValidationError("qr_decompose: rank-deficient basis");
    }
  }
  return {std::move(Q), std::move(R)};
}

GramSchmidtProfile gram_schmidt_profile(const Basis& basis) {
  QRFactorization qr = qr_decompose(basis);
  GramSchmidtProfile profile;
  profile.norms.resize(static_cast<std::size_t>(basis.rank()));
  for (int i = 0; i < basis.rank(); ++i) {
    profile.norms[static_cast<std::size_t>(i)] = qr.R(i, i);
  }
  return profile;
}

IntMat hnf(const IntMat& M) {
  IntMat H = M;
  const Eigen::Index rows = H.rows();
  const Eigen::Index cols = H.cols();
  Eigen::Index pivot = 0;
  for (Eigen::Index r = 0; r < rows && pivot < cols; ++r) {
    // GCD-eliminate row r across columns >= pivot until one nonzero is left.
    for (;;) {
      Eigen::Index jmin = -1;
      for (Eigen::Index j = pivot; j < cols; ++j) {
        if (H(r, j) != 0 &&
            (jmin < 0 || std::abs(H(r, j)) < std::abs(H(r, jmin)))) {
          jmin = j;
        }
      }
      if (jmin < 0) break;  // row is zero past the pivot block
      bool others = false;
      for (Eigen::Index j = pivot; j < cols; ++j) {
        if (j == jmin || H(r, j) == 0) continue;
        col_axpy(H, j, jmin, H(r, j) / H(r, jmin));
        others = others || H(r, j) != 0;
      }
      if (!others) {
        H.col(jmin).swap(H.col(pivot));
        if (H(r, pivot) < 0) H.col(pivot) = -H.col(pivot);
        // Canonical form: entries left of the pivot reduced into [0, pivot).
        for (Eigen::Index j = 0; j < pivot; ++j) {
          col_axpy(H, j, pivot, floor_div(H(r, j), H(r, pivot)));
        }
        ++pivot;
        break;
      }
    }
  }
  return H.leftCols(pivot);
}

Basis qary_primal_basis(const IntMat& A, std::int64_t q) {
  if (q < 2) throw ValidationError("qary_primal_basis: q must be >= 2");
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  IntMat M(m, n + m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) M(i, j) = mod_reduce(A(i, j), q);
  }
  M.rightCols(m) = IntMat::Identity(m, m) * q;
  IntMat H = hnf(M);
  if (H.cols() != m) {
    throw ValidationError("qary_primal_basis: unexpected rank");
  }
  return Basis{H.cast<double>()};
}

Basis qary_dual_basis(const IntMat& A, std::int64_t q) {
  if (q < 2) throw ValidationError("qary_dual_basis: q must be >= 2");
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  // Columns of S generate {(A^T z + q y, z)}; those with vanishing top
  // block carry exactly the z with A^T z = 0 mod q.
  IntMat S = IntMat::Zero(n + m, m + n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) S(i, j) = mod_reduce(A(j, i), q);
    S(i, m + i) = q;
  }
  for (Eigen::Index j = 0; j < m; ++j) S(n + j, j) = 1;
  IntMat H = hnf(S);
  if (H.cols() != m + n) {
    throw ValidationError("qary_dual_basis: unexpected rank");
  }
  // First n pivots live in the top block; the remaining m columns have a
  // zero top block and their bottom parts form the kernel basis.
  for (Eigen::Index j = n; j < m + n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (H(i, j) != 0) {
        throw ValidationError("qary_dual_basis: echelon structure violated");
      }
    }
  }
  IntMat K = H.block(n, n, m, m);
  return Basis{hnf(K).cast<double>()};
}

bool lattice_contains(const IntMat& basis, const IntVec& z) {
  // Assumes `basis` is in column HNF (echelon). Solve basis * y = z exactly.
  IntVec residual = z;
  Eigen::Index row = 0;
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    while (row < basis.rows() && basis(row, j) == 0) {
      if (residual(row) != 0) return false;
      ++row;
    }
    if (row == basis.rows()) return false;
    if (residual(row) % basis(row, j) != 0) return false;
    const std::int64_t y = residual(row) / basis(row, j);
    if (y != 0) {
      for (Eigen::Index r = row; r < basis.rows(); ++r) {
        residual(r) = checked_sub(residual(r), checked_mul(y, basis(r, j)));
      }
    }
    ++row;
  }
  for (Eigen::Index r = row; r < basis.rows(); ++r) {
    if (residual(r) != 0) return false;
  }
  return true;
}

LLLResult lll_reduce(const Basis& basis, double delta) {
  if (!(delta > 0.25 && delta < 1.0)) {
    throw ValidationError("lll_reduce: delta must lie in (0.25, 1)");
  }
  Mat B = basis.columns;
  const int n = basis.rank();
  IntMat U = IntMat::Identity(n, n);

  Mat Bstar = B;
  Mat mu = Mat::Identity(n, n);
  std::vector<double> norms2(static_cast<std::size_t>(n));
  auto gram_schmidt = [&]() {
    for (int i = 0; i < n; ++i) {
      Bstar.col(i) = B.col(i);
      for (int j = 0; j < i; ++j) {
        mu(i, j) = B.col(i).dot(Bstar.col(j)) / norms2[static_cast<std::size_t>(j)];
        Bstar.col(i) -= mu(i, j) * Bstar.col(j);
      }
      norms2[static_cast<std::size_t>(i)] = Bstar.col(i).squaredNorm();
      if (norms2[static_cast<std::size_t>(i)] <= 0) {
        throw ValidationError("lll_reduce: rank-deficient basis");
      }
    }
  };
  gram_schmidt();

  int k = 1;
  while (k < n) {
    for (int j = k - 1; j >= 0; --j) {
      const std::int64_t q = std::llround(mu(k, j));
      if (q != 0) {
        B.col(k) -= static_cast<double>(q) * B.col(j);
        for (int r = 0; r < n; ++r) {
          U(r, k) = checked_sub(U(r, k), checked_mul(q, U(r, j)));
        }
        gram_schmidt();
      }
    }
    const double lhs = norms2[static_cast<std::size_t>(k)];
    const double rhs = (delta - mu(k, k - 1) * mu(k, k - 1)) *
                       norms2[static_cast<std::size_t>(k - 1)];
    if (lhs >= rhs) {
      ++k;
    } else {
      B.col(k).swap(B.col(k - 1));
      U.col(k).swap(U.col(k - 1));
      gram_schmidt();
      k = std::max(k - 1, 1);
    }
  }
  return {Basis{std::move(B)}, std::move(U)};
}

namespace {

struct BallEnumerator {
  const Mat& R;
  const Vec& target;  // c' = Q^T c
  double budget2;     // R^2 minus the out-of-span component
  std::size_t cap;
  int n;
  std::vector<std::int64_t> x;
  std::vector<IntVec> out;

  void dfs(int i, double partial) {
    if (i < 0) {
      if (out.size() >= cap) {
        throw SizeLimitError("enumerate_ball: point cap exceeded",
                             static_cast<std::uint64_t>(out.size()) + 1);
      }
      IntVec v(n);
      for (int j = 0; j < n; ++j) v(j) = x[static_cast<std::size_t>(j)];
      out.push_back(std::move(v));
      return;
    }
    double shifted = target(i);
    for (int j = i + 1; j < n; ++j) {
      shifted -= R(i, j) * static_cast<double>(x[static_cast<std::size_t>(j)]);
    }
    const double t = shifted / R(i, i);
    const double rem = budget2 - partial;
    if (rem < 0) return;
    const double halfwidth = std::sqrt(rem) / R(i, i);
    const double slack = 1e-9 * (1.0 + std::abs(t) + halfwidth);
    const auto lo = static_cast<std::int64_t>(std::ceil(t - halfwidth - slack));
    const auto hi = static_cast<std::int64_t>(std::floor(t + halfwidth + slack));
    for (std::int64_t xi = lo; xi <= hi; ++xi) {
      const double d = R(i, i) * (static_cast<double>(xi) - t);
      if (partial + d * d > budget2 + slack) continue;
      x[static_cast<std::size_t>(i)] = xi;
      dfs(i - 1, partial + d * d);
    }
  }
};

}  // namespace

std::vector<IntVec> enumerate_ball(const Basis& basis, const Vec& center,
                                   double radius, std::size_t max_points) {
  if (!(radius > 0)) throw ValidationError("enumerate_ball: radius must be positive");
  if (center.size() != basis.ambient_dim()) {
    throw ValidationError("enumerate_ball: center dimension mismatch");
  }
  QRFactorization qr = qr_decompose(basis);
  const Vec cprime = qr.Q.transpose() * center;
  const double perp2 = (center - qr.Q * cprime).squaredNorm();
  const double budget2 = radius * radius - perp2;
  if (budget2 < 0) return {};

  BallEnumerator en{qr.R, cprime, budget2, max_points, basis.rank(), {}, {}};
  en.x.resize(static_cast<std::size_t>(basis.rank()));
  en.dfs(basis.rank() - 1, 0.0);

  std::sort(en.out.begin(), en.out.end(),
            [](const IntVec& a, const IntVec& b) {
              return std::lexicographical_compare(a.data(), a.data() + a.size(),
                                                  b.data(), b.data() + b.size());
            });
  return en.out;
}

namespace {

// Schnorr--Euchner style search for the shortest nonzero vector of the
// R-factor, shrinking the radius as better candidates appear. Candidates
// are visited nearest-to-interval-center first so good vectors prune early.
struct SvpSearch {
  const Mat& R;
  int n;
  double best2;
  std::vector<std::int64_t> x, best;

  void dfs(int i, double partial) {
    if (i < 0) {
      bool zero = std::all_of(x.begin(), x.end(),
                              [](std::int64_t v) { return v == 0; });
      if (!zero && partial < best2) {
        best2 = partial;
        best = x;
      }
      return;
    }
    double shifted = 0.0;
    for (int j = i + 1; j < n; ++j) {
      shifted -= R(i, j) * static_cast<double>(x[static_cast<std::size_t>(j)]);
    }
    const double t = shifted / R(i, i);
    const std::int64_t x0 = std::llround(t);
    for (std::int64_t step = 0;; ++step) {
      bool any = false;
      for (int sign : {+1, -1}) {
        if (step == 0 && sign < 0) continue;
        const std::int64_t xi = x0 + sign * step;
        const double d = R(i, i) * (static_cast<double>(xi) - t);
        const double sq = partial + d * d;
        if (sq <= best2 * (1.0 + 1e-12)) {
          any = true;
          x[static_cast<std::size_t>(i)] = xi;
          dfs(i - 1, sq);
        }
      }
      // The distance to t grows with step on both sides, so once neither
      // side fits the remaining budget nothing farther can fit either.
      if (!any && step >= 1) break;
    }
  }
};

}  // namespace

ShortestVectorResult shortest_vector(const Basis& basis) {
  const int n = basis.rank();
  if (n > 24) {
    throw ValidationError("shortest_vector: dimension cap (n <= 24) exceeded");
  }
  LLLResult red = lll_reduce(basis);
  QRFactorization qr = qr_decompose(red.basis);

  double best2 = std::numeric_limits<double>::infinity();
  int best_col = 0;
  for (int i = 0; i < n; ++i) {
    const double c2 = red.basis.columns.col(i).squaredNorm();
    if (c2 < best2) {
      best2 = c2;
      best_col = i;
    }
  }
  SvpSearch search{qr.R, n, best2 * (1.0 + 1e-9), {}, {}};
  search.x.assign(static_cast<std::size_t>(n), 0);
  search.best.assign(static_cast<std::size_t>(n), 0);
  search.best[static_cast<std::size_t>(best_col)] = 1;
  search.dfs(n - 1, 0.0);

  // Map back to coefficients of the input basis: output = input * U.
  IntVec coeff_red(n);
  for (int i = 0; i < n; ++i) coeff_red(i) = search.best[static_cast<std::size_t>(i)];
  IntVec coeff(n);
  for (int i = 0; i < n; ++i) {
    std::int64_t acc = 0;
    for (int j = 0; j < n; ++j) {
      acc = checked_add(acc, checked_mul(red.transform(i, j), coeff_red(j)));
    }
    coeff(i) = acc;
  }
  Vec v = basis.columns * coeff.cast<double>();
  return {coeff, v, v.norm()};
}

IntMat to_integer_matrix(const Mat& M, double tol) {
  IntMat out(M.rows(), M.cols());
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      const double r = std::nearbyint(M(i, j));
      if (std::abs(M(i, j) - r) > tol) {
        throw ValidationError("to_integer_matrix: entry is not integral");
      }
      out(i, j) = static_cast<std::int64_t>(r);
    }
  }
  return out;
}

IntMat lattice_sum(const IntMat& a, const IntMat& b) {
  if (a.rows() != b.rows()) {
    throw ValidationError("lattice_sum: ambient dimension mismatch");
  }
  IntMat M(a.rows(), a.cols() + b.cols());
  M.leftCols(a.cols()) = a;
  M.rightCols(b.cols()) = b;
  return hnf(M);
}

}  // namespace latgauss
