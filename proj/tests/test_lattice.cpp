#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "latgauss/lattice.hpp"
#include "latgauss/rng.hpp"
#include "test_util.hpp"

using namespace latgauss;

namespace {

Basis make_basis(std::initializer_list<std::initializer_list<double>> cols) {
  const int n = static_cast<int>(cols.size());
  const int m = static_cast<int>(cols.begin()->size());
  Mat B(m, n);
  int c = 0;
  for (const auto& col : cols) {
    int r = 0;
    for (double v : col) B(r++, c) = v;
    ++c;
  }
  return Basis{B};
}

IntMat random_int_matrix(int rows, int cols, std::int64_t lo, std::int64_t hi,
                         SplitMix64& rng) {
  IntMat M(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      M(i, j) = lo + static_cast<std::int64_t>(
                         rng.next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
  }
  return M;
}

std::int64_t hnf_determinant(const IntMat& H) {
  std::int64_t det = 1;
  Eigen::Index row = 0;
  for (Eigen::Index j = 0; j < H.cols(); ++j) {
    while (row < H.rows() && H(row, j) == 0) ++row;
    REQUIRE(row < H.rows());
    det *= H(row, j);
  }
  return det;
}

}  // namespace

TEST_CASE("qr_decompose identity and hand-checked 2x2") {
  {
    const Basis eye = make_basis({{1, 0}, {0, 1}});
    const QRFactorization qr = qr_decompose(eye);
    CHECK((qr.Q - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((qr.R - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  }
  {
    const Basis b = make_basis({{2, 0}, {1, 1}});
    const QRFactorization qr = qr_decompose(b);
    CHECK(qr.R(0, 0) == doctest::Approx(2.0));
    CHECK(qr.R(1, 1) == doctest::Approx(1.0));
  }
}

TEST_CASE("qr_decompose reconstruction and r_ii = GS norms on random bases") {
  SplitMix64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(4));
    Mat B(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        B(i, j) = static_cast<double>(static_cast<std::int64_t>(rng.next_below(21)) - 10);
      }
    }
    Basis basis{B};
    QRFactorization qr;
    try {
      qr = qr_decompose(basis);
    } catch (const ValidationError&) {
      continue;  // singular draw
    }
    CHECK(((qr.Q.transpose() * qr.Q) - Mat::Identity(n, n)).cwiseAbs().maxCoeff() <
          1e-10);
    CHECK((B - qr.Q * qr.R).cwiseAbs().maxCoeff() <
          1e-9 * std::max(1.0, B.cwiseAbs().maxCoeff()));

    // classical Gram-Schmidt, independently
    Mat gs = B;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        gs.col(i) -= (B.col(i).dot(gs.col(j)) / gs.col(j).squaredNorm()) * gs.col(j);
      }
      CHECK(qr.R(i, i) == doctest::Approx(gs.col(i).norm()).epsilon(1e-9));
    }
  }
}

TEST_CASE("qary dual basis of the zero matrix is the identity") {
  IntMat A = IntMat::Zero(3, 2);
  const Basis dual = qary_dual_basis(A, 5);
  CHECK((dual.columns - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("qary dual basis membership and determinant for A=(1,2)^T q=5") {
  IntMat A(2, 1);
  A << 1, 2;
  const Basis dual = qary_dual_basis(A, 5);
  const IntMat H = to_integer_matrix(dual.columns);
  CHECK(std::abs(hnf_determinant(H)) == 5);
  // every basis column satisfies z1 + 2 z2 = 0 mod 5
  for (int c = 0; c < 2; ++c) {
    const std::int64_t ip = H(0, c) + 2 * H(1, c);
    CHECK(ip % 5 == 0);
  }
  // brute force: lattice contains exactly the residue-class solutions
  for (std::int64_t z1 = -5; z1 <= 5; ++z1) {
    for (std::int64_t z2 = -5; z2 <= 5; ++z2) {
      IntVec z(2);
      z << z1, z2;
      const bool expected = ((z1 + 2 * z2) % 5 + 5) % 5 == 0;
      CHECK(lattice_contains(H, z) == expected);
    }
  }
  // q e_i always belongs
  for (int i = 0; i < 2; ++i) {
    IntVec z = IntVec::Zero(2);
    z(i) = 5;
    CHECK(lattice_contains(H, z));
  }
}

TEST_CASE("qary primal basis: membership and column-span semantics") {
  IntMat A(2, 1);
  A << 1, 2;
  const Basis primal = qary_primal_basis(A, 5);
  const IntMat H = to_integer_matrix(primal.columns);
  IntVec v(2);
  v << 1, 2;
  CHECK(lattice_contains(H, v));
  v << 5, 0;
  CHECK(lattice_contains(H, v));
  v << 1, 0;
  CHECK_FALSE(lattice_contains(H, v));

  // identity block: L_q(A) = Z^m iff A invertible mod q
  IntMat I2 = IntMat::Identity(2, 2);
  const Basis full = qary_primal_basis(I2, 7);
  const IntMat Hf = to_integer_matrix(full.columns);
  CHECK(std::abs(hnf_determinant(Hf)) == 1);
}

TEST_CASE("qary duality: (1/q) L_q^perp is the Euclidean dual of L_q") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 3 + static_cast<int>(rng.next_below(2));
    const int n = 1 + static_cast<int>(rng.next_below(2));
    const std::int64_t q = trial % 2 == 0 ? 5 : 9;  // prime and prime power
    const IntMat A = random_int_matrix(m, n, 0, q - 1, rng);
    const IntMat P = to_integer_matrix(qary_primal_basis(A, q).columns);
    const IntMat D = to_integer_matrix(qary_dual_basis(A, q).columns);
    // pairwise inner products of primal columns with (1/q) dual columns
    // must be integral, and the determinant product must equal q^m.
    for (Eigen::Index i = 0; i < P.cols(); ++i) {
      for (Eigen::Index j = 0; j < D.cols(); ++j) {
        std::int64_t ip = 0;
        for (Eigen::Index r = 0; r < m; ++r) ip += P(r, i) * D(r, j);
        CHECK(ip % q == 0);
      }
    }
    const double det_product = std::abs(static_cast<double>(hnf_determinant(P)) *
                                        static_cast<double>(hnf_determinant(D)));
    CHECK(det_product == doctest::Approx(std::pow(static_cast<double>(q), m)));
  }
}

TEST_CASE("lll_reduce: orthogonal basis unchanged up to sign") {
  const Basis b = make_basis({{3, 0}, {0, 2}});
  const LLLResult res = lll_reduce(b);
  CHECK(res.basis.columns.cwiseAbs().sum() == doctest::Approx(5.0));
  CHECK(std::abs(res.basis.columns(0, 0) * res.basis.columns(1, 1) -
                 res.basis.columns(0, 1) * res.basis.columns(1, 0)) ==
        doctest::Approx(6.0));
}

TEST_CASE("lll_reduce: skewed 2D basis satisfies Lovasz, preserves lattice") {
  const Basis skew = make_basis({{1, 0}, {1000000, 1}});
  const LLLResult res = lll_reduce(skew, 0.99);
  const QRFactorization qr = qr_decompose(res.basis);
  for (int k = 1; k < 2; ++k) {
    const double mu = qr.R(k - 1, k) / qr.R(k - 1, k - 1);
    CHECK(qr.R(k, k) * qr.R(k, k) >=
          (0.99 - mu * mu) * qr.R(k - 1, k - 1) * qr.R(k - 1, k - 1) - 1e-9);
    CHECK(std::abs(mu) <= 0.5 + 1e-9);
  }
  // same lattice: HNF equality and unimodular transform consistency
  const IntMat h_in = hnf(to_integer_matrix(skew.columns));
  const IntMat h_out = hnf(to_integer_matrix(res.basis.columns));
  CHECK(h_in == h_out);
  const Mat via_u = skew.columns * res.transform.cast<double>();
  CHECK((via_u - res.basis.columns).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("lll_reduce preserves random integer lattices") {
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(3));
    const IntMat M = random_int_matrix(n, n, -9, 9, rng);
    if (std::abs(M.cast<double>().determinant()) < 0.5) continue;
    const Basis b{M.cast<double>()};
    const LLLResult res = lll_reduce(b);
    CHECK(hnf(M) == hnf(to_integer_matrix(res.basis.columns)));
    // Lovasz condition along the whole profile
    const QRFactorization qr = qr_decompose(res.basis);
    for (int k = 1; k < n; ++k) {
      const double mu = qr.R(k - 1, k) / qr.R(k - 1, k - 1);
      CHECK(qr.R(k, k) * qr.R(k, k) >=
            (0.99 - mu * mu) * qr.R(k - 1, k - 1) * qr.R(k - 1, k - 1) - 1e-9);
    }
  }
}

TEST_CASE("enumerate_ball: 9 points in the unit lattice at R=1.5") {
  const Basis eye = make_basis({{1, 0}, {0, 1}});
  Vec c = Vec::Zero(2);
  const auto points = enumerate_ball(eye, c, 1.5);
  CHECK(points.size() == 9);
  // lexicographic order, first and last
  CHECK(points.front()(0) == -1);
  CHECK(points.front()(1) == -1);
  CHECK(points.back()(0) == 1);
  CHECK(points.back()(1) == 1);
}

TEST_CASE("enumerate_ball: empty result when the ball misses the lattice") {
  const Basis eye = make_basis({{1, 0}, {0, 1}});
  Vec c(2);
  c << 0.5, 0.5;
  CHECK(enumerate_ball(eye, c, 0.3).empty());
}

TEST_CASE("enumerate_ball equals box brute force on random instances") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(3));
    IntMat M = random_int_matrix(n, n, -3, 3, rng);
    for (int i = 0; i < n; ++i) {
      if (M(i, i) == 0) M(i, i) = 1;
    }
    if (std::abs(M.cast<double>().determinant()) < 0.5) continue;
    const Basis basis{M.cast<double>()};
    Vec c(n);
    for (int i = 0; i < n; ++i) c(i) = rng.next_double() * 2.0 - 1.0;
    const double radius = 1.0 + rng.next_double() * 5.0;

    const auto points = enumerate_ball(basis, c, radius);
    std::set<std::vector<std::int64_t>> got;
    for (const auto& p : points) {
      CHECK((basis.columns * p.cast<double>() - c).norm() <= radius + 1e-12);
      std::vector<std::int64_t> key(p.data(), p.data() + p.size());
      CHECK(got.insert(key).second);  // duplicate-free
    }

    // brute force over a box wide enough to contain the ball preimage
    const double bound = radius * 40.0 + 10.0;
    std::set<std::vector<std::int64_t>> expected;
    std::vector<std::int64_t> x(static_cast<std::size_t>(n));
    const std::int64_t lim = static_cast<std::int64_t>(std::ceil(bound));
    auto rec = [&](auto&& self, int level) -> void {
      if (level == n) {
        Vec v = Vec::Zero(n);
        for (int i = 0; i < n; ++i) v += static_cast<double>(x[static_cast<std::size_t>(i)]) * basis.columns.col(i);
        if ((v - c).norm() <= radius) {
          expected.insert(x);
        }
        return;
      }
      for (std::int64_t t = -lim; t <= lim; ++t) {
        x[static_cast<std::size_t>(level)] = t;
        self(self, level + 1);
      }
    };
    if (std::pow(2.0 * static_cast<double>(lim) + 1.0, n) < 3e6) {
      rec(rec, 0);
      CHECK(got == expected);
    }
  }
}

TEST_CASE("enumerate_ball enforces the point cap") {
  const Basis eye = make_basis({{1, 0}, {0, 1}});
  Vec c = Vec::Zero(2);
  CHECK_THROWS_AS(enumerate_ball(eye, c, 50.0, 100), SizeLimitError);
}

TEST_CASE("shortest_vector on simple and q-ary lattices") {
  CHECK(shortest_vector(make_basis({{1, 0}, {0, 1}})).norm == doctest::Approx(1.0));
  CHECK(shortest_vector(make_basis({{2, 0}, {0, 2}})).norm == doctest::Approx(2.0));

  IntMat A(2, 1);
  A << 1, 2;
  const Basis dual = qary_dual_basis(A, 5);
  const auto res = shortest_vector(dual);
  // exhaustive check over ||z|| <= 5
  double best = 1e18;
  const IntMat H = to_integer_matrix(dual.columns);
  for (std::int64_t z1 = -5; z1 <= 5; ++z1) {
    for (std::int64_t z2 = -5; z2 <= 5; ++z2) {
      if (z1 == 0 && z2 == 0) continue;
      IntVec z(2);
      z << z1, z2;
      if (lattice_contains(H, z)) {
        best = std::min(best, std::sqrt(static_cast<double>(z1 * z1 + z2 * z2)));
      }
    }
  }
  CHECK(res.norm == doctest::Approx(best));
  // returned coefficients really produce the claimed vector
  CHECK((dual.columns * res.coefficients.cast<double>() - res.vector).norm() < 1e-9);
}

TEST_CASE("shortest_vector matches exhaustive search on random lattices") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(2));
    IntMat M = random_int_matrix(n, n, -6, 6, rng);
    if (std::abs(M.cast<double>().determinant()) < 0.5) continue;
    const Basis basis{M.cast<double>()};
    const auto res = shortest_vector(basis);
    // brute force coefficients in [-8, 8]^n
    double best = 1e18;
    std::vector<std::int64_t> x(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int level) -> void {
      if (level == n) {
        Vec v = Vec::Zero(n);
        bool zero = true;
        for (int i = 0; i < n; ++i) {
          v += static_cast<double>(x[static_cast<std::size_t>(i)]) * basis.columns.col(i);
          zero = zero && x[static_cast<std::size_t>(i)] == 0;
        }
        if (!zero) best = std::min(best, v.norm());
        return;
      }
      for (std::int64_t t = -8; t <= 8; ++t) {
        x[static_cast<std::size_t>(level)] = t;
        self(self, level + 1);
      }
    };
    rec(rec, 0);
    CHECK(res.norm == doctest::Approx(best).epsilon(1e-9));
  }
}

TEST_CASE("shortest_vector dimension cap") {
  Basis big{Mat::Identity(30, 30)};
  CHECK_THROWS_AS(shortest_vector(big), ValidationError);
}
