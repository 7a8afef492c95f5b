#include <doctest.h>

#include <cmath>
#include <vector>

#include "latgauss/gaussian.hpp"
#include "test_util.hpp"

using namespace latgauss;

namespace {

Vec make_vec(std::initializer_list<double> vals) {
  Vec v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("rho basics") {
  const Vec zero2 = make_vec({0.0, 0.0});
  CHECK(rho(make_vec({0.3, -0.7}), 2.0, make_vec({0.3, -0.7})) == doctest::Approx(1.0));
  CHECK(rho(make_vec({1.0, 0.0}), 1.0, zero2) ==
        doctest::Approx(std::exp(-testutil::kPi)).epsilon(1e-14));
  CHECK(rho(make_vec({1.0, 1.0}), std::sqrt(2.0), zero2) ==
        doctest::Approx(std::exp(-testutil::kPi)).epsilon(1e-14));
  CHECK_THROWS_AS(rho(make_vec({1.0}), 1.0, zero2), ValidationError);
}

TEST_CASE("rho_z against brute-force sums") {
  CHECK(rho_z(1.0, 0.0) ==
        doctest::Approx(testutil::brute_rho_z(1.0, 0.0, 20)).epsilon(1e-14));
  CHECK(rho_z(2.0, 0.3) ==
        doctest::Approx(testutil::brute_rho_z(2.0, 0.3, 30)).epsilon(1e-15));
  // center-maximality and symmetry/periodicity
  CHECK(rho_z(1.0, 0.0) >= rho_z(1.0, 0.5));
  CHECK(rho_z(1.0, 0.37) == doctest::Approx(rho_z(1.0, -0.37)).epsilon(1e-14));
  CHECK(rho_z(1.0, 0.37) == doctest::Approx(rho_z(1.0, 1.37)).epsilon(1e-14));

  for (double s : {0.3, 0.8, 1.0, 2.0, 5.0}) {
    for (double mu : {0.0, 0.1, 0.5, -2.3}) {
      CAPTURE(s);
      CAPTURE(mu);
      CHECK(rho_z(s, mu) ==
            doctest::Approx(testutil::brute_rho_z(s, mu, 80)).epsilon(1e-13));
    }
  }
}

TEST_CASE("jacobi theta3") {
  CHECK(jacobi_theta3(2.0) == doctest::Approx(1.0037349).epsilon(1e-6));
  CHECK(jacobi_theta3(1.0) ==
        doctest::Approx(testutil::brute_rho_z(1.0, 0.0, 20)).epsilon(1e-14));
  CHECK(jacobi_theta3(1.0) == doctest::Approx(1.0864348).epsilon(1e-6));
  CHECK(jacobi_theta3(50.0) == doctest::Approx(1.0).epsilon(1e-12));
  // strictly decreasing
  CHECK(jacobi_theta3(0.5) > jacobi_theta3(1.0));
  CHECK(jacobi_theta3(1.0) > jacobi_theta3(2.0));
  CHECK(jacobi_theta3(2.0) > 1.0);
}

TEST_CASE("rho_z center bound matches theta3") {
  for (double s : {0.5, 1.0, 2.0, 4.0}) {
    for (double mu : {0.0, 0.2, 0.5, 0.9}) {
      CHECK(rho_z(s, mu) <= rho_z(s, 0.0) * (1.0 + 1e-12));
    }
    CHECK(rho_z(s, 0.0) ==
          doctest::Approx(jacobi_theta3(1.0 / (s * s))).epsilon(1e-12));
  }
}

TEST_CASE("tail_radius formula and monotonicity") {
  const double expected = std::sqrt(2.0 / (2.0 * testutil::kPi)) +
                          std::sqrt(std::log(100.0) / testutil::kPi);
  CHECK(tail_radius(2, 1.0, 0.01) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(tail_radius(2, 2.0, 0.01) ==
        doctest::Approx(2.0 * tail_radius(2, 1.0, 0.01)).epsilon(1e-14));
  CHECK(tail_radius(3, 1.0, 0.01) > tail_radius(2, 1.0, 0.01));
  CHECK(tail_radius(2, 1.0, 1e-4) > tail_radius(2, 1.0, 1e-2));
  CHECK_THROWS_AS(tail_radius(2, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(tail_radius(2, 1.0, 1.0), ValidationError);
}

TEST_CASE("tail bound holds on Z^1 and Z^2 grids") {
  for (double s : {0.8, 1.0, 2.0}) {
    for (double eps : {1e-2, 1e-4}) {
      CAPTURE(s);
      CAPTURE(eps);
      // m = 1
      {
        const double radius = tail_radius(1, s, eps);
        double inside = 0.0, total = 0.0;
        for (long k = -60; k <= 60; ++k) {
          const double mass = std::exp(-testutil::kPi * k * k / (s * s));
          total += mass;
          if (std::abs(static_cast<double>(k)) <= radius) inside += mass;
        }
        CHECK(total - inside <= eps * total);
      }
      // m = 2
      {
        const double radius = tail_radius(2, s, eps);
        double inside = 0.0, total = 0.0;
        for (long a = -40; a <= 40; ++a) {
          for (long b = -40; b <= 40; ++b) {
            const double r2 = static_cast<double>(a * a + b * b);
            const double mass = std::exp(-testutil::kPi * r2 / (s * s));
            total += mass;
            if (std::sqrt(r2) <= radius) inside += mass;
          }
        }
        CHECK(total - inside <= eps * total);
      }
    }
  }
}

TEST_CASE("sample_dgauss_z concentrates for tiny widths") {
  SplitMix64 rng(42);
  for (int i = 0; i < 2000; ++i) {
    CHECK(sample_dgauss_z(0.05, 7.0, rng) == 7);
  }
}

TEST_CASE("sample_dgauss_z chi-square goodness of fit") {
  struct Config {
    double s, mu;
  };
  for (const Config& cfg : {Config{1.0, 0.0}, Config{1.0, 0.37}, Config{3.0, -2.4}}) {
    CAPTURE(cfg.s);
    CAPTURE(cfg.mu);
    SplitMix64 rng(777);
    const long lo = static_cast<long>(std::floor(cfg.mu - 12 * cfg.s - 12));
    const long hi = static_cast<long>(std::ceil(cfg.mu + 12 * cfg.s + 12));
    const std::size_t bins = static_cast<std::size_t>(hi - lo + 1);
    std::vector<std::int64_t> observed(bins, 0);
    const std::int64_t draws = 100000;
    for (std::int64_t i = 0; i < draws; ++i) {
      const std::int64_t k = sample_dgauss_z(cfg.s, cfg.mu, rng);
      REQUIRE(k >= lo);
      REQUIRE(k <= hi);
      ++observed[static_cast<std::size_t>(k - lo)];
    }
    std::vector<double> expected(bins, 0.0);
    const double denom = testutil::brute_rho_z(cfg.s, cfg.mu, 200);
    for (std::size_t b = 0; b < bins; ++b) {
      const double k = static_cast<double>(lo + static_cast<long>(b));
      expected[b] =
          std::exp(-testutil::kPi * (k - cfg.mu) * (k - cfg.mu) / (cfg.s * cfg.s)) /
          denom;
    }
    const double p = testutil::chi_square_p_value(observed, expected, draws);
    CHECK(p > 1e-3);
  }
}

TEST_CASE("sample_dgauss_z reflection symmetry at mu=1/2") {
  SplitMix64 rng(5);
  std::int64_t zeros = 0, ones = 0;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const std::int64_t k = sample_dgauss_z(1.0, 0.5, rng);
    if (k == 0) ++zeros;
    if (k == 1) ++ones;
  }
  // Pr[0] = Pr[1] by reflection; allow 4 sigma.
  const double p0 = static_cast<double>(zeros) / draws;
  const double p1 = static_cast<double>(ones) / draws;
  CHECK(std::abs(p0 - p1) < 4.0 * std::sqrt(0.5 / draws));
}

TEST_CASE("tv_distance") {
  Pmf p{{{0}, 1.0}};
  Pmf q{{{1}, 1.0}};
  CHECK(tv_distance(p, p) == doctest::Approx(0.0));
  CHECK(tv_distance(p, q) == doctest::Approx(1.0));
  Pmf a{{{0}, 0.5}, {{1}, 0.5}};
  Pmf b{{{0}, 0.25}, {{1}, 0.25}, {{2}, 0.5}};
  CHECK(tv_distance(a, b) == doctest::Approx(0.5));
  CHECK(tv_distance(a, b) == doctest::Approx(tv_distance(b, a)));
  Pmf bad{{{0}, -0.1}};
  CHECK_THROWS_AS(tv_distance(bad, p), ValidationError);
}
