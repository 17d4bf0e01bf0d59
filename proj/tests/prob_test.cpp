#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rib/prob.hpp"
#include "support/instances.hpp"

using namespace rib;
using Approx = doctest::Approx;

TEST_CASE("shannon entropy of simple distributions") {
  CHECK(shannon_entropy(Distribution::uniform(4)) == 2.0);
  CHECK(shannon_entropy(Distribution(Eigen::Vector3d(0.0, 1.0, 0.0))) == 0.0);
  const Distribution px(Eigen::Matrix<double, 5, 1>(0.25, 0.25, 0.25, 0.125, 0.125));
  CHECK(shannon_entropy(px) == Approx(2.25).epsilon(1e-15));
}

TEST_CASE("renyi entropy examples") {
  for (double a : {0.1, 0.5, 0.9, 1.0}) {
    CHECK(renyi_entropy(Distribution::uniform(2), RenyiOrder(a)) == Approx(1.0).epsilon(1e-14));
  }
  CHECK(renyi_entropy(Distribution(Eigen::Vector2d(1.0, 0.0)), RenyiOrder(0.5)) == 0.0);

  // 2 log2(1 + 1/sqrt 2), frozen from a 40-digit evaluation.
  constexpr double kHalfOrder = 1.5431066063272239;
  const Distribution p(Eigen::Vector3d(0.25, 0.5, 0.25));
  CHECK(std::abs(renyi_entropy(p, RenyiOrder(0.5)) - kHalfOrder) <= 1e-15);
}

TEST_CASE("renyi entropy works in extended precision") {
  using Big = boost::multiprecision::cpp_bin_float_50;
  rib::Vector<Big> p(3);
  p << Big(1) / 4, Big(1) / 2, Big(1) / 4;
  const Big h = renyi_entropy(p, RenyiOrder(0.5));
  const Big closed = 2 * boost::multiprecision::log2(1 + 1 / boost::multiprecision::sqrt(Big(2)));
  CHECK(boost::multiprecision::abs(h - closed) < Big("1e-45"));
  CHECK(std::abs(static_cast<double>(h) - 1.5431066063272239) < 1e-15);
}

TEST_CASE("renyi order validation") {
  CHECK_THROWS_AS(RenyiOrder(0.0), ValidationError);
  CHECK_THROWS_AS(RenyiOrder(1.5), ValidationError);
  CHECK_THROWS_AS(RenyiOrder(-0.2), ValidationError);
  CHECK_THROWS_AS(RenyiOrder(std::nan("")), ValidationError);
  CHECK(RenyiOrder(1.0).is_shannon());
  CHECK_FALSE(RenyiOrder(0.999).is_shannon());
}

TEST_CASE("kl divergence") {
  const Distribution half = Distribution::uniform(2);
  const Distribution point(Eigen::Vector2d(1.0, 0.0));
  CHECK(kl_divergence(half, half) == 0.0);
  CHECK(kl_divergence(point, half) == Approx(1.0));
  CHECK(std::isinf(kl_divergence(half, point)));
  CHECK(kl_divergence(half, point) > 1e300);
  CHECK_THROWS_AS(kl_divergence(half, Distribution::uniform(3)), ValidationError);
}

TEST_CASE("mutual information examples") {
  Eigen::Vector2d a(0.3, 0.7);
  Eigen::Vector3d b(0.2, 0.5, 0.3);
  CHECK(mutual_information(JointDistribution(a * b.transpose())) == Approx(0.0).epsilon(1e-14));
  CHECK(mutual_information(JointDistribution(Eigen::Matrix2d{{0.5, 0.0}, {0.0, 0.5}})) == 1.0);

  Eigen::MatrixXd t1a = Eigen::MatrixXd::Zero(4, 5);
  t1a(0, 0) = 0.25;
  t1a.block(1, 1, 2, 2).setConstant(0.125);
  t1a.block(3, 3, 1, 2).setConstant(0.125);
  CHECK(std::abs(mutual_information(JointDistribution(t1a)) - 1.5) <= 1e-12);
}

TEST_CASE("distribution validation and renormalization") {
  CHECK_THROWS_AS(Distribution(Eigen::VectorXd(0)), ValidationError);
  CHECK_THROWS_AS(Distribution(Eigen::Vector2d(-0.1, 1.1)), ValidationError);
  CHECK_THROWS_WITH_AS(Distribution(Eigen::Vector2d(0.4, 0.5)), doctest::Contains("sum=0.900000"),
                       ValidationError);
  const Distribution nearly(Eigen::Vector2d(0.5, 0.5 + 5e-10));
  CHECK(std::abs(nearly.masses().sum() - 1.0) <= 1e-15);

  CHECK_THROWS_WITH_AS(JointDistribution(Eigen::Matrix2d{{0.5, 0.0}, {0.5, 0.0}}),
                       doctest::Contains("column 2"), ValidationError);
  CHECK_THROWS_WITH_AS(JointDistribution(Eigen::Matrix2d{{0.6, 0.5}, {-0.1, 0.0}}),
                       doctest::Contains("row 2, column 1"), ValidationError);
  CHECK_THROWS_WITH_AS(JointDistribution(Eigen::Matrix2d{{0.4, 0.2}, {0.2, 0.1}}),
                       doctest::Contains("sum=0.900000"), ValidationError);
}

TEST_CASE("renyi entropy is sandwiched between shannon entropy and log2 of the alphabet") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> order(0.01, 0.99);
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + t % 10;
    const auto p = testing::random_distribution(rng, n, t % 2 == 0);
    const RenyiOrder a(order(rng));
    const double h = shannon_entropy(p);
    const double r = renyi_entropy(p, a);
    CHECK(h <= r + 1e-12);
    CHECK(r <= std::log2(n) + 1e-12);
  }
}

TEST_CASE("renyi entropy is non-increasing in the order") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 500; ++t) {
    const auto p = testing::random_distribution(rng, 2 + t % 7, t % 3 != 0);
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 10; ++k) {
      const double h = renyi_entropy(p, RenyiOrder(k / 10.0));
      CHECK(h <= prev + 1e-12);
      prev = h;
    }
  }
}

TEST_CASE("renyi entropy is continuous at the shannon limit") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 500; ++t) {
    const auto p = testing::random_distribution(rng, 2 + t % 9);
    CHECK(std::abs(renyi_entropy(p, RenyiOrder(1.0 - 1e-4)) - shannon_entropy(p)) <= 1e-3);
  }
}

TEST_CASE("kl divergence is non-negative and vanishes only on equal distributions") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 500; ++t) {
    const int n = 2 + t % 6;
    const auto p = testing::random_distribution(rng, n, t % 2 == 0);
    const auto q = testing::random_distribution(rng, n);
    CHECK(kl_divergence(p, q) > 0.0);
    CHECK(kl_divergence(p, p) == Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("mutual information is invariant under row and column permutations") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 200; ++t) {
    const auto j = testing::random_joint(rng, 5, 5);
    std::vector<int> rows(static_cast<std::size_t>(j.y_size())), cols(static_cast<std::size_t>(j.x_size()));
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    Eigen::MatrixXd permuted = j.matrix()(rows, cols);
    CHECK(mutual_information(JointDistribution(permuted)) ==
          Approx(mutual_information(j)).epsilon(1e-12));
  }
}

TEST_CASE("renyi entropy stays accurate for orders within rounding of 1") {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 200; ++t) {
    const auto p = testing::random_distribution(rng, 2 + t % 9, t % 2 == 0);
    const double h = shannon_entropy(p);
    for (double a : {0.1 + 0.15 * 6, 1.0 - 1e-15, 1.0 - 1e-12, 1.0 - 1e-9}) {
      CHECK(std::abs(renyi_entropy(p, RenyiOrder(a)) - h) <= 1e-6);
    }
  }
}

TEST_CASE("point masses have zero entropy even with rounding in the total") {
  const Eigen::Vector3d near_point(0.0, 1.0 + 2.2e-16, 0.0);
  for (double a : {0.1, 0.5, 0.999}) CHECK(renyi_entropy(near_point, RenyiOrder(a)) == 0.0);
  CHECK(shannon_entropy(near_point) == 0.0);
  const Eigen::Matrix<double, 3, 1> column(0.2, 0.3, 0.5 + 1e-16);
  CHECK(mutual_information(column) == 0.0);
  CHECK(mutual_information(Eigen::Matrix<double, 1, 3>(0.2, 0.3, 0.5)) == 0.0);
}
