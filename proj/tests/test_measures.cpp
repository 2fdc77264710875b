#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include <Eigen/SVD>

#include "dgswp/measures.hpp"
#include "test_util.hpp"

using namespace dgswp;

namespace {

constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

Mat eight_means(Scalar radius) {
  Mat m(8, 2);
  for (Index k = 0; k < 8; ++k) {
    m(k, 0) = radius * std::cos(2.0 * kPi * static_cast<Scalar>(k) / 8.0);
    m(k, 1) = radius * std::sin(2.0 * kPi * static_cast<Scalar>(k) / 8.0);
  }
  return m;
}

}  // namespace

TEST_SUITE("measures") {

TEST_CASE("make_uniform basics") {
  Mat two(2, 2);
  two << 0, 0, 1, 1;
  const auto mu = make_uniform(two);
  CHECK(mu.weights()[0] == 0.5);
  CHECK(mu.weights()[1] == 0.5);

  Mat one(1, 1);
  one << 3.0;
  CHECK(make_uniform(one).weights()[0] == 1.0);

  RngStream rng(0);
  const auto big = test::random_uniform_measure(50, 2, rng);
  for (Index i = 0; i < 50; ++i) CHECK(big.weights()[i] == doctest::Approx(0.02).epsilon(1e-15));
  CHECK(big.weights().sum() == 1.0);

  CHECK_THROWS_AS(make_uniform(Mat(0, 2)), std::invalid_argument);
}

TEST_CASE("measure invariants rejected on construction") {
  Mat pts(2, 1);
  pts << 0.0, 1.0;
  Vec bad_sum(2);
  bad_sum << 0.6, 0.6;
  CHECK_THROWS_AS(DiscreteMeasure(pts, bad_sum), std::invalid_argument);
  Vec negative(2);
  negative << -0.2, 1.2;
  CHECK_THROWS_AS(DiscreteMeasure(pts, negative), std::invalid_argument);
  Mat outside(1, 2);
  outside << 1.0, 0.5;
  Vec w1(1);
  w1 << 1.0;
  CHECK_THROWS_AS(DiscreteMeasure(outside, w1, Geometry::poincare), std::invalid_argument);
}

TEST_CASE("eight gaussians: zero std gives exactly the circle means") {
  RngStream rng(1);
  const auto mu = gen_eight_gaussians(8, rng, 2.0, 0.0);
  const Mat means = eight_means(2.0);
  for (Index i = 0; i < 8; ++i)
    CHECK((mu.points().row(i) - means.row(i % 8)).norm() == 0.0);
  CHECK_THROWS_AS(gen_eight_gaussians(7, rng), std::invalid_argument);
}

TEST_CASE("eight gaussians: empirical mean near the origin") {
  RngStream rng(2);
  const auto mu = gen_eight_gaussians(800, rng);
  // Modes are balanced by construction, so only component noise remains.
  const Vec mean = mu.points().colwise().mean();
  CHECK(mean.norm() < 3.0 * 1.43 / std::sqrt(800.0));
}

TEST_CASE("eight gaussians: per-mode counts within the multinomial 5-sigma band") {
  RngStream rng(3);
  const auto mu = gen_eight_gaussians(500, rng);
  const Mat means = eight_means(2.0);
  std::vector<int> counts(8, 0);
  for (Index i = 0; i < mu.size(); ++i) {
    Index best = 0;
    Scalar best_d = (mu.points().row(i) - means.row(0)).norm();
    for (Index k = 1; k < 8; ++k) {
      const Scalar d = (mu.points().row(i) - means.row(k)).norm();
      if (d < best_d) { best_d = d; best = k; }
    }
    ++counts[static_cast<std::size_t>(best)];
  }
  // 5 sigma for Binomial(500, 1/8): sigma = sqrt(500 * 1/8 * 7/8) ~ 7.40.
  const Scalar sigma = std::sqrt(500.0 * (1.0 / 8.0) * (7.0 / 8.0));
  for (const int c : counts) CHECK(std::abs(c - 62.5) < 5.0 * sigma);
}

TEST_CASE("two moons at zero noise lie exactly on the arcs") {
  RngStream rng(4);
  const auto mu = gen_two_moons(300, 0.0, rng);
  for (Index i = 0; i < mu.size(); ++i) {
    const Vec p = mu.points().row(i).transpose();
    const Scalar d_upper = p[1] >= -1e-12 ? std::abs(p.norm() - 1.0) : 1e9;
    Vec q = p;
    q[0] -= 0.5;
    q[1] -= 0.5;
    const Scalar d_lower = q[1] <= 1e-12 ? std::abs(q.norm() - 1.0) : 1e9;
    CHECK(std::min(d_upper, d_lower) < 1e-12);
  }
}

TEST_CASE("hypercube samples stay in the unit cube") {
  RngStream rng(5);
  const auto mu = gen_hypercube_uniform(500, 2, rng);
  CHECK((mu.points().array() >= 0.0).all());
  CHECK((mu.points().array() <= 1.0).all());
}

TEST_CASE("swiss roll satisfies its parametric equation at zero noise") {
  RngStream rng(6);
  const auto mu = gen_swiss_roll(1000, 2, 0.0, rng);
  for (Index i = 0; i < mu.size(); ++i) {
    const Scalar r = mu.points().row(i).norm();
    const Scalar t = 4.0 * kPi * r;
    CHECK(mu.points()(i, 0) == doctest::Approx(r * std::cos(t)).epsilon(1e-9));
    CHECK(mu.points()(i, 1) == doctest::Approx(r * std::sin(t)).epsilon(1e-9));
    CHECK(r >= 0.25 - 1e-12);
    CHECK(r <= 1.0 + 1e-12);
  }
}

TEST_CASE("embedded swiss roll is a rotated planar spiral") {
  RngStream rng(7);
  const auto mu = gen_swiss_roll(200, 7, 0.0, rng);
  CHECK(mu.dim() == 7);
  // Rotation preserves norms, so the radius still encodes the parameter.
  for (Index i = 0; i < mu.size(); ++i) {
    const Scalar r = mu.points().row(i).norm();
    CHECK(r >= 0.25 - 1e-9);
    CHECK(r <= 1.0 + 1e-9);
  }
  // Points span exactly a 2-dimensional subspace.
  Eigen::JacobiSVD<Mat> svd(mu.points());
  CHECK(svd.singularValues()[1] > 1e-3);
  CHECK(svd.singularValues()[2] < 1e-9);
}

TEST_CASE("wrapped normal on the ball") {
  RngStream rng(8);
  Vec mean(2);
  mean << 0.4, -0.2;

  SUBCASE("tiny scale degenerates to the mean") {
    const auto mu = gen_wrapped_normal_poincare(50, mean, 1e-14, rng);
    for (Index i = 0; i < mu.size(); ++i)
      CHECK((mu.points().row(i).transpose() - mean).norm() < 1e-9);
  }

  SUBCASE("all samples stay strictly inside the ball") {
    const auto mu = gen_wrapped_normal_poincare(2000, mean, 1.5, rng);
    for (Index i = 0; i < mu.size(); ++i)
      CHECK(mu.points().row(i).norm() < 1.0 - 1e-13);
  }

  SUBCASE("centered samples have isotropic directions") {
    const Vec origin = Vec::Zero(2);
    const auto mu = gen_wrapped_normal_poincare(2000, origin, 0.7, rng);
    Vec mean_dir = Vec::Zero(2);
    for (Index i = 0; i < mu.size(); ++i)
      mean_dir += mu.points().row(i).transpose().normalized();
    CHECK((mean_dir / 2000.0).norm() < 0.1);
  }

  SUBCASE("mean outside the ball is rejected") {
    Vec bad(2);
    bad << 1.2, 0.0;
    CHECK_THROWS_AS(gen_wrapped_normal_poincare(10, bad, 0.5, rng), std::invalid_argument);
    CHECK_THROWS_AS(gen_wrapped_normal_poincare(10, mean, 0.0, rng), std::invalid_argument);
  }
}

TEST_CASE("generators are reproducible from the stream") {
  RngStream a(99, 3), b(99, 3);
  const auto m1 = gen_two_moons(64, 0.05, a);
  const auto m2 = gen_two_moons(64, 0.05, b);
  CHECK((m1.points() - m2.points()).cwiseAbs().maxCoeff() == 0.0);

  RngStream c(99, 3), d(99, 3);
  const auto g1 = gen_eight_gaussians(64, c);
  const auto g2 = gen_eight_gaussians(64, d);
  CHECK((g1.points() - g2.points()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("csv and json round trips") {
  RngStream rng(11);
  const auto mu = test::random_uniform_measure(17, 3, rng);

  const auto dir = std::filesystem::temp_directory_path() / "dgswp_measure_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "m.csv").string();
  save_measure_csv(mu, path);
  const auto back = load_measure_csv(path);
  CHECK((back.points() - mu.points()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.weights() - mu.weights()).cwiseAbs().maxCoeff() == 0.0);

  const auto js = measure_to_json(mu);
  const auto back2 = measure_from_json(js);
  CHECK((back2.points() - mu.points()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back2.geometry() == Geometry::euclidean);
  std::filesystem::remove_all(dir);
}

TEST_CASE("clamp_to_ball caps the norm") {
  Vec x(2);
  x << 3.0, 4.0;
  const Vec c = clamp_to_ball(x);
  CHECK(c.norm() == doctest::Approx(1.0 - 1e-12).epsilon(1e-15));
  Vec inside(2);
  inside << 0.1, 0.2;
  CHECK((clamp_to_ball(inside) - inside).norm() == 0.0);
}

}  // TEST_SUITE
