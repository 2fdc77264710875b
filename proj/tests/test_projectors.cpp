#include <doctest.h>

#include <cmath>

#include "dgswp/projectors.hpp"
#include "test_util.hpp"

using namespace dgswp;

TEST_SUITE("projectors") {

TEST_CASE("linear projection is the dot product") {
  Vec theta(2);
  theta << 1.0, 0.0;
  const auto proj = Projector::linear(theta);
  Vec x(2);
  x << 3.0, 7.0;
  CHECK(proj.project_one(x) == 3.0);
  CHECK(proj.homogeneous());
}

TEST_CASE("horospherical values match the closed form") {
  Vec theta(2);
  theta << 1.0, 0.0;
  const auto proj = Projector::horospherical(theta);
  CHECK(proj.project_one(Vec::Zero(2)) == doctest::Approx(0.0).epsilon(1e-15));
  Vec half = theta / 2.0;
  // log(1/4) - log(3/4) = log(1/3)
  CHECK(proj.project_one(half) == doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-12));

  Vec boundary(2);
  boundary << 1.0, 0.0;
  Mat row(1, 2);
  row.row(0) = boundary.transpose();
  CHECK_THROWS_AS(proj.project(row), std::invalid_argument);
}

TEST_CASE("horospherical construction normalizes theta") {
  Vec t(2);
  t << 2.0, 0.0;
  const auto proj = Projector::horospherical(t);
  CHECK(proj.theta()[0] == 1.0);
  CHECK(proj.theta()[1] == 0.0);
  // the setter retracts as well
  Vec v(2);
  v << 0.0, -3.0;
  const auto moved = proj.with_theta(v);
  CHECK(moved.theta().norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(moved.theta()[1] == -1.0);
}

TEST_CASE("mlp parameter count matches independent counting") {
  const std::vector<Index> sizes{2, 64, 16, 1};
  // Count weight and bias slots layer by layer.
  Index expected = 0;
  for (std::size_t l = 1; l < sizes.size(); ++l) expected += sizes[l] * (sizes[l - 1] + 1);
  CHECK(expected == 1249);
  CHECK(Projector::mlp_param_count(sizes) == expected);

  RngStream rng(0);
  const auto proj = Projector::mlp_init_he(sizes, rng);
  CHECK(proj.param_count() == expected);
}

TEST_CASE("zero mlp maps everything to zero") {
  const std::vector<Index> sizes{3, 8, 1};
  RngStream rng(1);
  auto proj = Projector::mlp_init_he(sizes, rng);
  proj = proj.with_theta(Vec::Zero(proj.param_count()));
  const Mat pts = test::random_points(10, 3, rng);
  CHECK(proj.project(pts).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single-layer identity mlp coincides with the linear projector") {
  RngStream rng(2);
  Vec w(4);
  for (Index i = 0; i < 4; ++i) w[i] = rng.normal();
  Vec theta(5);
  theta.head(4) = w;
  theta[4] = 0.0;  // bias
  const auto net = Projector::mlp_from_theta({4, 1}, theta, Activation::identity);
  const auto lin = Projector::linear(w);
  const Mat pts = test::random_points(20, 4, rng);
  CHECK((net.project(pts) - lin.project(pts)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("theta round trips exactly") {
  RngStream rng(3);
  auto proj = Projector::mlp_init_he({2, 16, 1}, rng);
  const Vec v = rng.normal_vector(proj.param_count());
  const auto set = proj.with_theta(v);
  CHECK((set.theta() - v).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(proj.with_theta(Vec::Zero(3)), std::invalid_argument);
}

TEST_CASE("linear projector is exactly 1-homogeneous for dyadic scalings") {
  RngStream rng(4);
  const Vec theta = rng.normal_vector(5);
  const auto proj = Projector::linear(theta);
  const Mat pts = test::random_points(30, 5, rng);
  const Vec base = proj.project(pts);

  const Vec half = proj.with_theta(0.5 * theta).project(pts);
  CHECK((half - 0.5 * base).cwiseAbs().maxCoeff() == 0.0);

  const Vec tripled = proj.with_theta(3.0 * theta).project(pts);
  CHECK((tripled - 3.0 * base).cwiseAbs().maxCoeff() <
        1e-12 * base.cwiseAbs().maxCoeff());
}

TEST_CASE("mlp batch evaluation equals per-point evaluation") {
  RngStream rng(5);
  const auto proj = Projector::mlp_init_he({3, 32, 8, 1}, rng);
  const Mat pts = test::random_points(25, 3, rng);
  const Vec batch = proj.project(pts);
  for (Index i = 0; i < pts.rows(); ++i)
    CHECK(std::abs(batch[i] - proj.project_one(pts.row(i).transpose())) < 1e-12);
}

TEST_CASE("projection is deterministic") {
  RngStream rng(6);
  const auto proj = Projector::mlp_init_he({2, 8, 1}, rng, Activation::selu);
  const Mat pts = test::random_points(10, 2, rng);
  CHECK((proj.project(pts) - proj.project(pts)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("he initialization has the expected scale") {
  RngStream rng(7);
  const auto proj = Projector::mlp_init_he({100, 1}, rng);
  const Vec w = proj.theta().head(100);
  const Scalar std_dev = std::sqrt(w.squaredNorm() / 100.0);
  CHECK(std_dev == doctest::Approx(std::sqrt(2.0 / 100.0)).epsilon(0.3));
  CHECK(proj.theta()[100] == 0.0);  // bias
}

TEST_CASE("dimension mismatch is rejected") {
  const auto proj = Projector::linear(Vec::Ones(3));
  CHECK_THROWS_AS(proj.project(Mat::Zero(2, 2)), std::invalid_argument);
  RngStream rng(9);
  CHECK_THROWS_AS(Projector::mlp_init_he({4}, rng), std::invalid_argument);
}

TEST_CASE("json round trip") {
  RngStream rng(8);
  const auto proj = Projector::mlp_init_he({2, 8, 1}, rng, Activation::selu);
  const auto back = projector_from_json(projector_to_json(proj));
  CHECK(back.kind() == ProjectorKind::mlp);
  CHECK(back.activation() == Activation::selu);
  CHECK((back.theta() - proj.theta()).cwiseAbs().maxCoeff() == 0.0);
}

}  // TEST_SUITE
