#include "dgswp/measures.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/QR>

#include <nlohmann/json.hpp>

#include "dgswp/poincare.hpp"

namespace dgswp {

namespace {

constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

void check_weights(const Vec& w) {
  if (w.size() == 0) throw std::invalid_argument("measure: empty weight vector");
  if ((w.array() < 0.0).any()) throw std::invalid_argument("measure: negative weight");
  if (std::abs(w.sum() - 1.0) > 1e-9)
    throw std::invalid_argument("measure: weights do not sum to 1");
}

}  // namespace

std::string geometry_name(Geometry g) {
  return g == Geometry::euclidean ? "euclidean" : "poincare";
}

Geometry geometry_from_name(const std::string& name) {
  if (name == "euclidean") return Geometry::euclidean;
  if (name == "poincare") return Geometry::poincare;
  throw std::invalid_argument("unknown geometry: " + name);
}

DiscreteMeasure::DiscreteMeasure(Mat points, Vec weights, Geometry geometry)
    : points_(std::move(points)), weights_(std::move(weights)), geometry_(geometry) {
  if (points_.rows() != weights_.size())
    throw std::invalid_argument("measure: points/weights size mismatch");
  check_weights(weights_);
  if (geometry_ == Geometry::poincare) {
    for (Index i = 0; i < points_.rows(); ++i) {
      if (points_.row(i).norm() >= 1.0)
        throw std::invalid_argument("measure: ball point with norm >= 1");
    }
  }
}

bool DiscreteMeasure::uniform_weights(Scalar tol) const {
  const Scalar w = 1.0 / static_cast<Scalar>(size());
  return ((weights_.array() - w).abs() <= tol).all();
}

DiscreteMeasure DiscreteMeasure::with_points(Mat points) const {
  return DiscreteMeasure(std::move(points), weights_, geometry_);
}

Vec uniform_weights(Index n) {
  Vec w = Vec::Constant(n, 1.0 / static_cast<Scalar>(n));
  if (n > 1) w[n - 1] = 1.0 - w.head(n - 1).sum();
  return w;
}

DiscreteMeasure make_uniform(Mat points, Geometry geometry) {
  if (points.rows() == 0) throw std::invalid_argument("make_uniform: empty point list");
  return DiscreteMeasure(std::move(points), uniform_weights(points.rows()), geometry);
}

Vec clamp_to_ball(Vec x) {
  const Scalar n = x.norm();
  const Scalar max_norm = 1.0 - kBallBoundaryMargin;
  if (n >= max_norm) x *= max_norm / n;
  return x;
}

DiscreteMeasure gen_eight_gaussians(Index n, RngStream& rng, Scalar radius,
                                    Scalar component_std) {
  if (n < 8) throw std::invalid_argument("gen_eight_gaussians: n must be >= 8");
  Mat pts(n, 2);
  for (Index i = 0; i < n; ++i) {
    const Index mode = i % 8;
    const Scalar angle = 2.0 * kPi * static_cast<Scalar>(mode) / 8.0;
    pts(i, 0) = radius * std::cos(angle) + component_std * rng.normal();
    pts(i, 1) = radius * std::sin(angle) + component_std * rng.normal();
  }
  return make_uniform(std::move(pts));
}

DiscreteMeasure gen_two_moons(Index n, Scalar noise, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("gen_two_moons: n must be >= 1");
  Mat pts(n, 2);
  for (Index i = 0; i < n; ++i) {
    const Scalar t = kPi * rng.uniform();
    if (i % 2 == 0) {
      // upper arc, unit circle at the origin
      pts(i, 0) = std::cos(t);
      pts(i, 1) = std::sin(t);
    } else {
      // lower arc, unit circle offset by (0.5, 0.5)
      pts(i, 0) = 0.5 + std::cos(-t);
      pts(i, 1) = 0.5 + std::sin(-t);
    }
    pts(i, 0) += noise * rng.normal();
    pts(i, 1) += noise * rng.normal();
  }
  return make_uniform(std::move(pts));
}

DiscreteMeasure gen_swiss_roll(Index n, Index d, Scalar noise, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("gen_swiss_roll: n must be >= 1");
  if (d < 2) throw std::invalid_argument("gen_swiss_roll: d must be >= 2");
  Mat pts = Mat::Zero(n, d);
  for (Index i = 0; i < n; ++i) {
    const Scalar t = kPi + 3.0 * kPi * rng.uniform();
    const Scalar r = t / (4.0 * kPi);
    pts(i, 0) = r * std::cos(t) + noise * rng.normal();
    pts(i, 1) = r * std::sin(t) + noise * rng.normal();
  }
  if (d > 2) {
    // Random rotation from the QR factor of a Gaussian matrix.
    Mat g(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    // Fix the sign convention so the rotation is a deterministic function
    // of the Gaussian draws.
    Mat r_factor = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < d; ++j)
      if (r_factor(j, j) < 0) q.col(j) *= -1.0;
    pts = pts * q.transpose();
  }
  return make_uniform(std::move(pts));
}

DiscreteMeasure gen_hypercube_uniform(Index n, Index d, RngStream& rng) {
  if (n < 1 || d < 1) throw std::invalid_argument("gen_hypercube_uniform: bad shape");
  Mat pts(n, d);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < d; ++j) pts(i, j) = rng.uniform();
  return make_uniform(std::move(pts));
}

DiscreteMeasure gen_wrapped_normal_poincare(Index n, VecCRef mean, Scalar scale,
                                            RngStream& rng) {
  if (mean.norm() >= 1.0)
    throw std::invalid_argument("gen_wrapped_normal_poincare: mean outside open ball");
  if (!(scale > 0.0))
    throw std::invalid_argument("gen_wrapped_normal_poincare: scale must be positive");
  const Index d = mean.size();
  Mat pts(n, d);
  for (Index i = 0; i < n; ++i) {
    Vec v(d);
    for (Index j = 0; j < d; ++j) v[j] = scale * rng.normal();
    pts.row(i) = clamp_to_ball(poincare_exp_map(mean, v)).transpose();
  }
  return DiscreteMeasure(std::move(pts), uniform_weights(n), Geometry::poincare);
}

void save_measure_csv(const DiscreteMeasure& mu, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  char buf[32];
  for (Index i = 0; i < mu.size(); ++i) {
    for (Index j = 0; j < mu.dim(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", mu.points()(i, j));
      out << buf << ',';
    }
    std::snprintf(buf, sizeof(buf), "%.17g", mu.weights()[i]);
    out << buf << '\n';
  }
}

DiscreteMeasure load_measure_csv(const std::string& path, Geometry geometry) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::vector<std::vector<Scalar>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<Scalar> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("ragged CSV: " + path);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("empty CSV: " + path);
  const Index n = static_cast<Index>(rows.size());
  const Index d = static_cast<Index>(rows.front().size()) - 1;
  if (d < 1) throw std::runtime_error("CSV needs at least one coordinate column");
  Mat pts(n, d);
  Vec w(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) pts(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    w[i] = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)];
  }
  return DiscreteMeasure(std::move(pts), std::move(w), geometry);
}

std::string measure_to_json(const DiscreteMeasure& mu) {
  nlohmann::json j;
  auto pts = nlohmann::json::array();
  for (Index i = 0; i < mu.size(); ++i) {
    auto row = nlohmann::json::array();
    for (Index k = 0; k < mu.dim(); ++k) row.push_back(mu.points()(i, k));
    pts.push_back(std::move(row));
  }
  j["points"] = std::move(pts);
  j["weights"] = std::vector<Scalar>(mu.weights().data(), mu.weights().data() + mu.size());
  j["geometry"] = geometry_name(mu.geometry());
  return j.dump();
}

DiscreteMeasure measure_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const auto& pts = j.at("points");
  const Index n = static_cast<Index>(pts.size());
  if (n == 0) throw std::invalid_argument("measure_from_json: empty points");
  const Index d = static_cast<Index>(pts.at(0).size());
  Mat m(n, d);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < d; ++k) m(i, k) = pts.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<Scalar>();
  Vec w(n);
  const auto& jw = j.at("weights");
  for (Index i = 0; i < n; ++i) w[i] = jw.at(static_cast<std::size_t>(i)).get<Scalar>();
  return DiscreteMeasure(std::move(m), std::move(w),
                         geometry_from_name(j.at("geometry").get<std::string>()));
}

}  // namespace dgswp
