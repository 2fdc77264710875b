#include "dgswp/projectors.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace dgswp {

namespace {

constexpr Scalar kSeluScale = 1.0507009873554805;
constexpr Scalar kSeluAlpha = 1.6732632423543772;

void apply_activation(Mat& a, Activation act) {
  switch (act) {
    case Activation::relu:
      a = a.cwiseMax(0.0);
      break;
    case Activation::selu:
      a = a.unaryExpr([](Scalar x) {
        return x > 0.0 ? kSeluScale * x : kSeluScale * kSeluAlpha * (std::exp(x) - 1.0);
      });
      break;
    case Activation::identity:
      break;
  }
}

}  // namespace

std::string projector_kind_name(ProjectorKind k) {
  switch (k) {
    case ProjectorKind::linear: return "linear";
    case ProjectorKind::mlp: return "mlp";
    case ProjectorKind::horospherical: return "horospherical";
  }
  return "linear";
}

ProjectorKind projector_kind_from_name(const std::string& name) {
  if (name == "linear") return ProjectorKind::linear;
  if (name == "mlp") return ProjectorKind::mlp;
  if (name == "horospherical") return ProjectorKind::horospherical;
  throw std::invalid_argument("unknown projector kind: " + name);
}

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::relu: return "relu";
    case Activation::selu: return "selu";
    case Activation::identity: return "identity";
  }
  return "relu";
}

Activation activation_from_name(const std::string& name) {
  if (name == "relu") return Activation::relu;
  if (name == "selu") return Activation::selu;
  if (name == "identity") return Activation::identity;
  throw std::invalid_argument("unknown activation: " + name);
}

Projector::Projector(ProjectorKind kind, Vec theta, std::vector<Index> layer_sizes,
                     Activation act)
    : kind_(kind), theta_(std::move(theta)), layer_sizes_(std::move(layer_sizes)), act_(act) {}

Projector Projector::linear(Vec theta) {
  if (theta.size() < 1) throw std::invalid_argument("linear projector: empty theta");
  const Index d = theta.size();
  return Projector(ProjectorKind::linear, std::move(theta), {d, 1}, Activation::identity);
}

Projector Projector::horospherical(Vec theta) {
  const Scalar n = theta.norm();
  if (!(n > 0.0)) throw std::invalid_argument("horospherical projector: zero theta");
  const Index d = theta.size();
  return Projector(ProjectorKind::horospherical, theta / n, {d, 1}, Activation::identity);
}

Index Projector::mlp_param_count(const std::vector<Index>& layer_sizes) {
  Index q = 0;
  for (std::size_t l = 1; l < layer_sizes.size(); ++l)
    q += layer_sizes[l] * layer_sizes[l - 1] + layer_sizes[l];
  return q;
}

Projector Projector::mlp_init_he(const std::vector<Index>& layer_sizes, RngStream& rng,
                                 Activation act) {
  if (layer_sizes.size() < 2)
    throw std::invalid_argument("mlp projector: need at least input and output sizes");
  if (layer_sizes.back() != 1)
    throw std::invalid_argument("mlp projector: output size must be 1");
  Vec theta = Vec::Zero(mlp_param_count(layer_sizes));
  Index off = 0;
  for (std::size_t l = 1; l < layer_sizes.size(); ++l) {
    const Index fan_in = layer_sizes[l - 1];
    const Index fan_out = layer_sizes[l];
    const Scalar std_dev = std::sqrt(2.0 / static_cast<Scalar>(fan_in));
    for (Index k = 0; k < fan_out * fan_in; ++k) theta[off + k] = std_dev * rng.normal();
    off += fan_out * fan_in + fan_out;  // biases stay zero
  }
  return Projector(ProjectorKind::mlp, std::move(theta), layer_sizes, act);
}

Projector Projector::mlp_from_theta(const std::vector<Index>& layer_sizes, Vec theta,
                                    Activation act) {
  if (layer_sizes.size() < 2 || layer_sizes.back() != 1)
    throw std::invalid_argument("mlp projector: bad layer sizes");
  if (theta.size() != mlp_param_count(layer_sizes))
    throw std::invalid_argument("mlp projector: theta length mismatch");
  return Projector(ProjectorKind::mlp, std::move(theta), layer_sizes, act);
}

Projector Projector::with_theta(Vec theta) const {
  if (theta.size() != theta_.size())
    throw std::invalid_argument("with_theta: length mismatch");
  if (kind_ == ProjectorKind::horospherical) {
    const Scalar n = theta.norm();
    if (!(n > 0.0)) throw std::invalid_argument("with_theta: zero horospherical theta");
    theta /= n;
  }
  return Projector(kind_, std::move(theta), layer_sizes_, act_);
}

Vec Projector::project(MatCRef points) const {
  if (points.cols() != input_dim())
    throw std::invalid_argument("project: point dimension mismatch");
  const Index n = points.rows();
  switch (kind_) {
    case ProjectorKind::linear:
      return points * theta_;
    case ProjectorKind::horospherical: {
      Vec out(n);
      for (Index i = 0; i < n; ++i) {
        const Scalar x2 = points.row(i).squaredNorm();
        if (x2 >= 1.0)
          throw std::invalid_argument("horospherical project: point outside open ball");
        const Scalar sq = (points.row(i).transpose() - theta_).squaredNorm();
        out[i] = std::log(sq) - std::log1p(-x2);
      }
      return out;
    }
    case ProjectorKind::mlp: {
      Mat a = points;
      Index off = 0;
      const std::size_t layers = layer_sizes_.size();
      for (std::size_t l = 1; l < layers; ++l) {
        const Index in = layer_sizes_[l - 1];
        const Index out_dim = layer_sizes_[l];
        using RowMajorMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        Eigen::Map<const RowMajorMat> w(theta_.data() + off, out_dim, in);
        Eigen::Map<const Vec> b(theta_.data() + off + out_dim * in, out_dim);
        a = (a * w.transpose()).rowwise() + b.transpose();
        if (l + 1 < layers) apply_activation(a, act_);
        off += out_dim * in + out_dim;
      }
      return a.col(0);
    }
  }
  throw std::logic_error("project: unknown projector kind");
}

Scalar Projector::project_one(VecCRef x) const {
  Mat row(1, x.size());
  row.row(0) = x.transpose();
  return project(row)[0];
}

std::string projector_to_json(const Projector& proj) {
  nlohmann::json j;
  j["kind"] = projector_kind_name(proj.kind());
  j["layer_sizes"] = proj.layer_sizes();
  j["activation"] = activation_name(proj.activation());
  j["theta"] = std::vector<Scalar>(proj.theta().data(), proj.theta().data() + proj.param_count());
  return j.dump();
}

Projector projector_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const auto kind = projector_kind_from_name(j.at("kind").get<std::string>());
  const auto tv = j.at("theta").get<std::vector<Scalar>>();
  Vec theta = Eigen::Map<const Vec>(tv.data(), static_cast<Index>(tv.size()));
  switch (kind) {
    case ProjectorKind::linear: return Projector::linear(std::move(theta));
    case ProjectorKind::horospherical: return Projector::horospherical(std::move(theta));
    case ProjectorKind::mlp: {
      const auto ls = j.at("layer_sizes").get<std::vector<Index>>();
      const auto act = j.contains("activation")
                           ? activation_from_name(j.at("activation").get<std::string>())
                           : Activation::relu;
      return Projector::mlp_from_theta(ls, std::move(theta), act);
    }
  }
  throw std::logic_error("projector_from_json: unknown kind");
}

}  // namespace dgswp
