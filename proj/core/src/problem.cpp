#include "pdsa/problem.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

namespace pdsa {

ProblemInstance::ProblemInstance(ProxFunction f, ProxFunction g, LinearOperator A,
                                 LinearOperator B, VectorXd b)
    : f_(std::move(f)), g_(std::move(g)), A_(std::move(A)), B_(std::move(B)), b_(std::move(b)) {
  if (A_.cols() != f_.dim()) throw std::invalid_argument("ProblemInstance: A columns != dim(f)");
  if (B_.cols() != g_.dim()) throw std::invalid_argument("ProblemInstance: B columns != dim(g)");
  if (A_.rows() != b_.size() || B_.rows() != b_.size())
    throw std::invalid_argument("ProblemInstance: operator rows != length(b)");
}

double ProblemInstance::objective(const VectorXd& x, const VectorXd& y) const {
  return f_.value(x) + g_.value(y);
}

VectorXd ProblemInstance::constraintResidual(const VectorXd& x, const VectorXd& y) const {
  return A_.apply(x) + B_.apply(y) - b_;
}

double ProblemInstance::feasibility(const VectorXd& x, const VectorXd& y) const {
  return constraintResidual(x, y).norm();
}

double ProblemInstance::lagrangian(const VectorXd& x, const VectorXd& y,
                                   const VectorXd& lambda) const {
  if (lambda.size() != m()) throw std::invalid_argument("lagrangian: multiplier dimension mismatch");
  return objective(x, y) + lambda.dot(constraintResidual(x, y));
}

double ProblemInstance::augmentedLagrangian(const VectorXd& x, const VectorXd& y,
                                            const VectorXd& lambda, double theta) const {
  if (theta < 0.0) throw std::invalid_argument("augmentedLagrangian: theta must be nonnegative");
  const VectorXd r = constraintResidual(x, y);
  return objective(x, y) + lambda.dot(r) + 0.5 * theta * r.squaredNorm();
}

double ProblemInstance::kktResidual(const VectorXd& x, const VectorXd& y,
                                    const VectorXd& lambda) const {
  const double feas = feasibility(x, y);
  const double stat_f = f_.subdiffDistance(x, -A_.applyAdjoint(lambda));
  const double stat_g = g_.subdiffDistance(y, -B_.applyAdjoint(lambda));
  return std::max({feas, stat_f, stat_g});
}

double ProblemInstance::kktResidual(const SaddlePoint& s) const {
  return kktResidual(s.x, s.y, s.lambda);
}

namespace {

VectorXd vectorFromJson(const nlohmann::json& j) {
  VectorXd v(j.size());
  Index i = 0;
  for (const auto& e : j) v[i++] = e.get<double>();
  return v;
}

nlohmann::json vectorToJson(const VectorXd& v) {
  nlohmann::json j = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

}  // namespace

nlohmann::json operatorToJson(const LinearOperator& op) {
  nlohmann::json j;
  switch (op.kind()) {
    case LinearOperator::Kind::Dense: {
      j["kind"] = "dense";
      nlohmann::json rows = nlohmann::json::array();
      for (Index r = 0; r < op.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Index c = 0; c < op.cols(); ++c) row.push_back(op.matrix()(r, c));
        rows.push_back(std::move(row));
      }
      j["data"] = std::move(rows);
      break;
    }
    case LinearOperator::Kind::Diagonal:
      j["kind"] = "diagonal";
      j["d"] = vectorToJson(op.diagonalEntries());
      break;
    case LinearOperator::Kind::Identity:
      j["kind"] = "identity";
      j["n"] = op.rows();
      break;
    case LinearOperator::Kind::Zero:
      j["kind"] = "zero";
      j["rows"] = op.rows();
      j["cols"] = op.cols();
      break;
  }
  return j;
}

LinearOperator operatorFromJson(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "dense") {
    const auto& data = j.at("data");
    const Index rows = data.size();
    const Index cols = rows > 0 ? Index(data[0].size()) : 0;
    MatrixXd m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
      if (Index(data[r].size()) != cols)
        throw std::invalid_argument("operatorFromJson: ragged dense matrix");
      for (Index c = 0; c < cols; ++c) m(r, c) = data[r][c].get<double>();
    }
    return LinearOperator::dense(std::move(m));
  }
  if (kind == "diagonal") return LinearOperator::diagonal(vectorFromJson(j.at("d")));
  if (kind == "identity") return LinearOperator::identity(j.at("n").get<Index>());
  if (kind == "zero")
    return LinearOperator::zero(j.at("rows").get<Index>(), j.at("cols").get<Index>());
  throw std::invalid_argument("operatorFromJson: unknown kind '" + kind + "'");
}

nlohmann::json proxFunctionToJson(const ProxFunction& f) {
  nlohmann::json j;
  j["dim"] = f.dim();
  switch (f.kind()) {
    case ProxFunction::Kind::Zero: j["kind"] = "zero"; break;
    case ProxFunction::Kind::L1:
      j["kind"] = "l1";
      j["w"] = f.weight();
      break;
    case ProxFunction::Kind::SquaredL2:
      j["kind"] = "squared_l2";
      j["mu"] = f.strongConvexity();
      break;
    case ProxFunction::Kind::ElasticNet:
      j["kind"] = "elastic_net";
      j["w"] = f.weight();
      j["mu"] = f.strongConvexity();
      break;
    case ProxFunction::Kind::ShiftedL1:
      j["kind"] = "shifted_l1";
      j["w"] = f.weight();
      j["shift"] = vectorToJson(f.shift());
      break;
  }
  return j;
}

ProxFunction proxFunctionFromJson(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") return ProxFunction::zero(j.at("dim").get<Index>());
  if (kind == "l1") return ProxFunction::l1(j.at("w").get<double>(), j.at("dim").get<Index>());
  if (kind == "squared_l2")
    return ProxFunction::squaredL2(j.at("mu").get<double>(), j.at("dim").get<Index>());
  if (kind == "elastic_net")
    return ProxFunction::elasticNet(j.at("w").get<double>(), j.at("mu").get<double>(),
                                    j.at("dim").get<Index>());
  if (kind == "shifted_l1")
    return ProxFunction::shiftedL1(j.at("w").get<double>(), vectorFromJson(j.at("shift")));
  throw std::invalid_argument("proxFunctionFromJson: unknown kind '" + kind + "'");
}

nlohmann::json ProblemInstance::toJson() const {
  nlohmann::json j;
  j["f"] = proxFunctionToJson(f_);
  j["g"] = proxFunctionToJson(g_);
  j["A"] = operatorToJson(A_);
  j["B"] = operatorToJson(B_);
  j["b"] = vectorToJson(b_);
  return j;
}

ProblemInstance ProblemInstance::fromJson(const nlohmann::json& j) {
  return ProblemInstance(proxFunctionFromJson(j.at("f")), proxFunctionFromJson(j.at("g")),
                         operatorFromJson(j.at("A")), operatorFromJson(j.at("B")),
                         vectorFromJson(j.at("b")));
}

}  // namespace pdsa
