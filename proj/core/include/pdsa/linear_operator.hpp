#pragma once

#include <Eigen/Dense>
#include <optional>

namespace pdsa {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Linear operator in one of four structured forms. Dense operator norms are
/// estimated once by power iteration and cached; the other kinds are exact.
class LinearOperator {
 public:
  enum class Kind { Dense, Diagonal, Identity, Zero };

  static LinearOperator dense(MatrixXd m);
  static LinearOperator diagonal(VectorXd d);
  static LinearOperator identity(Index n);
  static LinearOperator zero(Index rows, Index cols);

  Kind kind() const { return kind_; }
  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  bool isZero() const { return kind_ == Kind::Zero; }

  VectorXd apply(const VectorXd& v) const;
  VectorXd applyAdjoint(const VectorXd& u) const;

  /// Largest singular value.
  double norm() const;

  /// -1 times this operator. Identity becomes Diagonal.
  LinearOperator negated() const;

  const MatrixXd& matrix() const { return mat_; }
  const VectorXd& diagonalEntries() const { return diag_; }

 private:
  LinearOperator() = default;

  Kind kind_ = Kind::Zero;
  Index rows_ = 0;
  Index cols_ = 0;
  MatrixXd mat_;
  VectorXd diag_;
  mutable std::optional<double> cached_norm_;
};

}  // namespace pdsa
