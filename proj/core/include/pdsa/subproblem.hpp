#pragma once

#include <vector>

#include "pdsa/problem.hpp"

namespace pdsa {

struct SubproblemResult {
  std::vector<VectorXd> solution;
  double residual = 0.0;       // prox-gradient mapping norm (0 on the exact path)
  long inner_iterations = 0;
  bool converged = true;
};

/// min_u  sum_b prox_b(u_b) + (shift_b/2)||u_b||^2 - <c_b, u_b>
///        + sum_t (sigma_t/2) || sum_b K_{t,b} u_b ||^2
///
/// Blocks and couplings reference prox functions / operators owned by the
/// caller; instances are meant to be assembled, solved, and discarded within
/// a single solver step.
class CompositeQuadratic {
 public:
  /// Returns the block index. shift must be nonnegative; the overall
  /// per-coordinate curvature has to be positive for the solve to succeed.
  Index addBlock(const ProxFunction* prox, double shift, VectorXd linear);

  /// ops has one entry per existing block; nullptr marks a block the term
  /// does not touch. sigma must be nonnegative.
  void addCoupling(double sigma, std::vector<const LinearOperator*> ops);

  Index numBlocks() const { return Index(blocks_.size()); }
  Index blockDim(Index b) const { return blocks_[size_t(b)].linear.size(); }

  double objective(const std::vector<VectorXd>& u) const;
  std::vector<VectorXd> gradient(const std::vector<VectorXd>& u) const;

  /// True when every coupling touches at most one block through a diagonal
  /// (or identity) operator, so the quadratic is coordinate-separable and the
  /// minimizer is a single diagonal prox.
  bool separableQuadratic() const;

  /// Per-coordinate curvature q_b (valid when separableQuadratic()).
  std::vector<VectorXd> diagonalCurvature() const;

  /// Upper bound on the gradient Lipschitz constant of the smooth part.
  double lipschitz() const;

  const VectorXd& linear(Index b) const { return blocks_[size_t(b)].linear; }
  const ProxFunction* prox(Index b) const { return blocks_[size_t(b)].prox; }

 private:
  struct Block {
    const ProxFunction* prox = nullptr;
    double shift = 0.0;
    VectorXd linear;
  };
  struct Coupling {
    double sigma = 0.0;
    std::vector<const LinearOperator*> ops;
  };

  double smoothValue(const std::vector<VectorXd>& u) const;

  std::vector<Block> blocks_;
  std::vector<Coupling> couplings_;
};

/// Solves the composite problem. Takes the diagonal closed form when
/// available; otherwise runs FISTA with adaptive restart from `init`,
/// stopping when the prox-gradient mapping norm drops below
/// tol * (1 + ||u||). Throws std::runtime_error on non-finite iterates.
SubproblemResult solve_composite(const CompositeQuadratic& q, std::vector<VectorXd> init,
                                 double tol, long max_iter);

/// Joint primal step of the two-block method: both blocks at once against
/// lambda_tilde. wx = eta_f/(alpha beta), wy = eta_g/(alpha beta).
CompositeQuadratic assemble_joint(const ProblemInstance& p, double theta, double wx, double wy,
                                  double eps, const VectorXd& lambda_tilde,
                                  const VectorXd& x_tilde, const VectorXd& y_tilde);

/// x-step of the splitting method: y held at y_k.
CompositeQuadratic assemble_x_split(const ProblemInstance& p, double theta, double wx, double eps,
                                    const VectorXd& lambda_tilde, const VectorXd& x_tilde,
                                    const VectorXd& y_k);

/// y-step of the splitting method: x held at the fresh x_{k+1}.
CompositeQuadratic assemble_y_split(const ProblemInstance& p, double theta, double wy, double eps,
                                    const VectorXd& lambda_tilde, const VectorXd& y_tilde,
                                    const VectorXd& x_next);

}  // namespace pdsa
