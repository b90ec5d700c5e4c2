#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

namespace pdsa {

/// Scalar sequence k -> value, k >= 1.
struct SequenceFamily {
  enum class Form { PowerLaw, Constant, ScaledSquare, Custom };
  enum class Fallback { HoldLast, Zero };

  Form form = Form::Constant;
  double c = 1.0;   // coefficient (PowerLaw, Constant, ScaledSquare)
  double p = 0.0;   // exponent (PowerLaw)
  std::vector<double> table;  // Custom
  Fallback fallback = Fallback::HoldLast;

  static SequenceFamily powerLaw(double c, double p);
  static SequenceFamily constant(double c);
  static SequenceFamily scaledSquare(double c);
  static SequenceFamily custom(std::vector<double> table, Fallback fb = Fallback::HoldLast);

  double at(long k) const;
};

/// Damping constant gamma, extrapolation constant delta and the three driving
/// sequences alpha_k (step size), beta_k (time scale), epsilon_k (Tikhonov).
struct ParameterSchedule {
  double gamma = 0.0;
  double delta = 0.0;
  SequenceFamily alpha;
  SequenceFamily beta;
  SequenceFamily epsilon;
};

/// Per-iteration derived coefficients.
struct StepCoefficients {
  long k = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double epsilon = 0.0;
  double theta = 0.0;  // (alpha_k + delta) beta_k
  double eta_f = 0.0;  // gamma + 1/alpha_k + mu_f delta beta_k
  double eta_g = 0.0;  // gamma + 1/alpha_k + mu_g delta beta_k
};

StepCoefficients coeffs_at(const ParameterSchedule& s, long k, double mu_f, double mu_g);

struct ValidationIssue {
  std::string condition;
  long first_k = 0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  // Partial sums over the validated horizon (epsilon checks).
  double sum_alpha_beta_eps = 0.0;
  double sum_alpha_eps = 0.0;
  bool pass() const { return issues.empty(); }
  std::string summary() const;
};

/// delta*gamma - 1 >= 0, beta nondecreasing, delta beta_{k+1} <= delta beta_k
/// + alpha_k beta_k, with a 1e-12 additive slack.
ValidationReport validate_assumption1(const ParameterSchedule& s, long K);

/// Assumption-1 checks plus ||B||^2 (a_{k+1}^2 b_{k+1}^2 - a_k^2 b_k^2) <=
/// a_k b_k mu_g.
ValidationReport validate_assumption2(const ParameterSchedule& s, double normB, double mu_g,
                                      long K);

enum class EpsilonMode { Rate, Strong };

/// Rate mode: epsilon nonincreasing and sum alpha_k beta_k epsilon_k finite
/// (heuristic ratio verdict over the horizon). Strong mode: additionally
/// sum alpha_k epsilon_k finite and beta_k epsilon_k diverging.
ValidationReport validate_epsilon_conditions(const ParameterSchedule& s, long K, EpsilonMode mode);

nlohmann::json sequenceToJson(const SequenceFamily& f);
SequenceFamily sequenceFromJson(const nlohmann::json& j);
nlohmann::json scheduleToJson(const ParameterSchedule& s);
ParameterSchedule scheduleFromJson(const nlohmann::json& j);

}  // namespace pdsa
