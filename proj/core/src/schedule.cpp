#include "pdsa/schedule.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

namespace pdsa {

SequenceFamily SequenceFamily::powerLaw(double c, double p) {
  SequenceFamily f;
  f.form = Form::PowerLaw;
  f.c = c;
  f.p = p;
  return f;
}

SequenceFamily SequenceFamily::constant(double c) {
  SequenceFamily f;
  f.form = Form::Constant;
  f.c = c;
  return f;
}

SequenceFamily SequenceFamily::scaledSquare(double c) {
  SequenceFamily f;
  f.form = Form::ScaledSquare;
  f.c = c;
  return f;
}

SequenceFamily SequenceFamily::custom(std::vector<double> table, Fallback fb) {
  SequenceFamily f;
  f.form = Form::Custom;
  f.table = std::move(table);
  f.fallback = fb;
  return f;
}

double SequenceFamily::at(long k) const {
  if (k < 1) throw std::invalid_argument("SequenceFamily::at: k must be >= 1");
  switch (form) {
    case Form::PowerLaw: return c * std::pow(double(k), p);
    case Form::Constant: return c;
    case Form::ScaledSquare: return c * double(k) * double(k);
    case Form::Custom:
      if (k <= long(table.size())) return table[size_t(k - 1)];
      if (table.empty() || fallback == Fallback::Zero) return 0.0;
      return table.back();
  }
  throw std::logic_error("unreachable");
}

StepCoefficients coeffs_at(const ParameterSchedule& s, long k, double mu_f, double mu_g) {
  if (k < 1) throw std::invalid_argument("coeffs_at: k must be >= 1");
  StepCoefficients c;
  c.k = k;
  c.alpha = s.alpha.at(k);
  c.beta = s.beta.at(k);
  c.epsilon = s.epsilon.at(k);
  if (c.alpha <= 0.0 || c.beta <= 0.0)
    throw std::invalid_argument("coeffs_at: alpha_k and beta_k must be positive");
  c.theta = (c.alpha + s.delta) * c.beta;
  c.eta_f = s.gamma + 1.0 / c.alpha + mu_f * s.delta * c.beta;
  c.eta_g = s.gamma + 1.0 / c.alpha + mu_g * s.delta * c.beta;
  return c;
}

namespace {

constexpr double kSlack = 1e-12;

void checkPositivity(const ParameterSchedule& s, long K, ValidationReport& r) {
  for (long k = 1; k <= K; ++k) {
    if (s.alpha.at(k) <= 0.0) {
      r.issues.push_back({"alpha_k > 0", k, s.alpha.at(k), 0.0});
      break;
    }
  }
  for (long k = 1; k <= K; ++k) {
    if (s.beta.at(k) <= 0.0) {
      r.issues.push_back({"beta_k > 0", k, s.beta.at(k), 0.0});
      break;
    }
  }
}

// Heuristic convergence verdict for a positive series: the increment over the
// last dyadic window must shrink relative to the one before it.
bool seriesLooksConvergent(const std::vector<double>& terms) {
  const long K = long(terms.size());
  if (K < 8) return true;
  double early = 0.0, late = 0.0;
  for (long k = K / 4; k < K / 2; ++k) early += terms[size_t(k)];
  for (long k = K / 2; k < K; ++k) late += terms[size_t(k)];
  double total = 0.0;
  for (double t : terms) total += t;
  if (late <= 1e-12 * std::max(1.0, total)) return true;
  // The late window has twice as many terms; a convergent tail still shrinks.
  return late < 0.95 * early;
}

}  // namespace

ValidationReport validate_assumption1(const ParameterSchedule& s, long K) {
  if (K < 2) throw std::invalid_argument("validate_assumption1: K must be >= 2");
  ValidationReport r;
  checkPositivity(s, K, r);
  if (s.delta * s.gamma - 1.0 < -kSlack)
    r.issues.push_back({"delta*gamma - 1 >= 0", 1, s.delta * s.gamma - 1.0, 0.0});
  for (long k = 1; k < K; ++k) {
    const double bk = s.beta.at(k), bk1 = s.beta.at(k + 1);
    if (bk1 < bk - kSlack) {
      r.issues.push_back({"beta nondecreasing", k, bk1, bk});
      break;
    }
  }
  for (long k = 1; k < K; ++k) {
    const double lhs = s.delta * s.beta.at(k + 1);
    const double rhs = s.delta * s.beta.at(k) + s.alpha.at(k) * s.beta.at(k);
    if (lhs > rhs + kSlack) {
      r.issues.push_back({"delta*beta_{k+1} <= delta*beta_k + alpha_k*beta_k", k, lhs, rhs});
      break;
    }
  }
  return r;
}

ValidationReport validate_assumption2(const ParameterSchedule& s, double normB, double mu_g,
                                      long K) {
  ValidationReport r = validate_assumption1(s, K);
  for (long k = 1; k < K; ++k) {
    const double abk = s.alpha.at(k) * s.beta.at(k);
    const double abk1 = s.alpha.at(k + 1) * s.beta.at(k + 1);
    const double lhs = normB * normB * (abk1 * abk1 - abk * abk);
    const double rhs = abk * mu_g;
    if (lhs > rhs + kSlack) {
      r.issues.push_back(
          {"||B||^2 (alpha_{k+1}^2 beta_{k+1}^2 - alpha_k^2 beta_k^2) <= alpha_k beta_k mu_g", k,
           lhs, rhs});
      break;
    }
  }
  return r;
}

ValidationReport validate_epsilon_conditions(const ParameterSchedule& s, long K,
                                             EpsilonMode mode) {
  if (K < 2) throw std::invalid_argument("validate_epsilon_conditions: K must be >= 2");
  ValidationReport r;
  for (long k = 1; k < K; ++k) {
    const double ek = s.epsilon.at(k), ek1 = s.epsilon.at(k + 1);
    if (ek1 > ek + kSlack) {
      r.issues.push_back({"epsilon nonincreasing", k, ek1, ek});
      break;
    }
    if (ek < 0.0) {
      r.issues.push_back({"epsilon nonnegative", k, ek, 0.0});
      break;
    }
  }
  std::vector<double> abe(static_cast<size_t>(K));
  std::vector<double> ae(static_cast<size_t>(K));
  for (long k = 1; k <= K; ++k) {
    const double a = s.alpha.at(k), b = s.beta.at(k), e = s.epsilon.at(k);
    abe[size_t(k - 1)] = a * b * e;
    ae[size_t(k - 1)] = a * e;
    r.sum_alpha_beta_eps += a * b * e;
    r.sum_alpha_eps += a * e;
  }
  if (mode == EpsilonMode::Rate) {
    if (!seriesLooksConvergent(abe))
      r.issues.push_back({"sum alpha_k beta_k epsilon_k < +inf (heuristic)", K,
                          r.sum_alpha_beta_eps, 0.0});
  } else {
    if (!seriesLooksConvergent(ae))
      r.issues.push_back({"sum alpha_k epsilon_k < +inf (heuristic)", K, r.sum_alpha_eps, 0.0});
    const double early = s.beta.at(K / 2) * s.epsilon.at(K / 2);
    const double late = s.beta.at(K) * s.epsilon.at(K);
    if (!(late > early))
      r.issues.push_back({"beta_k epsilon_k -> +inf (heuristic)", K, late, early});
  }
  return r;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  if (issues.empty()) {
    os << "pass";
  } else {
    os << "fail:";
    for (const auto& i : issues)
      os << " [" << i.condition << " violated at k=" << i.first_k << " (lhs=" << i.lhs
         << ", rhs=" << i.rhs << ")]";
  }
  return os.str();
}

nlohmann::json sequenceToJson(const SequenceFamily& f) {
  nlohmann::json j;
  switch (f.form) {
    case SequenceFamily::Form::PowerLaw:
      j["form"] = "powerlaw";
      j["c"] = f.c;
      j["p"] = f.p;
      break;
    case SequenceFamily::Form::Constant:
      j["form"] = "constant";
      j["c"] = f.c;
      break;
    case SequenceFamily::Form::ScaledSquare:
      j["form"] = "scaled_square";
      j["c"] = f.c;
      break;
    case SequenceFamily::Form::Custom:
      j["form"] = "custom";
      j["values"] = f.table;
      j["fallback"] = f.fallback == SequenceFamily::Fallback::HoldLast ? "hold" : "zero";
      break;
  }
  return j;
}

SequenceFamily sequenceFromJson(const nlohmann::json& j) {
  const std::string form = j.at("form").get<std::string>();
  if (form == "powerlaw")
    return SequenceFamily::powerLaw(j.at("c").get<double>(), j.at("p").get<double>());
  if (form == "constant") return SequenceFamily::constant(j.at("c").get<double>());
  if (form == "scaled_square") return SequenceFamily::scaledSquare(j.at("c").get<double>());
  if (form == "custom") {
    auto fb = SequenceFamily::Fallback::HoldLast;
    if (j.contains("fallback") && j.at("fallback").get<std::string>() == "zero")
      fb = SequenceFamily::Fallback::Zero;
    return SequenceFamily::custom(j.at("values").get<std::vector<double>>(), fb);
  }
  throw std::invalid_argument("sequenceFromJson: unknown form '" + form + "'");
}

nlohmann::json scheduleToJson(const ParameterSchedule& s) {
  nlohmann::json j;
  j["gamma"] = s.gamma;
  j["delta"] = s.delta;
  j["alpha"] = sequenceToJson(s.alpha);
  j["beta"] = sequenceToJson(s.beta);
  j["epsilon"] = sequenceToJson(s.epsilon);
  return j;
}

ParameterSchedule scheduleFromJson(const nlohmann::json& j) {
  ParameterSchedule s;
  s.gamma = j.at("gamma").get<double>();
  s.delta = j.at("delta").get<double>();
  if (s.gamma <= 0.0 || s.delta <= 0.0)
    throw std::invalid_argument("scheduleFromJson: gamma and delta must be positive");
  s.alpha = sequenceFromJson(j.at("alpha"));
  s.beta = sequenceFromJson(j.at("beta"));
  s.epsilon = sequenceFromJson(j.at("epsilon"));
  return s;
}

}  // namespace pdsa
