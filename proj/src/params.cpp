#include "nehari/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "nehari/error.hpp"

namespace nehari {

namespace {

std::string fmt(const char* what, double value) {
  std::ostringstream os;
  os.precision(10);
  os << what << " = " << value;
  return os.str();
}

}  // namespace

ExponentWindow critical_exponents(int dim, double alpha, double mu) {
  const double n = dim;
  const double top = 2.0 * n - 2.0 * alpha - mu;
  return {top / n, top / (n - 2.0)};
}

PotentialWindows potential_windows(int dim, double alpha, double mu, double p, double q) {
  const double n = dim;
  const double top = 2.0 * n - 2.0 * alpha - mu;
  PotentialWindows w{};
  w.gamma3_lower = n * (2.0 - q) / 4.0;
  w.gamma3_upper = n / 2.0;
  w.zeta1 = 2.0 * n / (top - (n - 2.0) * (p - q));
  w.zeta2 = 2.0 * n / (top - p * (n - 2.0));
  w.gamma4_lower = std::max(n / (2.0 * w.zeta1), n / (2.0 * w.zeta2));
  return w;
}

ValidatedParams validate(const ProblemParams& raw) {
  std::vector<Violation> bad;
  const double n = raw.dim;

  if (raw.dim < 3) bad.push_back({ErrorCode::DimensionViolation, fmt("N", n) + " < 3"});
  if (!(raw.q > 0.0 && raw.q < 1.0))
    bad.push_back({ErrorCode::SingularExponentViolation, fmt("q", raw.q) + " not in (0,1)"});
  if (!(raw.mu > 0.0)) bad.push_back({ErrorCode::WeightViolation, fmt("mu", raw.mu) + " <= 0"});
  if (raw.choquard) {
    if (!(raw.alpha >= 0.0))
      bad.push_back({ErrorCode::WeightViolation, fmt("alpha", raw.alpha) + " < 0"});
  } else if (!(raw.alpha > 0.0)) {
    bad.push_back({ErrorCode::WeightViolation, fmt("alpha", raw.alpha) + " <= 0"});
  }
  const double weight = 2.0 * raw.alpha + raw.mu;
  const bool weights_ok = raw.dim >= 3 && weight > 0.0 && weight < n;
  if (!(weight < n))
    bad.push_back({ErrorCode::WeightViolation, fmt("2 alpha + mu", weight) + " >= N"});

  ExponentWindow win{0.0, 0.0};
  PotentialWindows pw{};
  if (weights_ok) {
    win = critical_exponents(raw.dim, raw.alpha, raw.mu);
    const bool p_ok = raw.p > win.lower && raw.p < win.upper;
    if (!p_ok) {
      std::ostringstream os;
      os.precision(10);
      os << "p = " << raw.p << " not in (" << win.lower << ", " << win.upper << ")";
      bad.push_back({ErrorCode::ExponentWindowViolation, os.str()});
    }

    pw = potential_windows(raw.dim, raw.alpha, raw.mu, raw.p, raw.q);
    if (!(raw.gamma3 > pw.gamma3_lower && raw.gamma3 < pw.gamma3_upper)) {
      std::ostringstream os;
      os.precision(10);
      os << "gamma3 = " << raw.gamma3 << " not in (" << pw.gamma3_lower << ", " << pw.gamma3_upper
         << ")";
      bad.push_back({ErrorCode::PotentialDecayViolation, os.str()});
    }
    if (raw.b_form == BForm::Decaying && p_ok && !(raw.gamma4 > pw.gamma4_lower)) {
      std::ostringstream os;
      os.precision(10);
      os << "gamma4 = " << raw.gamma4 << " <= " << pw.gamma4_lower;
      bad.push_back({ErrorCode::PotentialDecayViolation, os.str()});
    }
  }
  if (raw.b_form == BForm::Zero ||
      (raw.b_form == BForm::Constant && !(raw.b_constant > 0.0)))
    bad.push_back({ErrorCode::PotentialDecayViolation, "b must be positive"});
  if (raw.lambda && !(*raw.lambda >= 0.0))
    bad.push_back({ErrorCode::ConfigError, fmt("lambda", *raw.lambda) + " < 0"});

  if (!bad.empty()) throw ValidationError(std::move(bad));
  return ValidatedParams(raw, win, pw);
}

ValidatedParams ValidatedParams::assume_valid(const ProblemParams& raw) {
  ExponentWindow win{0.0, 0.0};
  PotentialWindows pw{};
  if (raw.dim > 2) {
    win = critical_exponents(raw.dim, raw.alpha, raw.mu);
    pw = nehari::potential_windows(raw.dim, raw.alpha, raw.mu, raw.p, raw.q);
  }
  return ValidatedParams(raw, win, pw);
}

ValidatedParams ValidatedParams::with_lambda(double lambda) const {
  ValidatedParams out = *this;
  out.raw_.lambda = lambda;
  return out;
}

double ValidatedParams::a(double r) const noexcept {
  return std::pow(1.0 + r * r, -raw_.gamma3);
}

double ValidatedParams::b(double r) const noexcept {
  switch (raw_.b_form) {
    case BForm::Decaying: return std::pow(1.0 + r * r, -raw_.gamma4);
    case BForm::Constant: return raw_.b_constant;
    case BForm::Zero: return 0.0;
  }
  return 0.0;
}

double ValidatedParams::V(double r) const noexcept { return 1.0 + r * r; }

FiberingConstants fibering_constants(double p, double q) {
  // Evaluated in log space; the exponent (2-q)/(2p-2) blows up as p -> 1.
  const double kappa = (2.0 - q) / (2.0 * p - 2.0);
  const double log_base = std::log((2.0 - q) / (2.0 * p - q));
  const double c = std::exp(kappa * log_base) * (2.0 * p - 2.0) / (2.0 * p - q);
  const double c_tilde =
      q * std::exp(kappa * std::log(p)) * ((p - 1.0) / (2.0 * p - q)) * std::exp(kappa * log_base);
  return {c, c_tilde, 0.5 * q * std::exp(kappa * std::log(p))};
}

double sphere_measure(int dim) {
  const double half = 0.5 * dim;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

std::string to_string(BForm form) {
  switch (form) {
    case BForm::Decaying: return "decaying";
    case BForm::Constant: return "constant";
    case BForm::Zero: return "zero";
  }
  return "decaying";
}

BForm b_form_from_string(const std::string& s) {
  if (s == "decaying") return BForm::Decaying;
  if (s == "constant") return BForm::Constant;
  if (s == "zero") return BForm::Zero;
  throw Error(ErrorCode::ConfigError, "unknown b form '" + s + "'");
}

}  // namespace nehari
