#pragma once

#include <optional>
#include <string>
#include <utility>

namespace nehari {

// Analytic potential families. a(x) = (1+|x|^2)^{-gamma3} always; b is
// either the matching decaying family, a positive constant, or (test hook
// only, never validated) identically zero.
enum class BForm { Decaying, Constant, Zero };
enum class VForm { OnePlusR2 };

struct ProblemParams {
  int dim = 3;
  double alpha = 0.25;
  double mu = 1.0;
  double p = 2.0;
  double q = 0.5;
  double gamma3 = 1.25;
  double gamma4 = 1.0;
  BForm b_form = BForm::Decaying;
  double b_constant = 1.0;
  VForm v_form = VForm::OnePlusR2;
  std::optional<double> lambda;
  // Admits alpha == 0 (pure Choquard). The hypothesis window is then not
  // claimed to hold; only the remaining constraints are checked.
  bool choquard = false;
};

struct ExponentWindow {
  double lower;  // (2N - 2 alpha - mu) / N
  double upper;  // (2N - 2 alpha - mu) / (N - 2)
};

struct PotentialWindows {
  double gamma3_lower;  // N (2 - q) / 4
  double gamma3_upper;  // N / 2
  double zeta1;
  double zeta2;
  double gamma4_lower;  // max(N / (2 zeta1), N / (2 zeta2))
};

/// Parameters that passed validate(). Downstream modules only accept this type.
class ValidatedParams {
 public:
  const ProblemParams& raw() const noexcept { return raw_; }
  const ExponentWindow& window() const noexcept { return window_; }
  const PotentialWindows& potential_windows() const noexcept { return pot_; }

  int dim() const noexcept { return raw_.dim; }
  double alpha() const noexcept { return raw_.alpha; }
  double mu() const noexcept { return raw_.mu; }
  double p() const noexcept { return raw_.p; }
  double q() const noexcept { return raw_.q; }

  double a(double r) const noexcept;
  double b(double r) const noexcept;
  double V(double r) const noexcept;

  ValidatedParams with_lambda(double lambda) const;

  // Skips every hypothesis check. Used by tests that need configurations
  // outside the admissible set (b == 0, linear residual checks).
  static ValidatedParams assume_valid(const ProblemParams& raw);

 private:
  friend ValidatedParams validate(const ProblemParams& raw);
  ValidatedParams(ProblemParams raw, ExponentWindow w, PotentialWindows pw)
      : raw_(std::move(raw)), window_(w), pot_(pw) {}

  ProblemParams raw_;
  ExponentWindow window_;
  PotentialWindows pot_;
};

/// Strict validation: throws ValidationError listing every violated constraint.
ValidatedParams validate(const ProblemParams& raw);

ExponentWindow critical_exponents(int dim, double alpha, double mu);
PotentialWindows potential_windows(int dim, double alpha, double mu, double p, double q);

struct FiberingConstants {
  double c_pq;
  double c_tilde_pq;
  double ratio;  // c_tilde_pq / c_pq == q p^{(2-q)/(2p-2)} / 2
};

FiberingConstants fibering_constants(double p, double q);

/// Measure of the unit sphere S^{N-1}.
double sphere_measure(int dim);

std::string to_string(BForm form);
BForm b_form_from_string(const std::string& s);

}  // namespace nehari
