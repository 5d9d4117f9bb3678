#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace eland {

enum class PotentialKind {
  double_well,
  pure_power,
  cubic_genetics,
  multi_well,
  polynomial,
  truncated_multi_well,
};

const char* to_string(PotentialKind kind) noexcept;

struct Well {
  double location = 0.0;
  double depth = 0.0;  // W at the well
};

/// A potential W with exact first and second derivatives.
///
/// Immutable after construction. Outside the window
/// [mu_minus - extension_radius, mu + extension_radius] W continues linearly
/// (W'' = 0), matching value and slope at the window edge.
class Potential {
 public:
  /// W(t) = (t^2 - mu^2)^2 / 4. With mu = 1 this is the Allen-Cahn potential.
  static Potential double_well(double mu = 1.0);
  /// W(t) = |t - mu|^(p+1).
  static Potential pure_power(double mu, double p);
  /// W'(t) = t (t - a)(t - mu), normalised so that W(mu) = 0.
  static Potential cubic_genetics(double mu, double a);
  /// Product-form polynomial with local minima at the given well locations.
  /// Depths must be strictly decreasing and the deepest one must be 0.
  static Potential multi_well(std::vector<Well> wells);
  /// W(t) = sum_j coeffs[j] t^j with a zero-energy well at mu.
  static Potential polynomial(std::vector<double> coeffs, double mu,
                              double mu_minus = 0.0);

  PotentialKind kind() const noexcept { return kind_; }
  double mu() const noexcept { return mu_; }
  double mu_minus() const noexcept { return mu_minus_; }
  double p() const noexcept { return p_; }
  double a() const noexcept { return a_; }
  const std::vector<Well>& wells() const noexcept { return wells_; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  double extension_radius() const noexcept { return extension_radius_; }
  /// 1-based index of the well this potential was truncated to (0 otherwise).
  int truncation_index() const noexcept { return truncation_index_; }

  Potential with_extension_radius(double radius) const;
  Potential with_mu_minus(double mu_minus) const;

  double window_lo() const noexcept;
  double window_hi() const noexcept { return mu_ + extension_radius_; }

  /// W, W' or W'' at t (order 0, 1, 2).
  double eval(double t, int order) const;
  double W(double t) const { return eval(t, 0); }
  double dW(double t) const { return eval(t, 1); }
  double d2W(double t) const { return eval(t, 2); }

  /// W^(order)(mu - w). Keeps full relative precision for tiny w, which
  /// plain eval(mu - w) loses to cancellation.
  double eval_from_well(double w, int order) const;

  /// max |W''| over [lo, hi], sampled densely plus endpoints.
  double max_abs_d2W(double lo, double hi) const;

  nlohmann::json to_json() const;
  static Potential from_json(const nlohmann::json& j);

 private:
  friend Potential truncate_to_wells(const Potential&, int);
  Potential() = default;
  double eval_inside(double t, int order) const;
  double eval_deviation_inside(double w, int order) const;
  void finalize_taylor();

  PotentialKind kind_ = PotentialKind::double_well;
  double mu_ = 1.0;
  double mu_minus_ = 0.0;
  double p_ = 0.0;
  double a_ = 0.0;
  std::vector<Well> wells_;
  std::vector<double> coeffs_;       // monomial coefficients in t
  std::vector<double> taylor_;       // coefficients in (t - mu)
  double extension_radius_ = 2.0;
  int truncation_index_ = 0;
  double trunc_shift_ = 0.0;         // W(mu_i) of the parent potential
  double trunc_curvature_ = 0.0;     // W''(mu_i^-) of the parent potential
};

struct AssumptionReport {
  bool a_prime = false;          // hypothesis (a')
  bool a_double_prime = false;   // hypothesis (a'') with the potential's mu_minus
  bool monotone_b = false;       // W' <= 0 on (0, mu)
  bool d2W_nonneg_near_mu = false;
  bool power_bound = false;      // -W'(t) >= c (mu - t)^p near mu with p > 1
  double power_c = 0.0;
  double power_p = 0.0;
  bool krasnoselski = false;     // W'(t)/t strictly increasing on (0, mu]
  double resolution = 1e-4;
  std::vector<std::string> notes;

  nlohmann::json to_json() const;
};

/// Sampling-based verdicts for the structural hypotheses. Advisory only.
AssumptionReport check_assumptions(const Potential& potential,
                                   double resolution = 1e-4);

/// Restriction of a multi-well potential to [0, mu_i], shifted so that
/// W(mu_i) = 0 and continued above mu_i with C^2, quadratically growing tail.
Potential truncate_to_wells(const Potential& potential, int index);

}  // namespace eland
