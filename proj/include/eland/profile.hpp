#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "eland/potential.hpp"

namespace eland {

/// The one-dimensional connecting profile U'' = W'(U), U(0) = start,
/// U(s) -> mu, sampled on a graded grid and recovered from the first integral
/// (1/2) U'^2 = W(U).
class ProfileU {
 public:
  const Potential& potential() const noexcept { return potential_; }
  double mu() const noexcept { return potential_.mu(); }
  double start() const noexcept { return start_; }
  double slope0() const noexcept { return slope0_; }
  /// Largest sampled value; the requested u_max may have been capped.
  double u_max() const noexcept { return mu() - deviation_.back(); }
  double s_max() const noexcept { return s_.back(); }
  double first_integral_residual() const noexcept { return first_integral_residual_; }
  const std::vector<double>& s() const noexcept { return s_; }
  const std::vector<double>& u() const noexcept { return u_; }
  /// mu - U at the nodes, without cancellation.
  const std::vector<double>& deviation() const noexcept { return deviation_; }
  const std::vector<std::string>& notes() const noexcept { return notes_; }

  /// U(s) for any s >= 0 (Newton inversion of the arclength integral).
  double value(double s) const { return mu() - deviation_at(s); }
  /// mu - U(s) with full relative precision.
  double deviation_at(double s) const;
  /// U'(s) = sqrt(2 W(U(s))).
  double slope(double s) const;

  std::string to_csv() const;

 private:
  friend ProfileU compute_profile(const Potential&, double, int, double);
  double arclength_between(double w_hi, double w_lo) const;

  Potential potential_ = Potential::double_well();
  double start_ = 0.0;
  double slope0_ = 0.0;
  double first_integral_residual_ = 0.0;
  std::vector<double> s_;
  std::vector<double> u_;
  std::vector<double> deviation_;
  std::vector<std::string> notes_;
};

/// Builds U from s(u) = int_start^u dt / sqrt(2 W(t)) on a u-grid that is
/// Chebyshev-clustered toward u_max and geometrically refined in mu - u.
ProfileU compute_profile(const Potential& potential, double u_max, int n_points,
                         double start = 0.0);

/// Arclength D' with U(D') = mu - epsilon.
double compute_Dprime(const Potential& potential, double epsilon);

enum class DecayModel { exponential, algebraic };

struct DecayFit {
  DecayModel model = DecayModel::exponential;
  double rate = 0.0;      // k in e^{-k s}, or the exponent q in s^{-q}
  double constant = 0.0;
  double r2 = 0.0;
  double s_lo = 0.0;
  double s_hi = 0.0;
  std::size_t points = 0;

  nlohmann::json to_json() const;
};

/// Least-squares fit of log(mu - U) against s and against log s on the
/// window; returns the model with the larger r^2.
DecayFit fit_profile_decay(const ProfileU& profile, double s_lo, double s_hi);

/// Same two-model fit on arbitrary (distance, deviation) samples.
DecayFit fit_decay(const std::vector<double>& distance, const std::vector<double>& deviation,
                   double lo, double hi);

}  // namespace eland
