#include "eland/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eland/error.hpp"
#include "eland/fit.hpp"
#include "eland/io.hpp"
#include "eland/quadrature.hpp"

namespace eland {

namespace {

constexpr double kMaxGeometricRatio = 1.2;

}  // namespace

double ProfileU::arclength_between(double w_hi, double w_lo) const {
  if (w_hi == w_lo) return 0.0;
  auto integrand = [this](double w) {
    return 1.0 / std::sqrt(2.0 * potential_.eval_from_well(w, 0));
  };
  if (w_lo > 0.0 && w_hi / w_lo <= 1.5) return integrate_gauss(integrand, w_lo, w_hi);
  if (w_lo > 0.0) {
    // many decades: integrate in log w, where the integrand stays bounded
    auto in_log = [&](double y) {
      const double w = std::exp(y);
      return w * integrand(w);
    };
    return integrate_adaptive(in_log, std::log(w_lo), std::log(w_hi), 1e-12).value;
  }
  return integrate_adaptive(integrand, w_lo, w_hi, 1e-12).value;
}

double ProfileU::deviation_at(double s) const {
  require(std::isfinite(s) && s >= 0.0, ErrorKind::domain, "profile: s must be >= 0");
  if (s == 0.0) return deviation_.front();
  const auto it = std::upper_bound(s_.begin(), s_.end(), s);
  if (it != s_.end() && *(it - 1) == s) return deviation_[static_cast<std::size_t>(it - s_.begin()) - 1];

  std::size_t k;
  double w_hi, w_lo;
  if (it == s_.end()) {
    k = s_.size() - 1;
    w_hi = deviation_.back();
    w_lo = w_hi;
    // march outward until the arclength passes s
    for (int i = 0; i < 400; ++i) {
      const double next = w_hi * 0.1;
      if (next < 1e-150) return 0.0;  // W(mu - w) would underflow
      if (s_.back() + arclength_between(w_hi, next) >= s) {
        w_lo = next;
        break;
      }
      w_hi = next;
    }
  } else {
    k = static_cast<std::size_t>(it - s_.begin()) - 1;
    w_hi = deviation_[k];
    w_lo = deviation_[k + 1];
  }
  const double w_ref = (it == s_.end()) ? deviation_.back() : deviation_[k];
  const double s_ref = s_[k];

  auto G = [&](double w) { return s_ref + arclength_between(w_ref, w) - s; };
  double y_hi = std::log(w_hi), y_lo = std::log(w_lo);
  // initial guess: interpolate linearly in (s, log w)
  double y = 0.5 * (y_hi + y_lo);
  {
    const double g_hi = G(w_hi), g_lo = G(w_lo);
    if (g_lo != g_hi) y = y_hi + (y_lo - y_hi) * (0.0 - g_hi) / (g_lo - g_hi);
    if (!(y < y_hi && y > y_lo)) y = 0.5 * (y_hi + y_lo);
  }
  for (int iter = 0; iter < 100; ++iter) {
    const double w = std::exp(y);
    const double g = G(w);
    if (std::abs(g) <= 1e-15 * std::max(1.0, s)) return w;
    // G decreases as y grows
    if (g > 0.0)
      y_lo = y;
    else
      y_hi = y;
    const double dG = -w / std::sqrt(2.0 * potential_.eval_from_well(w, 0));
    double next = y - g / dG;
    if (!(next > y_lo && next < y_hi) || !std::isfinite(next)) next = 0.5 * (y_lo + y_hi);
    if (std::abs(next - y) <= 1e-15 * std::max(1.0, std::abs(y))) return std::exp(next);
    y = next;
  }
  return std::exp(y);
}

double ProfileU::slope(double s) const {
  return std::sqrt(2.0 * potential_.eval_from_well(deviation_at(s), 0));
}

std::string ProfileU::to_csv() const {
  CsvWriter csv({"s", "U", "Uprime", "mu_minus_U"});
  for (std::size_t i = 0; i < s_.size(); ++i) {
    csv.row({s_[i], u_[i], std::sqrt(2.0 * potential_.eval_from_well(deviation_[i], 0)),
             deviation_[i]});
  }
  return csv.str();
}

ProfileU compute_profile(const Potential& potential, double u_max, int n_points, double start) {
  const double mu = potential.mu();
  require(n_points >= 16, ErrorKind::domain, "compute_profile: n_points must be >= 16");
  require(std::isfinite(u_max) && u_max > start && u_max < mu, ErrorKind::domain,
          "compute_profile: need start < u_max < mu");
  require(std::isfinite(start) && start >= std::min(0.0, potential.mu_minus()), ErrorKind::domain,
          "compute_profile: start below mu_minus");

  ProfileU P;
  P.potential_ = potential;
  P.start_ = start;

  const double w_cap = 1e-9 * mu;
  double w_min = mu - u_max;
  if (w_min < w_cap) {
    w_min = w_cap;
    P.notes_.push_back("u_max capped at mu - 1e-9 mu");
  }
  const double w0 = mu - start;

  // W must stay positive on [start, u_max].
  {
    constexpr int probes = 4000;
    for (int k = 0; k <= probes; ++k) {
      const double w = w_min + (w0 - w_min) * k / probes;
      const double Wv = potential.eval_from_well(w, 0);
      if (!(Wv > 0.0)) {
        std::ostringstream os;
        os << "compute_profile: W(" << mu - w << ") = " << Wv << " <= 0 on [start, u_max)";
        fail(ErrorKind::assumption, os.str());
      }
    }
  }
  if (potential.mu_minus() < 0.0 && start == 0.0) {
    for (int k = 1; k < 1000; ++k) {
      const double t = potential.mu_minus() * k / 1000.0;
      if (potential.W(t) <= 0.0) {
        P.notes_.push_back("W vanishes on (mu_minus, 0)");
        break;
      }
    }
  }

  // Chebyshev clustering toward u_max, written in terms of the deviation.
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(n_points) * 2);
  const int N = n_points;
  for (int i = 0; i < N; ++i) {
    const double half_gap = 0.5 * (0.5 * std::numbers::pi - 0.5 * std::numbers::pi * i / (N - 1));
    const double one_minus_sin = 2.0 * std::sin(half_gap) * std::sin(half_gap);
    w.push_back(w_min + (w0 - w_min) * one_minus_sin);
  }
  w.front() = w0;
  w.back() = w_min;
  // Geometric refinement where the deviation shrinks quickly.
  std::vector<double> refined{w.front()};
  for (std::size_t i = 1; i < w.size(); ++i) {
    const double a = refined.back(), b = w[i];
    if (b <= 0.0 || a / b <= kMaxGeometricRatio) {
      refined.push_back(b);
      continue;
    }
    const int pieces = static_cast<int>(std::ceil(std::log(a / b) / std::log(kMaxGeometricRatio)));
    for (int j = 1; j < pieces; ++j) refined.push_back(a * std::pow(b / a, static_cast<double>(j) / pieces));
    refined.push_back(b);
  }
  P.deviation_ = std::move(refined);

  P.s_.assign(P.deviation_.size(), 0.0);
  P.u_.assign(P.deviation_.size(), 0.0);
  P.u_[0] = start;
  for (std::size_t i = 1; i < P.deviation_.size(); ++i) {
    auto integrand = [&](double x) { return 1.0 / std::sqrt(2.0 * potential.eval_from_well(x, 0)); };
    P.s_[i] = P.s_[i - 1] +
              integrate_adaptive(integrand, P.deviation_[i], P.deviation_[i - 1], 1e-12).value;
    P.u_[i] = mu - P.deviation_[i];
  }
  P.slope0_ = std::sqrt(2.0 * potential.W(start));

  double residual = 0.0;
  for (std::size_t i = 0; i < P.deviation_.size(); ++i) {
    const double Wv = potential.eval_from_well(P.deviation_[i], 0);
    const double up = std::sqrt(2.0 * Wv);
    residual = std::max(residual, std::abs(0.5 * up * up - Wv));
  }
  P.first_integral_residual_ = residual;
  return P;
}

double compute_Dprime(const Potential& potential, double epsilon) {
  const double mu = potential.mu();
  require(std::isfinite(epsilon) && epsilon > 0.0 && epsilon < mu, ErrorKind::domain,
          "compute_Dprime: epsilon must lie in (0, mu)");
  auto integrand = [&](double w) {
    const double Wv = potential.eval_from_well(w, 0);
    if (!(Wv > 0.0)) fail(ErrorKind::assumption, "compute_Dprime: W vanishes below mu");
    return 1.0 / std::sqrt(2.0 * Wv);
  };
  return integrate_adaptive(integrand, epsilon, mu, 1e-12).value;
}

nlohmann::json DecayFit::to_json() const {
  return {{"model", model == DecayModel::exponential ? "exp" : "alg"},
          {"rate", rate},
          {"constant", constant},
          {"r2", r2},
          {"window", {s_lo, s_hi}},
          {"points", points}};
}

DecayFit fit_decay(const std::vector<double>& distance, const std::vector<double>& deviation,
                   double lo, double hi) {
  require(distance.size() == deviation.size(), ErrorKind::domain, "fit_decay: size mismatch");
  require(hi > lo, ErrorKind::domain, "fit_decay: empty window");
  std::vector<double> xs, logs, ys;
  for (std::size_t i = 0; i < distance.size(); ++i) {
    const double d = distance[i], v = deviation[i];
    if (d < lo || d > hi) continue;
    if (!(v > 1e-300) || !std::isfinite(v) || !(d > 0.0)) continue;
    xs.push_back(d);
    logs.push_back(std::log(d));
    ys.push_back(std::log(v));
  }
  require(xs.size() >= 8, ErrorKind::insufficient_data,
          "fit_decay: fewer than 8 usable points in the window");
  const auto e = fit_line(xs, ys);
  const auto a = fit_line(logs, ys);
  DecayFit f;
  f.s_lo = lo;
  f.s_hi = hi;
  f.points = xs.size();
  if (e.r2 >= a.r2) {
    f.model = DecayModel::exponential;
    f.rate = -e.slope;
    f.constant = std::exp(e.intercept);
    f.r2 = e.r2;
  } else {
    f.model = DecayModel::algebraic;
    f.rate = -a.slope;
    f.constant = std::exp(a.intercept);
    f.r2 = a.r2;
  }
  return f;
}

DecayFit fit_profile_decay(const ProfileU& profile, double s_lo, double s_hi) {
  return fit_decay(profile.s(), profile.deviation(), s_lo, s_hi);
}

}  // namespace eland
