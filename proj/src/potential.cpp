#include "eland/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <limits>
#include <set>

#include "eland/error.hpp"
#include "eland/fit.hpp"

namespace eland {

namespace {

// Polynomial helpers. Coefficients are stored lowest degree first.

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> derivative(const std::vector<double>& c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> d(c.size() - 1);
  for (std::size_t j = 1; j < c.size(); ++j) d[j - 1] = c[j] * static_cast<double>(j);
  return d;
}

std::vector<double> antiderivative(const std::vector<double>& c) {
  std::vector<double> out(c.size() + 1, 0.0);
  for (std::size_t j = 0; j < c.size(); ++j) out[j + 1] = c[j] / static_cast<double>(j + 1);
  return out;
}

double poly_derivative_at(const std::vector<double>& c, double x, int order) {
  std::vector<double> d = c;
  for (int k = 0; k < order; ++k) d = derivative(d);
  return horner(d, x);
}

// Coefficients of p(x0 + y) in powers of y.
std::vector<double> taylor_shift(const std::vector<double>& c, double x0) {
  std::vector<double> b = c;
  const std::size_t n = b.size();
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t j = n - 1; j > k; --j) b[j - 1] += x0 * b[j];
  return b;
}

std::vector<double> multiply_linear(const std::vector<double>& c, double root) {
  std::vector<double> out(c.size() + 1, 0.0);
  for (std::size_t j = 0; j < c.size(); ++j) {
    out[j + 1] += c[j];
    out[j] -= root * c[j];
  }
  return out;
}

double integrate_poly(const std::vector<double>& c, double lo, double hi) {
  const auto F = antiderivative(c);
  return horner(F, hi) - horner(F, lo);
}

std::vector<double> product_form(double scale, const std::vector<double>& roots) {
  std::vector<double> c{scale};
  for (double r : roots) c = multiply_linear(c, r);
  return c;
}

// Solve for the interior maxima of W' = kappa * prod(t - mu_i) prod(t - nu_i)
// so that W(mu_{i+1}) - W(mu_i) equals the prescribed depth gaps.
std::vector<double> solve_saddle_points(const std::vector<Well>& wells, double kappa) {
  const std::size_t m = wells.size();
  const std::size_t k = m - 1;
  std::vector<double> nu(k);
  for (std::size_t i = 0; i < k; ++i)
    nu[i] = 0.5 * (wells[i].location + wells[i + 1].location);

  auto residual = [&](const std::vector<double>& v) {
    std::vector<double> roots;
    for (const auto& w : wells) roots.push_back(w.location);
    roots.insert(roots.end(), v.begin(), v.end());
    const auto dW = product_form(kappa, roots);
    std::vector<double> r(k);
    for (std::size_t i = 0; i < k; ++i)
      r[i] = integrate_poly(dW, wells[i].location, wells[i + 1].location) -
             (wells[i + 1].depth - wells[i].depth);
    return r;
  };

  for (int iter = 0; iter < 100; ++iter) {
    auto r = residual(nu);
    double norm = 0.0;
    for (double x : r) norm = std::max(norm, std::abs(x));
    if (norm < 1e-15) break;
    // Dense finite-difference Jacobian; k is tiny.
    std::vector<std::vector<double>> J(k, std::vector<double>(k));
    for (std::size_t j = 0; j < k; ++j) {
      auto bumped = nu;
      const double step = 1e-7 * (1.0 + std::abs(nu[j]));
      bumped[j] += step;
      auto rb = residual(bumped);
      for (std::size_t i = 0; i < k; ++i) J[i][j] = (rb[i] - r[i]) / step;
    }
    // Gaussian elimination with partial pivoting.
    std::vector<double> dx(k);
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t piv = c;
      for (std::size_t i = c + 1; i < k; ++i)
        if (std::abs(J[i][c]) > std::abs(J[piv][c])) piv = i;
      std::swap(J[c], J[piv]);
      std::swap(r[c], r[piv]);
      require(std::abs(J[c][c]) > 0.0, ErrorKind::domain,
              "multi_well: singular depth system");
      for (std::size_t i = c + 1; i < k; ++i) {
        const double f = J[i][c] / J[c][c];
        for (std::size_t j = c; j < k; ++j) J[i][j] -= f * J[c][j];
        r[i] -= f * r[c];
      }
    }
    for (std::size_t c = k; c-- > 0;) {
      double acc = -r[c];
      for (std::size_t j = c + 1; j < k; ++j) acc -= J[c][j] * dx[j];
      dx[c] = acc / J[c][c];
    }
    for (std::size_t i = 0; i < k; ++i) nu[i] += dx[i];
  }
  for (std::size_t i = 0; i < k; ++i) {
    require(nu[i] > wells[i].location && nu[i] < wells[i + 1].location, ErrorKind::domain,
            "multi_well: depths not realisable by a product-form polynomial");
  }
  auto r = residual(nu);
  for (double x : r)
    require(std::abs(x) < 1e-12, ErrorKind::domain, "multi_well: depth system did not converge");
  return nu;
}

}  // namespace

const char* to_string(PotentialKind kind) noexcept {
  switch (kind) {
    case PotentialKind::double_well: return "double_well";
    case PotentialKind::pure_power: return "pure_power";
    case PotentialKind::cubic_genetics: return "cubic_genetics";
    case PotentialKind::multi_well: return "multi_well";
    case PotentialKind::polynomial: return "polynomial";
    case PotentialKind::truncated_multi_well: return "truncated_multi_well";
  }
  return "unknown";
}

Potential Potential::double_well(double mu) {
  require(std::isfinite(mu) && mu > 0.0, ErrorKind::domain, "double_well: mu must be > 0");
  Potential P;
  P.kind_ = PotentialKind::double_well;
  P.mu_ = mu;
  return P;
}

Potential Potential::pure_power(double mu, double p) {
  require(std::isfinite(mu) && mu > 0.0, ErrorKind::domain, "pure_power: mu must be > 0");
  require(std::isfinite(p) && p >= 1.0, ErrorKind::domain, "pure_power: p must be >= 1");
  Potential P;
  P.kind_ = PotentialKind::pure_power;
  P.mu_ = mu;
  P.p_ = p;
  return P;
}

Potential Potential::cubic_genetics(double mu, double a) {
  require(std::isfinite(mu) && mu > 0.0, ErrorKind::domain, "cubic_genetics: mu must be > 0");
  require(a > 0.0 && a < 0.5 * mu, ErrorKind::domain, "cubic_genetics: a must lie in (0, mu/2)");
  Potential P;
  P.kind_ = PotentialKind::cubic_genetics;
  P.mu_ = mu;
  P.a_ = a;
  const double c0 = mu * mu * mu * (mu - 2.0 * a) / 12.0;
  P.coeffs_ = {c0, 0.0, 0.5 * a * mu, -(a + mu) / 3.0, 0.25};
  P.finalize_taylor();
  return P;
}

Potential Potential::multi_well(std::vector<Well> wells) {
  require(!wells.empty(), ErrorKind::domain, "multi_well: need at least one well");
  for (std::size_t i = 0; i < wells.size(); ++i) {
    require(std::isfinite(wells[i].location) && std::isfinite(wells[i].depth), ErrorKind::domain,
            "multi_well: non-finite well");
    require(wells[i].location > 0.0, ErrorKind::domain, "multi_well: well locations must be > 0");
    if (i > 0) {
      require(wells[i].location > wells[i - 1].location, ErrorKind::domain,
              "multi_well: wells must be strictly ordered");
      require(wells[i].depth < wells[i - 1].depth, ErrorKind::domain,
              "multi_well: depths must be strictly decreasing");
    }
  }
  require(std::abs(wells.back().depth) <= 1e-15, ErrorKind::domain,
          "multi_well: the deepest (last) well must have depth 0");
  wells.back().depth = 0.0;

  // Steepness: large enough that each depth gap is reachable with an interior
  // saddle point.
  double kappa = 1.0;
  for (std::size_t i = 0; i + 1 < wells.size(); ++i) {
    const double L = wells[i + 1].location - wells[i].location;
    const double gap = wells[i].depth - wells[i + 1].depth;
    kappa = std::max(kappa, 24.0 * gap / std::pow(L, 4));
  }
  const auto nu = solve_saddle_points(wells, kappa);
  std::vector<double> roots;
  for (const auto& w : wells) roots.push_back(w.location);
  roots.insert(roots.end(), nu.begin(), nu.end());
  auto W = antiderivative(product_form(kappa, roots));
  W[0] -= horner(W, wells.back().location);

  Potential P;
  P.kind_ = PotentialKind::multi_well;
  P.wells_ = std::move(wells);
  P.mu_ = P.wells_.back().location;
  P.coeffs_ = std::move(W);
  P.finalize_taylor();
  return P;
}

Potential Potential::polynomial(std::vector<double> coeffs, double mu, double mu_minus) {
  require(coeffs.size() >= 3, ErrorKind::domain, "polynomial: need degree >= 2");
  for (double c : coeffs) require(std::isfinite(c), ErrorKind::domain, "polynomial: non-finite coefficient");
  require(std::isfinite(mu) && mu > 0.0, ErrorKind::domain, "polynomial: mu must be > 0");
  require(mu_minus <= 0.0, ErrorKind::domain, "polynomial: mu_minus must be <= 0");
  double scale = 1.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) scale += std::abs(coeffs[j]) * std::pow(mu, j);
  require(std::abs(horner(coeffs, mu)) <= 1e-12 * scale, ErrorKind::domain,
          "polynomial: W(mu) must vanish");
  require(std::abs(poly_derivative_at(coeffs, mu, 1)) <= 1e-12 * scale, ErrorKind::domain,
          "polynomial: W'(mu) must vanish");
  Potential P;
  P.kind_ = PotentialKind::polynomial;
  P.coeffs_ = std::move(coeffs);
  P.mu_ = mu;
  P.mu_minus_ = mu_minus;
  P.finalize_taylor();
  return P;
}

void Potential::finalize_taylor() {
  taylor_ = taylor_shift(coeffs_, mu_);
  // The well is exact by construction; drop round-off in the first two terms.
  taylor_[0] = 0.0;
  if (taylor_.size() > 1) taylor_[1] = 0.0;
}

Potential Potential::with_extension_radius(double radius) const {
  require(std::isfinite(radius) && radius > 0.0, ErrorKind::domain,
          "extension_radius must be > 0");
  Potential P = *this;
  P.extension_radius_ = radius;
  return P;
}

Potential Potential::with_mu_minus(double mu_minus) const {
  require(std::isfinite(mu_minus) && mu_minus <= 0.0, ErrorKind::domain,
          "mu_minus must be <= 0");
  Potential P = *this;
  P.mu_minus_ = mu_minus;
  return P;
}

double Potential::window_lo() const noexcept {
  // symmetric window keeps the double well exactly even
  if (kind_ == PotentialKind::double_well) return -window_hi();
  return mu_minus_ - extension_radius_;
}

double Potential::eval(double t, int order) const {
  require(std::isfinite(t), ErrorKind::domain, "eval: non-finite argument");
  require(order >= 0 && order <= 2, ErrorKind::domain, "eval: order must be 0, 1 or 2");
  const double lo = window_lo();
  const double hi = window_hi();
  if (t > hi || t < lo) {
    const double edge = t > hi ? hi : lo;
    if (order == 2) return 0.0;
    const double slope = eval_inside(edge, 1);
    if (order == 1) return slope;
    return eval_inside(edge, 0) + slope * (t - edge);
  }
  return eval_inside(t, order);
}

double Potential::eval_inside(double t, int order) const {
  switch (kind_) {
    case PotentialKind::double_well: {
      const double q = t * t - mu_ * mu_;
      if (order == 0) return 0.25 * q * q;
      if (order == 1) return t * q;
      return 3.0 * t * t - mu_ * mu_;
    }
    case PotentialKind::pure_power: {
      const double d = t - mu_;
      const double ad = std::abs(d);
      if (order == 0) return std::pow(ad, p_ + 1.0);
      if (order == 1) return (p_ + 1.0) * std::pow(ad, p_ - 1.0) * d;
      return (p_ + 1.0) * p_ * std::pow(ad, p_ - 1.0);
    }
    case PotentialKind::truncated_multi_well: {
      if (t <= mu_) return poly_derivative_at(taylor_, t - mu_, order);
      const double s = t - mu_;
      const double a = trunc_curvature_;
      const double q = 1.0 + s;
      if (order == 0) return 0.5 * a * s * s + s * s * s / q;
      if (order == 1) return a * s + (3.0 * s * s + 2.0 * s * s * s) / (q * q);
      return a + (6.0 * s + 6.0 * s * s + 2.0 * s * s * s) / (q * q * q);
    }
    case PotentialKind::cubic_genetics:
    case PotentialKind::multi_well:
    case PotentialKind::polynomial:
      // expansion about mu, so W(mu) = W'(mu) = 0 hold exactly
      return poly_derivative_at(taylor_, t - mu_, order);
  }
  return 0.0;
}

double Potential::eval_from_well(double w, int order) const {
  require(std::isfinite(w), ErrorKind::domain, "eval_from_well: non-finite argument");
  const double t = mu_ - w;
  if (t > window_hi() || t < window_lo()) return eval(t, order);
  return eval_deviation_inside(w, order);
}

double Potential::eval_deviation_inside(double w, int order) const {
  switch (kind_) {
    case PotentialKind::double_well: {
      // t^2 - mu^2 = (t - mu)(t + mu) = -w (2 mu - w)
      const double q = -w * (2.0 * mu_ - w);
      const double t = mu_ - w;
      if (order == 0) return 0.25 * q * q;
      if (order == 1) return t * q;
      return 2.0 * mu_ * mu_ - 6.0 * mu_ * w + 3.0 * w * w;
    }
    case PotentialKind::pure_power: {
      const double aw = std::abs(w);
      if (order == 0) return std::pow(aw, p_ + 1.0);
      if (order == 1) return -(p_ + 1.0) * std::pow(aw, p_ - 1.0) * w;
      return (p_ + 1.0) * p_ * std::pow(aw, p_ - 1.0);
    }
    case PotentialKind::truncated_multi_well:
      if (w < 0.0) return eval_inside(mu_ - w, order);
      [[fallthrough]];
    case PotentialKind::cubic_genetics:
    case PotentialKind::multi_well:
    case PotentialKind::polynomial: {
      // taylor_ holds the expansion in y = t - mu = -w.
      return poly_derivative_at(taylor_, -w, order);
    }
  }
  return 0.0;
}

double Potential::max_abs_d2W(double lo, double hi) const {
  require(hi >= lo, ErrorKind::domain, "max_abs_d2W: empty interval");
  constexpr int samples = 4000;
  double best = std::max(std::abs(d2W(lo)), std::abs(d2W(hi)));
  for (int k = 0; k <= samples; ++k) {
    const double t = lo + (hi - lo) * k / samples;
    best = std::max(best, std::abs(d2W(t)));
  }
  return best;
}

nlohmann::json Potential::to_json() const {
  nlohmann::json j;
  j["kind"] = to_string(kind_);
  j["mu"] = mu_;
  j["mu_minus"] = mu_minus_;
  j["extension_radius"] = extension_radius_;
  switch (kind_) {
    case PotentialKind::pure_power: j["p"] = p_; break;
    case PotentialKind::cubic_genetics: j["a"] = a_; break;
    case PotentialKind::polynomial: j["coeffs"] = coeffs_; break;
    case PotentialKind::multi_well:
    case PotentialKind::truncated_multi_well: {
      auto arr = nlohmann::json::array();
      for (const auto& w : wells_) arr.push_back({w.location, w.depth});
      j["wells"] = arr;
      break;
    }
    case PotentialKind::double_well: break;
  }
  return j;
}

Potential Potential::from_json(const nlohmann::json& j) {
  require(j.is_object(), ErrorKind::usage, "potential: expected a JSON object");
  static const std::set<std::string> known{"kind", "mu", "mu_minus", "p", "a",
                                           "wells", "coeffs", "extension_radius"};
  for (const auto& [key, _] : j.items())
    require(known.count(key) > 0, ErrorKind::usage, "potential: unknown field '" + key + "'");
  require(j.contains("kind") && j["kind"].is_string(), ErrorKind::usage,
          "potential: missing 'kind'");
  auto number = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    require(j[key].is_number(), ErrorKind::usage, std::string("potential: '") + key + "' must be a number");
    return j[key].get<double>();
  };
  auto need = [&](const char* key) {
    auto v = number(key);
    require(v.has_value(), ErrorKind::usage, std::string("potential: missing '") + key + "'");
    return *v;
  };
  auto parse_wells = [&]() {
    require(j.contains("wells") && j["wells"].is_array(), ErrorKind::usage,
            "potential: 'wells' must be an array of [location, depth] pairs");
    std::vector<Well> wells;
    for (const auto& w : j["wells"]) {
      require(w.is_array() && w.size() == 2 && w[0].is_number() && w[1].is_number(),
              ErrorKind::usage, "potential: each well must be [location, depth]");
      wells.push_back({w[0].get<double>(), w[1].get<double>()});
    }
    return wells;
  };

  const std::string kind = j["kind"].get<std::string>();
  Potential P;
  if (kind == "double_well") {
    P = double_well(number("mu").value_or(1.0));
  } else if (kind == "pure_power") {
    P = pure_power(number("mu").value_or(1.0), need("p"));
  } else if (kind == "cubic_genetics") {
    P = cubic_genetics(number("mu").value_or(1.0), need("a"));
  } else if (kind == "multi_well") {
    P = multi_well(parse_wells());
  } else if (kind == "truncated_multi_well") {
    const auto base = multi_well(parse_wells());
    const double target = need("mu");
    int index = 0;
    for (std::size_t i = 0; i < base.wells().size(); ++i)
      if (base.wells()[i].location == target) index = static_cast<int>(i) + 1;
    require(index > 0, ErrorKind::usage, "potential: 'mu' must equal one of the well locations");
    P = truncate_to_wells(base, index);
  } else if (kind == "polynomial") {
    require(j.contains("coeffs") && j["coeffs"].is_array(), ErrorKind::usage,
            "potential: 'coeffs' must be an array");
    std::vector<double> c;
    for (const auto& x : j["coeffs"]) {
      require(x.is_number(), ErrorKind::usage, "potential: coefficients must be numbers");
      c.push_back(x.get<double>());
    }
    P = polynomial(std::move(c), need("mu"), number("mu_minus").value_or(0.0));
  } else {
    fail(ErrorKind::usage, "potential: unknown kind '" + kind + "'");
  }
  if (auto mm = number("mu_minus"); mm && kind != "polynomial") P = P.with_mu_minus(*mm);
  if (auto ext = number("extension_radius")) P = P.with_extension_radius(*ext);
  return P;
}

Potential truncate_to_wells(const Potential& potential, int index) {
  require(potential.kind() == PotentialKind::multi_well, ErrorKind::domain,
          "truncate_to_wells: requires a multi_well potential");
  const int m = static_cast<int>(potential.wells().size());
  require(index >= 1 && index <= m, ErrorKind::domain, "truncate_to_wells: index out of range");
  const double mu_i = potential.wells()[index - 1].location;
  Potential P = potential;
  P.kind_ = PotentialKind::truncated_multi_well;
  P.mu_ = mu_i;
  P.truncation_index_ = index;
  P.trunc_shift_ = potential.wells()[index - 1].depth;
  P.trunc_curvature_ = std::max(0.0, poly_derivative_at(potential.coeffs_, mu_i, 2));
  P.taylor_ = taylor_shift(potential.coeffs_, mu_i);
  P.taylor_[0] = 0.0;
  P.taylor_[1] = 0.0;
  return P;
}

nlohmann::json AssumptionReport::to_json() const {
  nlohmann::json j;
  j["a_prime"] = a_prime;
  j["a_double_prime"] = a_double_prime;
  j["monotone_b"] = monotone_b;
  j["d2W_nonneg_near_mu"] = d2W_nonneg_near_mu;
  j["power_bound"] = {{"holds", power_bound}, {"c", power_c}, {"p", power_p}};
  j["krasnoselski"] = krasnoselski;
  j["resolution"] = resolution;
  j["notes"] = notes;
  return j;
}

AssumptionReport check_assumptions(const Potential& W, double resolution) {
  require(resolution > 0.0 && resolution < 0.1, ErrorKind::domain,
          "check_assumptions: resolution must be in (0, 0.1)");
  AssumptionReport rep;
  rep.resolution = resolution;
  const double mu = W.mu();
  const double lo = W.window_lo();
  const double hi = W.window_hi();

  auto grid = [&](double a, double b, auto&& fn) {
    const auto n = static_cast<long>(std::ceil((b - a) / resolution));
    for (long k = 0; k <= n; ++k) {
      const double t = std::min(b, a + k * resolution);
      if (!fn(t)) return false;
    }
    return true;
  };

  const bool zero_well = std::abs(W.W(mu)) <= 1e-12 && std::abs(W.dW(mu)) <= 1e-12;
  if (!zero_well) rep.notes.push_back("W(mu) or W'(mu) does not vanish");

  // W >= 0 on the whole line: sample the window, the tails are linear.
  const bool nonneg = grid(lo, hi, [&](double t) { return W.W(t) >= 0.0; }) &&
                      W.dW(hi) >= 0.0 && W.dW(lo) <= 0.0;
  if (!nonneg) rep.notes.push_back("W takes negative values");

  auto positive_below_mu = [&](double from) {
    // sample by deviation from the well so values near mu keep precision
    const auto n = static_cast<long>(std::ceil((mu - from) / resolution));
    for (long k = 1; k <= n; ++k) {
      const double w = std::min(mu - from, k * resolution);
      if (!(W.eval_from_well(w, 0) > 0.0)) return false;
    }
    return true;
  };

  // (a')
  {
    const bool pos = positive_below_mu(0.0);
    const bool reflect = grid(0.0, mu, [&](double t) { return W.W(-t) >= W.W(t); });
    const bool decreasing_left =
        grid(lo, -resolution, [&](double t) { return W.dW(t) < 0.0; }) && W.dW(lo) < 0.0;
    rep.a_prime = zero_well && nonneg && pos && (reflect || decreasing_left);
  }
  // (a'')
  {
    const double mm = W.mu_minus();
    const bool pos = positive_below_mu(mm);
    const bool reflect = grid(mm, mu, [&](double t) { return W.W(2.0 * mm - t) >= W.W(t); });
    const bool decreasing_left =
        grid(lo, mm - resolution, [&](double t) { return W.dW(t) < 0.0; }) && W.dW(lo) < 0.0;
    rep.a_double_prime = zero_well && nonneg && pos && (reflect || decreasing_left);
  }

  rep.monotone_b = grid(resolution, mu - resolution, [&](double t) { return W.dW(t) <= 0.0; });

  const double near = 0.05 * mu;
  rep.d2W_nonneg_near_mu = true;
  for (int k = 1; k <= 500; ++k) {
    if (W.eval_from_well(near * k / 500.0, 2) < 0.0) rep.d2W_nonneg_near_mu = false;
  }

  if (W.kind() == PotentialKind::pure_power) {
    rep.power_c = W.p() + 1.0;
    rep.power_p = W.p();
    rep.power_bound = W.p() > 1.0;
    rep.notes.push_back("power bound from the closed form -W'(t) = (p+1)(mu-t)^p");
  } else {
    std::vector<double> xs, ys;
    bool positive = true;
    for (int k = 0; k <= 200; ++k) {
      const double w = near * std::pow(1e-3, 1.0 - k / 200.0);
      const double g = -W.eval_from_well(w, 1);
      if (!(g > 0.0)) {
        positive = false;
        break;
      }
      xs.push_back(std::log(w));
      ys.push_back(std::log(g));
    }
    if (positive) {
      const auto line = fit_line(xs, ys);
      rep.power_p = line.slope;
      double c = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < xs.size(); ++k)
        c = std::min(c, std::exp(ys[k] - rep.power_p * xs[k]));
      rep.power_c = c;
      rep.power_bound = rep.power_p > 1.0 + 1e-3 && c > 0.0;
    }
  }

  {
    double prev = -std::numeric_limits<double>::infinity();
    rep.krasnoselski = grid(resolution, mu, [&](double t) {
      const double f = W.dW(t) / t;
      const bool ok = f > prev;
      prev = f;
      return ok;
    });
  }
  return rep;
}

}  // namespace eland
