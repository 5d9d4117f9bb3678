#include "eland/solve2d.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "eland/cg.hpp"
#include "eland/error.hpp"
#include "eland/fit.hpp"

namespace eland {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// The discrete operator in the deviation w = mu - u:
///   r_k = (sum_e c_e (w_k - w_nb)) / (h^2 m_k) - W'(mu - w_k),
/// which is -(Delta_h u - W'(u)). Nodes outside the active mask hold fixed
/// values (mu on the Dirichlet boundary).
class Discrete2D {
 public:
  Discrete2D(const Domain2D& d, const Potential& W, std::vector<double> active)
      : d_(d), W_(W), active_(std::move(active)),
        laplace_(d, active_, std::vector<double>(d.size(), 0.0)) {}
  Discrete2D(const Domain2D& d, const Potential& W) : Discrete2D(d, W, d.mask()) {}

  const Domain2D& domain() const { return d_; }
  const Potential& potential() const { return W_; }
  const std::vector<double>& active() const { return active_; }

  double residual(const std::vector<double>& w, std::vector<double>& r) const {
    laplace_.apply(w, r);
    double sup = 0.0;
    for (std::size_t k : d_.unknowns()) {
      if (active_[k] == 0.0) {
        r[k] = 0.0;
        continue;
      }
      r[k] = r[k] / d_.weight()[k] - W_.eval_from_well(w[k], 1);
      sup = std::max(sup, std::abs(r[k]));
    }
    return sup;
  }

  /// Solves (A + diag(shift) M) delta = -M r.
  CgResult correction(const std::vector<double>& shift, const std::vector<double>& r,
                      std::vector<double>& delta, double tol) const {
    StencilSystem S(d_, active_, shift);
    std::vector<double> b(d_.size(), 0.0);
    for (std::size_t k : d_.unknowns())
      if (active_[k] != 0.0) b[k] = -d_.weight()[k] * r[k];
    delta.assign(d_.size(), 0.0);
    return conjugate_gradient(S, b, delta, tol, 50000);
  }

 private:
  const Domain2D& d_;
  const Potential& W_;
  std::vector<double> active_;
  StencilSystem laplace_;
};

enum class Order { w_decreasing, w_increasing, projected };

struct FlowStats {
  int iterations = 0;
  int cg_iterations = 0;
  double final_increment = std::numeric_limits<double>::infinity();
  double residual = 0.0;
  double order_noise = 0.0;
};

/// Semi-implicit steps (A + Lambda M) delta = -M r. For the monotone
/// directions a wrong-signed increment larger than the CG noise allowance is
/// an error; smaller ones are zeroed so the iterates stay ordered.
FlowStats sattinger(const Discrete2D& op, double lambda, std::vector<double>& w, Order order,
                    double increment_tol, double residual_tol, int max_iterations, double cg_tol,
                    double w_hi) {
  const Domain2D& d = op.domain();
  std::vector<double> r(d.size(), 0.0), delta;
  const std::vector<double> shift(d.size(), lambda);
  FlowStats st;
  for (int it = 0;; ++it) {
    st.residual = op.residual(w, r);
    const bool inc_ok = order == Order::projected || st.final_increment < increment_tol;
    if (inc_ok && st.residual <= residual_tol) break;
    if (it >= max_iterations) {
      std::ostringstream os;
      os << "monotone iteration: no convergence after " << max_iterations << " steps";
      throw NumericError(os.str(), st.residual);
    }
    const CgResult cg = op.correction(shift, r, delta, cg_tol);
    st.cg_iterations += cg.iterations;
    if (!cg.converged)
      throw NumericError("conjugate gradients did not converge in a monotone step", cg.relative_residual);
    double dmax = 0.0;
    for (std::size_t k : d.unknowns()) dmax = std::max(dmax, std::abs(delta[k]));
    const double allowance = 1e-12 + 10.0 * cg_tol * dmax;
    double inc = 0.0;
    for (std::size_t k : d.unknowns()) {
      if (op.active()[k] == 0.0) continue;
      double dk = delta[k];
      const double wrong = order == Order::w_decreasing ? dk : (order == Order::w_increasing ? -dk : 0.0);
      if (wrong > 0.0) {
        if (wrong > allowance) {
          std::ostringstream os;
          os << "monotone iteration lost its ordering at (" << d.x(k) << ", " << d.y(k)
             << "), step " << it + 1 << ", by " << wrong;
          fail(ErrorKind::monotonicity, os.str());
        }
        st.order_noise = std::max(st.order_noise, wrong);
        dk = 0.0;
      }
      double next = w[k] + dk;
      if (order == Order::projected) next = std::clamp(next, 0.0, w_hi);
      inc = std::max(inc, std::abs(next - w[k]));
      w[k] = next;
    }
    st.final_increment = inc;
    st.iterations = it + 1;
  }
  return st;
}

struct NewtonStats {
  bool ok = false;
  int iterations = 0;
  int cg_iterations = 0;
  double residual = 0.0;
};

double roundoff_floor(const Domain2D& d, const Potential& W, double tol) {
  const double scale = std::max(1.0, W.mu() - std::min(0.0, W.mu_minus()));
  return std::max(tol, 128.0 * std::numeric_limits<double>::epsilon() * scale / (d.h() * d.h()));
}

/// Damped Newton on the active nodes. Returns ok = false on an indefinite
/// Jacobian or a failed line search so the caller can fall back to the flow.
NewtonStats newton(const Discrete2D& op, std::vector<double>& w, double tol, int max_steps,
                   double cg_tol) {
  const Domain2D& d = op.domain();
  const Potential& W = op.potential();
  const double floor = roundoff_floor(d, W, tol);
  std::vector<double> r(d.size(), 0.0), delta, trial, shift(d.size(), 0.0);
  NewtonStats st;
  st.residual = op.residual(w, r);
  bool polished = false;
  for (int step = 0; step < max_steps; ++step) {
    if (st.residual <= floor) {
      if (polished) break;
      polished = true;  // one extra step once converged
    }
    for (std::size_t k : d.unknowns()) shift[k] = W.eval_from_well(w[k], 2);
    const CgResult cg = op.correction(shift, r, delta, cg_tol);
    st.cg_iterations += cg.iterations;
    if (cg.indefinite || !cg.converged) return st;
    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h <= 10; ++h, t *= 0.5) {
      trial = w;
      for (std::size_t k : d.unknowns()) trial[k] += t * delta[k];
      const double res = op.residual(trial, r);
      if (res < st.residual || (polished && res <= floor)) {
        w.swap(trial);
        st.residual = res;
        accepted = true;
        break;
      }
    }
    ++st.iterations;
    if (!accepted) {
      op.residual(w, r);
      if (st.residual <= 10.0 * floor) {
        st.ok = true;
        return st;
      }
      return st;
    }
  }
  st.ok = st.residual <= 10.0 * floor;
  return st;
}

std::vector<double> dirichlet_deviation(const Domain2D& d, double mu) {
  std::vector<double> w(d.size(), mu);
  return w;
}

/// Newton (with a flow fallback) on the nodes where u > 0, the rest held at 0.
void resolve_on_support(const Domain2D& d, const Potential& W, std::vector<double>& w,
                        double lambda) {
  const double mu = W.mu();
  std::vector<double> active(d.size(), 0.0);
  for (std::size_t k : d.unknowns())
    if (w[k] < mu) active[k] = 1.0;
  Discrete2D ball(d, W, active);
  NewtonStats ns = newton(ball, w, 1e-11, 50, 1e-12);
  if (!ns.ok) {
    sattinger(ball, lambda, w, Order::projected, 0.0, 1e-6, 5000, 1e-10, mu);
    ns = newton(ball, w, 1e-11, 50, 1e-12);
  }
  if (!ns.ok) throw NumericError("could not re-solve the ball field on its support", ns.residual);
  for (std::size_t k : d.unknowns()) w[k] = std::clamp(w[k], 0.0, mu);
}

}  // namespace

double energy_2d(const Domain2D& d, const Potential& W, const std::vector<double>& w) {
  require(w.size() == d.size(), ErrorKind::domain, "energy_2d: size mismatch");
  const std::size_t s = d.stride(), N = d.size();
  const double mu = W.mu();
  auto val = [&](std::size_t k) { return d.is_unknown(k) ? w[k] : mu; };
  double grad = 0.0;
  for (std::size_t k = 0; k + s < N; ++k) {
    if (d.edge_x()[k] != 0.0) {
      const double g = val(k + 1) - val(k);
      grad += 0.5 * d.edge_x()[k] * g * g;
    }
    if (d.edge_y()[k] != 0.0) {
      const double g = val(k + s) - val(k);
      grad += 0.5 * d.edge_y()[k] * g * g;
    }
  }
  double pot = 0.0;
  for (std::size_t k : d.unknowns()) pot += d.weight()[k] * W.eval_from_well(w[k], 0);
  return grad + d.h() * d.h() * pot;
}

double residual_2d(const Domain2D& d, const Potential& W, const std::vector<double>& w) {
  Discrete2D op(d, W);
  std::vector<double> r(d.size(), 0.0), full(w);
  for (std::size_t k = 0; k < full.size(); ++k)
    if (!d.is_unknown(k)) full[k] = W.mu();
  return op.residual(full, r);
}

std::vector<double> plateau_competitor(const Domain2D& d, double mu) {
  std::vector<double> w = dirichlet_deviation(d, mu);
  for (std::size_t k : d.unknowns()) w[k] = mu * std::max(0.0, 1.0 - d.dist()[k]);
  return w;
}

std::vector<double> profile_guess(const Domain2D& d, const Potential& W) {
  const double mu = W.mu();
  const ProfileU U = compute_profile(W, mu * (1.0 - 1e-9), 400);
  const double ds = 0.5 * d.h();
  const int n = static_cast<int>(std::ceil(d.dist_max() / ds)) + 2;
  std::vector<double> table(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) table[static_cast<std::size_t>(i)] = U.deviation_at(i * ds);
  std::vector<double> w = dirichlet_deviation(d, mu);
  for (std::size_t k : d.unknowns()) {
    const double q = d.dist()[k] / ds;
    const int i = std::min(static_cast<int>(q), n - 2);
    const double t = q - i;
    w[k] = (1.0 - t) * table[static_cast<std::size_t>(i)] + t * table[static_cast<std::size_t>(i) + 1];
  }
  return w;
}

GridField2D lower_solution_field(DomainPtr domain, const RadialSolution& radial, double px,
                                 double py) {
  require(domain != nullptr, ErrorKind::domain, "lower_solution_field: no domain");
  const Domain2D& d = *domain;
  const double R = radial.R();
  const double dP = d.dist_at(px, py);
  if (!(dP > R)) {
    std::ostringstream os;
    os << "lower_solution_field: ball of radius " << R << " at (" << px << ", " << py
       << ") is not inside the domain (dist = " << dP << ")";
    fail(ErrorKind::domain, os.str());
  }
  const double mu = radial.mu();
  std::vector<double> w = dirichlet_deviation(d, mu);
  for (std::size_t k : d.unknowns()) {
    const double r = std::hypot(d.x(k) - px, d.y(k) - py);
    if (r < R) w[k] = std::clamp(radial.deviation_and_slope(r).first, 0.0, mu);
  }
  GridField2D f = GridField2D::from_deviation(domain, mu, std::move(w));
  f.trivial = radial.trivial;
  if (radial.trivial) f.notes.push_back("radial solution is trivial; the lower field is zero");
  return f;
}

GridField2D discrete_ball_field(DomainPtr domain, const Potential& W, const RadialSolution& radial,
                                double px, double py) {
  GridField2D f = lower_solution_field(domain, radial, px, py);
  require(std::abs(f.mu - W.mu()) <= 1e-12 * W.mu(), ErrorKind::domain,
          "discrete_ball_field: radial solution built for another potential");
  if (f.trivial) return f;
  std::vector<double> w = f.deviation;
  resolve_on_support(*domain, W, w, W.max_abs_d2W(0.0, W.mu()) + 1.0);
  GridField2D g = GridField2D::from_deviation(domain, W.mu(), std::move(w));
  g.residual = residual_2d(*domain, W, g.deviation);
  return g;
}

GridField2D newton_polish_2d(const GridField2D& field, const Potential& W, double tol) {
  require(field.domain != nullptr, ErrorKind::domain, "newton_polish_2d: no domain");
  const Domain2D& d = *field.domain;
  Discrete2D op(d, W);
  std::vector<double> w = field.deviation;
  const NewtonStats ns = newton(op, w, tol, 50, 1e-12);
  if (!ns.ok) throw NumericError("newton_polish_2d: no convergence", ns.residual);
  GridField2D g = GridField2D::from_deviation(field.domain, W.mu(), std::move(w));
  g.residual = ns.residual;
  g.energy = energy_2d(d, W, g.deviation);
  g.iterations = field.iterations + ns.iterations;
  g.wall_time = field.wall_time;
  g.notes = field.notes;
  return g;
}

nlohmann::json MonotoneReport::to_json() const {
  nlohmann::json j = {{"lambda", lambda},
                      {"iterations_minimal", iterations_minimal},
                      {"iterations_maximal", iterations_maximal},
                      {"cg_iterations", cg_iterations},
                      {"residual_minimal", residual_minimal},
                      {"residual_maximal", residual_maximal},
                      {"final_increment", final_increment},
                      {"order_noise", order_noise},
                      {"lower_repaired", lower_repaired},
                      {"lower_repair_change", lower_repair_change},
                      {"lower_gap", lower_gap},
                      {"wall_time", wall_time}};
  j["maximal_minus_minimal"] = max_minus_min ? nlohmann::json(*max_minus_min) : nlohmann::json(nullptr);
  return j;
}

MonotoneResult solve_monotone(DomainPtr domain, const Potential& W, const GridField2D& lower,
                              const MonotoneOptions& options) {
  const auto t0 = Clock::now();
  require(domain != nullptr && lower.domain != nullptr && lower.domain->size() == domain->size(),
          ErrorKind::domain, "solve_monotone: lower field lives on another grid");
  const Domain2D& d = *domain;
  const double mu = W.mu();
  require(std::abs(lower.mu - mu) <= 1e-12 * mu, ErrorKind::domain,
          "solve_monotone: lower field was built for another potential");
  for (std::size_t k : d.unknowns())
    require(lower.u[k] >= -1e-12 && lower.u[k] <= mu + 1e-12, ErrorKind::domain,
            "solve_monotone: lower field leaves [0, mu]");

  MonotoneReport rep;
  rep.lambda = W.max_abs_d2W(0.0, mu) + 1.0;
  Discrete2D op(d, W);
  std::vector<double> w = lower.deviation, r(d.size(), 0.0);

  // The interpolated radial field misses the discrete inequality by the
  // O(h^2) truncation error; re-solve it on its own support first.
  op.residual(w, r);
  double worst = 0.0;
  for (std::size_t k : d.unknowns()) worst = std::min(worst, r[k]);
  if (worst < -1e-10) {
    const std::vector<double> before = w;
    resolve_on_support(d, W, w, rep.lambda);
    for (std::size_t k : d.unknowns())
      rep.lower_repair_change = std::max(rep.lower_repair_change, std::abs(w[k] - before[k]));
    rep.lower_repaired = true;
  }
  const std::vector<double> w_lower = w;

  FlowStats lo = sattinger(op, rep.lambda, w, Order::w_decreasing, options.increment_tol,
                           options.residual_tol, options.max_iterations, options.cg_tol, mu);
  rep.iterations_minimal = lo.iterations;
  rep.cg_iterations += lo.cg_iterations;
  rep.residual_minimal = lo.residual;
  rep.final_increment = lo.final_increment;
  rep.order_noise = lo.order_noise;
  rep.lower_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k : d.unknowns()) rep.lower_gap = std::min(rep.lower_gap, lower.deviation[k] - w[k]);

  MonotoneResult out{GridField2D::from_deviation(domain, mu, w), std::nullopt, {}};
  out.minimal.residual = lo.residual;
  out.minimal.iterations = lo.iterations;
  out.minimal.energy = energy_2d(d, W, out.minimal.deviation);
  if (rep.lower_repaired) out.minimal.notes.push_back("lower field re-solved on its support before iterating");

  if (options.compute_maximal) {
    std::vector<double> wm = dirichlet_deviation(d, mu);
    for (std::size_t k : d.unknowns()) wm[k] = 0.0;
    FlowStats hi = sattinger(op, rep.lambda, wm, Order::w_increasing, options.increment_tol,
                             options.residual_tol, options.max_iterations, options.cg_tol, mu);
    rep.iterations_maximal = hi.iterations;
    rep.cg_iterations += hi.cg_iterations;
    rep.residual_maximal = hi.residual;
    rep.order_noise = std::max(rep.order_noise, hi.order_noise);
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t k : d.unknowns()) gap = std::min(gap, w[k] - wm[k]);
    rep.max_minus_min = gap;
    out.maximal = GridField2D::from_deviation(domain, mu, std::move(wm));
    out.maximal->residual = hi.residual;
    out.maximal->iterations = hi.iterations;
    out.maximal->energy = energy_2d(d, W, out.maximal->deviation);
  }
  rep.wall_time = seconds_since(t0);
  out.minimal.wall_time = rep.wall_time;
  out.report = rep;
  return out;
}

GridField2D solve_minimizer_2d(DomainPtr domain, const Potential& W, const MinimizerOptions& options,
                               const std::vector<double>* initial) {
  const auto t0 = Clock::now();
  require(domain != nullptr, ErrorKind::domain, "solve_minimizer_2d: no domain");
  const Domain2D& d = *domain;
  const double mu = W.mu();
  const double w_hi = mu - std::min(0.0, W.mu_minus());
  const double lambda = W.max_abs_d2W(std::min(0.0, W.mu_minus()), mu) + 1.0;
  Discrete2D op(d, W);

  auto descend = [&](std::vector<double> w, int& iterations, std::vector<std::string>& notes) {
    for (std::size_t k = 0; k < w.size(); ++k)
      w[k] = d.is_unknown(k) ? std::clamp(w[k], 0.0, w_hi) : mu;
    FlowStats fs = sattinger(op, lambda, w, Order::projected, 0.0, options.flow_tol,
                             options.max_flow, options.cg_tol, w_hi);
    iterations += fs.iterations;
    for (int round = 0; round < 20; ++round) {
      NewtonStats ns = newton(op, w, options.newton_tol, options.max_newton, options.cg_tol);
      iterations += ns.iterations;
      if (ns.ok) return w;
      notes.push_back("Newton fell back to the descent flow");
      fs = sattinger(op, lambda, w, Order::projected, 0.0, std::max(1e-12, 0.01 * fs.residual),
                     options.max_flow, options.cg_tol, w_hi);
      iterations += fs.iterations;
    }
    std::vector<double> r(d.size(), 0.0);
    throw NumericError("solve_minimizer_2d: Newton stagnated", op.residual(w, r));
  };

  std::vector<std::string> notes;
  int iterations = 0;
  std::vector<double> w0;
  if (initial) {
    require(initial->size() == d.size(), ErrorKind::domain, "solve_minimizer_2d: initial guess size");
    w0 = *initial;
  } else {
    try {
      w0 = profile_guess(d, W);
    } catch (const Error& e) {
      notes.push_back(std::string("profile guess unavailable (") + e.what() + "); starting from the plateau competitor");
      w0 = plateau_competitor(d, mu);
    }
  }
  std::vector<double> w = descend(w0, iterations, notes);
  double J = energy_2d(d, W, w);

  const std::vector<double> comp = plateau_competitor(d, mu);
  const double J_comp = energy_2d(d, W, comp);
  if (J_comp < J - 1e-9 * std::abs(J)) {
    notes.push_back("plateau competitor beat the descent; restarted from it");
    std::vector<double> w2 = descend(comp, iterations, notes);
    const double J2 = energy_2d(d, W, w2);
    if (J2 < J) {
      w.swap(w2);
      J = J2;
    }
  }
  const std::vector<double> zero = dirichlet_deviation(d, mu);
  const double J_zero = energy_2d(d, W, zero);
  bool trivial = false;
  double umax = 0.0;
  for (std::size_t k : d.unknowns()) umax = std::max(umax, mu - w[k]);
  if (J_zero <= J || umax < 1e-8) {
    trivial = true;
    if (J_zero <= J) {
      w = zero;
      J = J_zero;
    }
  }
  GridField2D f = GridField2D::from_deviation(domain, mu, std::move(w));
  f.trivial = trivial;
  f.energy = J;
  f.residual = residual_2d(d, W, f.deviation);
  f.iterations = iterations;
  f.notes = std::move(notes);
  {
    std::ostringstream os;
    os << "energies: solution " << J << ", zero field " << J_zero << ", plateau competitor " << J_comp;
    f.notes.push_back(os.str());
  }
  f.wall_time = seconds_since(t0);
  return f;
}

double sup_difference(const GridField2D& a, const GridField2D& b) {
  require(a.domain && b.domain && a.domain->size() == b.domain->size(), ErrorKind::domain,
          "sup_difference: fields live on different grids");
  double v = 0.0;
  for (std::size_t k : a.domain->unknowns()) v = std::max(v, std::abs(a.deviation[k] - b.deviation[k]));
  return v;
}

namespace {

nlohmann::json seq_json(const std::vector<SeqSample>& seq) {
  auto a = nlohmann::json::array();
  for (const auto& s : seq) a.push_back({s.dist, s.value});
  return a;
}

/// Per-bin maxima of value against dist.
std::vector<SeqSample> binned_max(const std::vector<std::pair<double, double>>& pts, double width) {
  std::map<long, SeqSample> bins;
  for (const auto& [dist, v] : pts) {
    if (!std::isfinite(v)) continue;
    const long b = static_cast<long>(std::floor(dist / width));
    auto it = bins.find(b);
    if (it == bins.end() || v > it->second.value) bins[b] = {dist, v};
  }
  std::vector<SeqSample> out;
  for (const auto& [b, s] : bins) out.push_back(s);
  return out;
}

}  // namespace

nlohmann::json Solve2DReport::to_json() const {
  nlohmann::json j = {{"min_value", min_value},
                      {"max_value", max_value},
                      {"bounds_ok", bounds_ok},
                      {"epsilon", epsilon},
                      {"D", D},
                      {"Dprime", Dprime},
                      {"plateau_fraction", plateau_fraction},
                      {"r_hat_prime", r_hat_prime},
                      {"plateau_ok", plateau_ok},
                      {"bad_nodes_checked", bad_nodes_checked},
                      {"cafathm_seq", seq_json(cafathm_seq)},
                      {"caffa_seq", seq_json(caffa_seq)},
                      {"iterations", iterations},
                      {"wall_time", wall_time},
                      {"residual", residual},
                      {"notes", notes}};
  j["exp_fit"] = exp_fit ? exp_fit->to_json() : nlohmann::json(nullptr);
  j["alg_fit"] = alg_fit ? alg_fit->to_json() : nlohmann::json(nullptr);
  return j;
}

Solve2DReport verify_main_theorem(const GridField2D& field, const Potential& W, double epsilon,
                                  double D) {
  require(field.domain != nullptr, ErrorKind::domain, "verify_main_theorem: no domain");
  const Domain2D& d = *field.domain;
  const double mu = W.mu();
  require(!field.trivial && field.max_interior() > 0.0, ErrorKind::undefined,
          "verify_main_theorem: the field is trivial");
  Solve2DReport rep;
  rep.epsilon = epsilon;
  rep.D = D;
  rep.Dprime = compute_Dprime(W, epsilon);
  {
    std::ostringstream os;
    os << "verify_main_theorem: need D > D'(eps) = " << rep.Dprime;
    require(D > rep.Dprime, ErrorKind::domain, os.str());
  }
  rep.iterations = field.iterations;
  rep.wall_time = field.wall_time;
  rep.residual = field.residual;
  rep.min_value = field.min_interior();
  rep.max_value = field.max_interior();
  rep.bounds_ok = true;
  std::size_t plateau = 0;
  std::vector<std::size_t> bad;
  for (std::size_t k : d.unknowns()) {
    const double w = field.deviation[k];
    if (!(field.u[k] > 0.0 && w > 0.0)) rep.bounds_ok = false;
    if (w <= epsilon)
      ++plateau;
    else if (d.dist()[k] >= D)
      bad.push_back(k);
  }
  rep.plateau_fraction = static_cast<double>(plateau) / static_cast<double>(d.unknowns().size());

  // A bad node x (u < mu - eps) is covered by B(P, dist(P) - D) only if
  // dist(x) >= D; the smallest admissible R is the deepest covering centre.
  rep.bad_nodes_checked = bad.size();
  rep.r_hat_prime = 0.0;
  for (std::size_t kx : bad) {
    const double x = d.x(kx), y = d.y(kx);
    double deepest = 0.0;
    for (std::size_t kp : d.unknowns()) {
      const double dp = d.dist()[kp];
      if (dp <= deepest || dp - D <= 0.0) continue;
      if (std::hypot(d.x(kp) - x, d.y(kp) - y) <= dp - D) deepest = dp;
    }
    rep.r_hat_prime = std::max(rep.r_hat_prime, deepest);
  }
  rep.plateau_ok = rep.r_hat_prime < d.dist_max();
  if (bad.empty()) rep.notes.push_back("u >= mu - eps wherever dist >= D; every radius works");

  // upper envelope of mu - u against dist
  std::vector<std::pair<double, double>> env_pts;
  for (std::size_t k : d.unknowns()) env_pts.emplace_back(d.dist()[k], field.deviation[k]);
  const auto env = binned_max(env_pts, d.h());
  const double lo = 2.0, hi = d.dist_max() - 2.0;
  std::vector<double> xs, logs, ys;
  for (const auto& s : env) {
    if (s.dist < lo || s.dist > hi || !(s.value > 1e-300)) continue;
    xs.push_back(s.dist);
    logs.push_back(std::log(s.dist));
    ys.push_back(std::log(s.value));
  }
  if (xs.size() >= 8) {
    auto make = [&](const LineFit& f, DecayModel m) {
      DecayFit df;
      df.model = m;
      df.rate = -f.slope;
      df.constant = std::exp(f.intercept);
      df.r2 = f.r2;
      df.s_lo = lo;
      df.s_hi = hi;
      df.points = xs.size();
      return df;
    };
    if (W.d2W(mu) > 0.0) rep.exp_fit = make(fit_line(xs, ys), DecayModel::exponential);
    if (W.kind() == PotentialKind::pure_power) rep.alg_fit = make(fit_line(logs, ys), DecayModel::algebraic);
  } else {
    rep.notes.push_back("decay fit skipped: fewer than 8 envelope points in [2, dist_max - 2]");
  }

  // min of W over [0, t] for t in [0, mu]
  constexpr int T = 4000;
  std::vector<double> wmin(T + 1);
  {
    double m = W.W(0.0);
    for (int i = 0; i <= T; ++i) {
      m = std::min(m, W.W(mu * i / T));
      wmin[static_cast<std::size_t>(i)] = m;
    }
  }
  auto min_W_upto = [&](double t) {
    if (t <= 0.0) return W.W(0.0);
    const double q = std::min(1.0, t / mu) * T;
    const int i = std::min(static_cast<int>(q), T - 1);
    return std::min(wmin[static_cast<std::size_t>(i)], W.W(t));
  };
  std::vector<std::pair<double, double>> caf, caffa;
  for (std::size_t k : d.unknowns()) {
    const double dist = d.dist()[k];
    caf.emplace_back(dist, dist * dist * (-W.eval_from_well(field.deviation[k], 1)));
    caffa.emplace_back(dist, dist * min_W_upto(field.u[k]));
  }
  rep.cafathm_seq = binned_max(caf, 0.5);
  rep.caffa_seq = binned_max(caffa, 0.5);
  return rep;
}

}  // namespace eland
