#include "eland/grid2d.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "eland/error.hpp"
#include "eland/io.hpp"

namespace eland {

namespace {

int cells_along(double length, double h, const char* what) {
  const double q = length / h;
  const double n = std::round(q);
  if (!(n >= 2.0) || std::abs(q - n) > 1e-9 * std::max(1.0, q)) {
    std::ostringstream os;
    os << "domain: h = " << h << " does not divide the " << what << " side " << length;
    fail(ErrorKind::domain, os.str());
  }
  return static_cast<int>(n);
}

void check_h(double h) {
  require(std::isfinite(h) && h > 0.0, ErrorKind::domain, "domain: h must be > 0");
}

double get(const nlohmann::json& p, const char* key) {
  require(p.contains(key) && p.at(key).is_number(), ErrorKind::usage,
          std::string("domain: missing numeric parameter '") + key + "'");
  return p.at(key).get<double>();
}

std::pair<double, double> get_center(const nlohmann::json& p) {
  if (!p.contains("center")) return {0.0, 0.0};
  const auto& c = p.at("center");
  require(c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number(), ErrorKind::usage,
          "domain: center must be [x, y]");
  return {c[0].get<double>(), c[1].get<double>()};
}

}  // namespace

const char* to_string(ShapeKind kind) noexcept {
  switch (kind) {
    case ShapeKind::rectangle: return "rectangle";
    case ShapeKind::disk: return "disk";
    case ShapeKind::union_of_disks: return "union_of_disks";
    case ShapeKind::annulus: return "annulus";
    case ShapeKind::square_with_odd_symmetry: return "square_with_odd_symmetry";
  }
  return "unknown";
}

const char* to_string(BoundaryTag tag) noexcept {
  return tag == BoundaryTag::odd_symmetry ? "odd_symmetry" : "dirichlet_zero";
}

Domain2D Domain2D::rectangle(double x_min, double x_max, double y_min, double y_max, double h) {
  check_h(h);
  require(x_max > x_min && y_max > y_min, ErrorKind::domain, "rectangle: empty box");
  Domain2D d;
  d.shape_ = ShapeKind::rectangle;
  d.h_ = h;
  d.x_min_ = x_min;
  d.x_max_ = x_max;
  d.y_min_ = y_min;
  d.y_max_ = y_max;
  d.nx_ = cells_along(x_max - x_min, h, "x") + 1;
  d.ny_ = cells_along(y_max - y_min, h, "y") + 1;
  d.build();
  return d;
}

Domain2D Domain2D::disk(double cx, double cy, double radius, double h) {
  check_h(h);
  require(std::isfinite(radius) && radius > 0.0, ErrorKind::domain, "disk: radius must be > 0");
  Domain2D d;
  d.shape_ = ShapeKind::disk;
  d.h_ = h;
  d.disks_ = {{cx, cy, radius}};
  d.x_min_ = cx - radius;
  d.x_max_ = cx + radius;
  d.y_min_ = cy - radius;
  d.y_max_ = cy + radius;
  d.nx_ = cells_along(2.0 * radius, h, "x") + 1;
  d.ny_ = d.nx_;
  d.build();
  return d;
}

Domain2D Domain2D::union_of_disks(std::vector<DiskSpec> disks, double h) {
  check_h(h);
  require(!disks.empty(), ErrorKind::domain, "union_of_disks: no disks");
  Domain2D d;
  d.shape_ = ShapeKind::union_of_disks;
  d.h_ = h;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& c : disks) {
    require(std::isfinite(c.r) && c.r > 0.0, ErrorKind::domain, "union_of_disks: radius must be > 0");
    x0 = std::min(x0, c.x - c.r);
    x1 = std::max(x1, c.x + c.r);
    y0 = std::min(y0, c.y - c.r);
    y1 = std::max(y1, c.y + c.r);
  }
  // snap the box outward onto the h-lattice through the first disk's corner
  const double ox = disks[0].x - disks[0].r, oy = disks[0].y - disks[0].r;
  d.x_min_ = ox + std::floor((x0 - ox) / h + 1e-9) * h;
  d.y_min_ = oy + std::floor((y0 - oy) / h + 1e-9) * h;
  d.x_max_ = ox + std::ceil((x1 - ox) / h - 1e-9) * h;
  d.y_max_ = oy + std::ceil((y1 - oy) / h - 1e-9) * h;
  d.disks_ = std::move(disks);
  d.nx_ = static_cast<int>(std::lround((d.x_max_ - d.x_min_) / h)) + 1;
  d.ny_ = static_cast<int>(std::lround((d.y_max_ - d.y_min_) / h)) + 1;
  d.build();
  return d;
}

Domain2D Domain2D::annulus(double cx, double cy, double r_in, double r_out, double h) {
  check_h(h);
  require(std::isfinite(r_in) && std::isfinite(r_out) && r_in > 0.0 && r_out > r_in,
          ErrorKind::domain, "annulus: need 0 < r_in < r_out");
  Domain2D d;
  d.shape_ = ShapeKind::annulus;
  d.h_ = h;
  d.disks_ = {{cx, cy, r_out}};
  d.r_in_ = r_in;
  d.x_min_ = cx - r_out;
  d.x_max_ = cx + r_out;
  d.y_min_ = cy - r_out;
  d.y_max_ = cy + r_out;
  d.nx_ = cells_along(2.0 * r_out, h, "x") + 1;
  d.ny_ = d.nx_;
  d.build();
  return d;
}

Domain2D Domain2D::odd_symmetry_square(double L, double h) {
  check_h(h);
  require(std::isfinite(L) && L > 0.0, ErrorKind::domain, "square_with_odd_symmetry: L must be > 0");
  Domain2D d;
  d.shape_ = ShapeKind::square_with_odd_symmetry;
  d.tag_ = BoundaryTag::odd_symmetry;
  d.h_ = h;
  d.x_max_ = L;
  d.y_max_ = L;
  d.nx_ = cells_along(L, h, "x") + 1;
  d.ny_ = d.nx_;
  d.build();
  return d;
}

Domain2D Domain2D::from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("shape") && j.at("shape").is_string(), ErrorKind::usage,
          "domain: expected {shape, params, h}");
  require(j.contains("h") && j.at("h").is_number(), ErrorKind::usage, "domain: missing h");
  const auto shape = j.at("shape").get<std::string>();
  const double h = j.at("h").get<double>();
  const nlohmann::json p = j.value("params", nlohmann::json::object());
  require(p.is_object(), ErrorKind::usage, "domain: params must be an object");
  if (shape == "rectangle") {
    if (p.contains("width")) {
      const double w = get(p, "width");
      const double ht = p.contains("height") ? get(p, "height") : w;
      const double x0 = p.value("x_min", 0.0), y0 = p.value("y_min", 0.0);
      return rectangle(x0, x0 + w, y0, y0 + ht, h);
    }
    return rectangle(get(p, "x_min"), get(p, "x_max"), get(p, "y_min"), get(p, "y_max"), h);
  }
  if (shape == "disk") {
    const auto [cx, cy] = get_center(p);
    return disk(cx, cy, get(p, "radius"), h);
  }
  if (shape == "union_of_disks") {
    require(p.contains("disks") && p.at("disks").is_array(), ErrorKind::usage,
            "union_of_disks: params.disks must be a list of [x, y, r]");
    std::vector<DiskSpec> disks;
    for (const auto& e : p.at("disks")) {
      require(e.is_array() && e.size() == 3, ErrorKind::usage, "union_of_disks: each disk is [x, y, r]");
      disks.push_back({e[0].get<double>(), e[1].get<double>(), e[2].get<double>()});
    }
    return union_of_disks(std::move(disks), h);
  }
  if (shape == "annulus") {
    const auto [cx, cy] = get_center(p);
    return annulus(cx, cy, get(p, "r_in"), get(p, "r_out"), h);
  }
  if (shape == "square_with_odd_symmetry") return odd_symmetry_square(get(p, "L"), h);
  fail(ErrorKind::usage, "domain: unknown shape '" + shape + "'");
}

nlohmann::json Domain2D::to_json() const {
  nlohmann::json p;
  switch (shape_) {
    case ShapeKind::rectangle:
      p = {{"x_min", x_min_}, {"x_max", x_max_}, {"y_min", y_min_}, {"y_max", y_max_}};
      break;
    case ShapeKind::disk:
      p = {{"center", {disks_[0].x, disks_[0].y}}, {"radius", disks_[0].r}};
      break;
    case ShapeKind::union_of_disks: {
      auto list = nlohmann::json::array();
      for (const auto& c : disks_) list.push_back({c.x, c.y, c.r});
      p = {{"disks", list}};
      break;
    }
    case ShapeKind::annulus:
      p = {{"center", {disks_[0].x, disks_[0].y}}, {"r_in", r_in_}, {"r_out", disks_[0].r}};
      break;
    case ShapeKind::square_with_odd_symmetry:
      p = {{"L", x_max_}};
      break;
  }
  return {{"shape", to_string(shape_)}, {"params", p}, {"h", h_}};
}

double Domain2D::level(double x, double y) const {
  switch (shape_) {
    case ShapeKind::rectangle:
      return std::min({x - x_min_, x_max_ - x, y - y_min_, y_max_ - y});
    case ShapeKind::disk:
      return disks_[0].r - std::hypot(x - disks_[0].x, y - disks_[0].y);
    case ShapeKind::union_of_disks: {
      double v = -std::numeric_limits<double>::infinity();
      for (const auto& c : disks_) v = std::max(v, c.r - std::hypot(x - c.x, y - c.y));
      return v;
    }
    case ShapeKind::annulus: {
      const double r = std::hypot(x - disks_[0].x, y - disks_[0].y);
      return std::min(r - r_in_, disks_[0].r - r);
    }
    case ShapeKind::square_with_odd_symmetry:
      return std::min(x, y);
  }
  return 0.0;
}

void Domain2D::build() {
  const std::size_t N = size(), s = stride();
  const double tol = 1e-9 * h_;
  mask_.assign(N, 0.0);
  std::vector<double> lev(N, 0.0);
  for (int j = -1; j <= ny_; ++j) {
    for (int i = -1; i <= nx_; ++i) {
      const std::size_t k = index(i, j);
      lev[k] = level(x_min_ + i * h_, y_min_ + j * h_);
      const bool in_box = i >= 0 && i < nx_ && j >= 0 && j < ny_;
      if (in_box && lev[k] > tol) mask_[k] = 1.0;
    }
  }
  unknowns_.clear();
  for (std::size_t k = 0; k < N; ++k)
    if (mask_[k] != 0.0) unknowns_.push_back(k);
  require(!unknowns_.empty(), ErrorKind::domain, "domain: empty interior at this h");
  first_ = unknowns_.front();
  last_ = unknowns_.back() + 1;

  // connectivity (4-neighbour)
  {
    std::vector<char> seen(N, 0);
    std::deque<std::size_t> queue{unknowns_.front()};
    seen[unknowns_.front()] = 1;
    std::size_t count = 0;
    while (!queue.empty()) {
      const std::size_t k = queue.front();
      queue.pop_front();
      ++count;
      for (std::size_t nb : {k - 1, k + 1, k - s, k + s}) {
        if (mask_[nb] != 0.0 && !seen[nb]) {
          seen[nb] = 1;
          queue.push_back(nb);
        }
      }
    }
    require(count == unknowns_.size(), ErrorKind::domain,
            "domain: interior is not connected (disjoint pieces are rejected)");
  }

  const bool odd = tag_ == BoundaryTag::odd_symmetry;
  auto ghost_far = [&](std::size_t k) { return col(k) >= nx_ || row(k) >= ny_; };
  edge_x_.assign(N, 0.0);
  edge_y_.assign(N, 0.0);
  weight_.assign(N, 0.0);
  for (std::size_t k = 0; k + s < N; ++k) {
    for (int dir = 0; dir < 2; ++dir) {
      const std::size_t nb = dir == 0 ? k + 1 : k + s;
      if (dir == 0 && col(k) >= nx_) continue;
      if (mask_[k] == 0.0 && mask_[nb] == 0.0) continue;
      double c = 1.0;
      if (odd) {
        if (ghost_far(k) || ghost_far(nb)) c = 0.0;
        else if (dir == 0 && row(k) == ny_ - 1) c = 0.5;
        else if (dir == 1 && col(k) == nx_ - 1) c = 0.5;
      }
      (dir == 0 ? edge_x_ : edge_y_)[k] = c;
    }
  }
  for (std::size_t k : unknowns_) {
    double m = 1.0;
    if (odd) {
      if (col(k) == nx_ - 1) m *= 0.5;
      if (row(k) == ny_ - 1) m *= 0.5;
    }
    weight_[k] = m;
  }
  dirichlet_weight_.assign(N, 0.0);
  edge_sum_.assign(N, 0.0);
  for (std::size_t k : unknowns_) {
    const double c[4] = {edge_x_[k], edge_x_[k - 1], edge_y_[k], edge_y_[k - s]};
    const std::size_t nb[4] = {k + 1, k - 1, k + s, k - s};
    for (int e = 0; e < 4; ++e) {
      edge_sum_[k] += c[e];
      if (mask_[nb[e]] == 0.0) dirichlet_weight_[k] += c[e];
    }
  }

  // Distance: boundary points located on grid segments by bisection of the
  // level function, then nearest-site propagation (two raster sweeps and a
  // correction pass).
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> sx(N, inf), sy(N, inf), d2(N, inf);
  auto try_site = [&](std::size_t k, double px, double py) {
    const double dx = x(k) - px, dy = y(k) - py;
    const double v = dx * dx + dy * dy;
    if (v < d2[k]) {
      d2[k] = v;
      sx[k] = px;
      sy[k] = py;
      return true;
    }
    return false;
  };
  const long offs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  for (std::size_t k : unknowns_) {
    for (const auto& o : offs) {
      const std::size_t nb = static_cast<std::size_t>(static_cast<long>(k) + o[0] + o[1] * static_cast<long>(s));
      if (mask_[nb] != 0.0 || lev[nb] > tol) continue;
      const double ax = x(k), ay = y(k), bx = x(nb), by = y(nb);
      double lo = 0.0, hi = 1.0;
      if (lev[nb] < -tol) {
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (level(ax + mid * (bx - ax), ay + mid * (by - ay)) > 0.0) lo = mid;
          else hi = mid;
        }
      }
      try_site(k, ax + hi * (bx - ax), ay + hi * (by - ay));
    }
  }
  auto relax = [&](std::size_t k, long di, long dj) {
    const std::size_t nb = static_cast<std::size_t>(static_cast<long>(k) + di + dj * static_cast<long>(s));
    if (mask_[nb] == 0.0 || !std::isfinite(sx[nb])) return false;
    return try_site(k, sx[nb], sy[nb]);
  };
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      const std::size_t k = index(i, j);
      if (mask_[k] == 0.0) continue;
      relax(k, -1, 0);
      relax(k, -1, -1);
      relax(k, 0, -1);
      relax(k, 1, -1);
    }
    for (int i = nx_ - 1; i >= 0; --i) {
      const std::size_t k = index(i, j);
      if (mask_[k] != 0.0) relax(k, 1, 0);
    }
  }
  for (int j = ny_ - 1; j >= 0; --j) {
    for (int i = nx_ - 1; i >= 0; --i) {
      const std::size_t k = index(i, j);
      if (mask_[k] == 0.0) continue;
      relax(k, 1, 0);
      relax(k, 1, 1);
      relax(k, 0, 1);
      relax(k, -1, 1);
    }
    for (int i = 0; i < nx_; ++i) {
      const std::size_t k = index(i, j);
      if (mask_[k] != 0.0) relax(k, -1, 0);
    }
  }
  for (std::size_t k : unknowns_)
    for (const auto& o : offs) relax(k, o[0], o[1]);

  dist_.assign(N, 0.0);
  dist_max_ = 0.0;
  for (std::size_t k : unknowns_) {
    require(std::isfinite(d2[k]), ErrorKind::domain, "domain: no boundary reachable from the interior");
    dist_[k] = std::sqrt(d2[k]);
    dist_max_ = std::max(dist_max_, dist_[k]);
  }
}

double Domain2D::dist_at(double px, double py) const {
  const double fx = (px - x_min_) / h_, fy = (py - y_min_) / h_;
  const int i = static_cast<int>(std::floor(fx)), j = static_cast<int>(std::floor(fy));
  if (i < 0 || j < 0 || i + 1 >= nx_ || j + 1 >= ny_) return 0.0;
  const double tx = fx - i, ty = fy - j;
  return (1 - tx) * (1 - ty) * dist_[index(i, j)] + tx * (1 - ty) * dist_[index(i + 1, j)] +
         (1 - tx) * ty * dist_[index(i, j + 1)] + tx * ty * dist_[index(i + 1, j + 1)];
}

DomainPtr build_domain(const nlohmann::json& spec) {
  return std::make_shared<const Domain2D>(Domain2D::from_json(spec));
}

GridField2D GridField2D::from_deviation(DomainPtr domain, double mu, std::vector<double> deviation) {
  require(domain && deviation.size() == domain->size(), ErrorKind::domain,
          "field: size does not match the domain");
  GridField2D f;
  f.tag = domain->tag();
  f.mu = mu;
  f.u.assign(domain->size(), 0.0);
  for (std::size_t k = 0; k < deviation.size(); ++k) {
    if (domain->is_unknown(k))
      f.u[k] = mu - deviation[k];
    else
      deviation[k] = mu;
  }
  f.deviation = std::move(deviation);
  f.domain = std::move(domain);
  return f;
}

double GridField2D::min_interior() const {
  double v = std::numeric_limits<double>::infinity();
  for (std::size_t k : domain->unknowns()) v = std::min(v, u[k]);
  return v;
}

double GridField2D::max_interior() const {
  double v = -std::numeric_limits<double>::infinity();
  for (std::size_t k : domain->unknowns()) v = std::max(v, u[k]);
  return v;
}

double GridField2D::value_at(double px, double py) const {
  const Domain2D& d = *domain;
  const double fx = (px - d.x_min()) / d.h(), fy = (py - d.y_min()) / d.h();
  const int i = static_cast<int>(std::floor(fx)), j = static_cast<int>(std::floor(fy));
  if (i < 0 || j < 0 || i >= d.nx() || j >= d.ny()) return 0.0;
  const int i1 = std::min(i + 1, d.nx() - 1), j1 = std::min(j + 1, d.ny() - 1);
  const double tx = fx - i, ty = fy - j;
  return (1 - tx) * (1 - ty) * u[d.index(i, j)] + tx * (1 - ty) * u[d.index(i1, j)] +
         (1 - tx) * ty * u[d.index(i, j1)] + tx * ty * u[d.index(i1, j1)];
}

std::string GridField2D::to_csv() const {
  const Domain2D& d = *domain;
  CsvWriter csv({"x", "y", "u"});
  if (tag == BoundaryTag::odd_symmetry) {
    // u(-x, y) = -u(x, y) and u(x, -y) = -u(x, y)
    for (int j = -(d.ny() - 1); j < d.ny(); ++j) {
      for (int i = -(d.nx() - 1); i < d.nx(); ++i) {
        const double sign = (i < 0 ? -1.0 : 1.0) * (j < 0 ? -1.0 : 1.0);
        const double v = sign * u[d.index(std::abs(i), std::abs(j))];
        csv.row({i * d.h(), j * d.h(), v});
      }
    }
    return csv.str();
  }
  for (std::size_t k : d.unknowns()) csv.row({d.x(k), d.y(k), u[k]});
  return csv.str();
}

}  // namespace eland
