#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

namespace eland {

enum class ShapeKind { rectangle, disk, union_of_disks, annulus, square_with_odd_symmetry };
enum class BoundaryTag { dirichlet_zero, odd_symmetry };

const char* to_string(ShapeKind kind) noexcept;
const char* to_string(BoundaryTag tag) noexcept;

struct DiskSpec {
  double x = 0.0;
  double y = 0.0;
  double r = 1.0;
};

/// Uniform grid over a bounding box with one ghost ring on every side.
///
/// Padded index k = (j + 1) * stride + (i + 1) for node (x_min + i h,
/// y_min + j h), i in [-1, nx], j in [-1, ny]. Unknown nodes carry weight
/// m > 0; every other node is Dirichlet (u = 0) or an unused ghost.
///
/// The odd-symmetry square is the quadrant [0, L]^2 with u = 0 on the axes
/// and a reflecting outer boundary: nodes on x = L or y = L get half weight,
/// edges along those lines half stiffness.
class Domain2D {
 public:
  static Domain2D rectangle(double x_min, double x_max, double y_min, double y_max, double h);
  static Domain2D disk(double cx, double cy, double radius, double h);
  static Domain2D union_of_disks(std::vector<DiskSpec> disks, double h);
  static Domain2D annulus(double cx, double cy, double r_in, double r_out, double h);
  static Domain2D odd_symmetry_square(double L, double h);
  /// {"shape": ..., "params": {...}, "h": ...}
  static Domain2D from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  ShapeKind shape() const noexcept { return shape_; }
  BoundaryTag tag() const noexcept { return tag_; }
  double h() const noexcept { return h_; }
  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  double y_min() const noexcept { return y_min_; }
  double y_max() const noexcept { return y_max_; }
  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  std::size_t stride() const noexcept { return static_cast<std::size_t>(nx_) + 2; }
  std::size_t size() const noexcept { return stride() * (static_cast<std::size_t>(ny_) + 2); }
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j + 1) * stride() + static_cast<std::size_t>(i + 1);
  }
  int col(std::size_t k) const noexcept { return static_cast<int>(k % stride()) - 1; }
  int row(std::size_t k) const noexcept { return static_cast<int>(k / stride()) - 1; }
  double x(std::size_t k) const noexcept { return x_min_ + col(k) * h_; }
  double y(std::size_t k) const noexcept { return y_min_ + row(k) * h_; }

  /// Positive inside, non-positive on or outside the Dirichlet boundary.
  double level(double x, double y) const;

  const std::vector<double>& mask() const noexcept { return mask_; }
  const std::vector<double>& weight() const noexcept { return weight_; }
  const std::vector<double>& edge_x() const noexcept { return edge_x_; }  // k <-> k + 1
  const std::vector<double>& edge_y() const noexcept { return edge_y_; }  // k <-> k + stride
  /// Sum of the edge weights joining k to Dirichlet nodes.
  const std::vector<double>& dirichlet_weight() const noexcept { return dirichlet_weight_; }
  /// Sum of all edge weights at k.
  const std::vector<double>& edge_sum() const noexcept { return edge_sum_; }
  const std::vector<double>& dist() const noexcept { return dist_; }
  const std::vector<std::size_t>& unknowns() const noexcept { return unknowns_; }
  bool is_unknown(std::size_t k) const noexcept { return mask_[k] != 0.0; }
  double dist_max() const noexcept { return dist_max_; }
  /// Range of padded indices that contains every unknown.
  std::size_t first() const noexcept { return first_; }
  std::size_t last() const noexcept { return last_; }

  /// Distance to the boundary at an arbitrary point (bilinear between nodes).
  double dist_at(double x, double y) const;

 private:
  Domain2D() = default;
  void build();

  ShapeKind shape_ = ShapeKind::rectangle;
  BoundaryTag tag_ = BoundaryTag::dirichlet_zero;
  double h_ = 0.0;
  double x_min_ = 0.0, x_max_ = 0.0, y_min_ = 0.0, y_max_ = 0.0;
  int nx_ = 0, ny_ = 0;
  std::vector<DiskSpec> disks_;  // disk, union; annulus uses the first with r_in_
  double r_in_ = 0.0;
  std::vector<double> mask_, weight_, edge_x_, edge_y_, dirichlet_weight_, edge_sum_, dist_;
  std::vector<std::size_t> unknowns_;
  double dist_max_ = 0.0;
  std::size_t first_ = 0, last_ = 0;
};

using DomainPtr = std::shared_ptr<const Domain2D>;

DomainPtr build_domain(const nlohmann::json& spec);

/// Nodal field on a domain. u = 0 at Dirichlet nodes; the deviation mu - u is
/// kept alongside so that plateau values do not lose precision.
struct GridField2D {
  DomainPtr domain;
  BoundaryTag tag = BoundaryTag::dirichlet_zero;
  double mu = 1.0;
  std::vector<double> u;
  std::vector<double> deviation;
  double residual = 0.0;
  double energy = 0.0;
  int iterations = 0;
  double wall_time = 0.0;
  bool trivial = false;
  std::vector<std::string> notes;

  static GridField2D from_deviation(DomainPtr domain, double mu, std::vector<double> deviation);
  double min_interior() const;
  double max_interior() const;
  /// Bilinear interpolation of u (0 off the grid).
  double value_at(double x, double y) const;
  /// x, y, u over the unknowns (and the odd reflection for odd-symmetry fields).
  std::string to_csv() const;
};

}  // namespace eland
