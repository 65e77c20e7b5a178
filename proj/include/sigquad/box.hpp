#pragma once

#include <array>
#include <span>

namespace sigquad {

/// Axis-aligned box in R^d, d in {1,2,3}. Sides must have strictly
/// positive length; degenerate boxes are rejected at construction.
class BoxDomain {
 public:
  BoxDomain(std::span<const double> lo, std::span<const double> hi);

  /// [lo,hi]^dim.
  static BoxDomain cube(double lo, double hi, int dim);

  int dim() const { return dim_; }
  double lo(int k) const { return lo_[k]; }
  double hi(int k) const { return hi_[k]; }
  double length(int k) const { return hi_[k] - lo_[k]; }
  double center(int k) const { return 0.5 * (lo_[k] + hi_[k]); }
  double volume() const;

  /// Mass of the affinely mapped product Chebyshev measure: pi^dim,
  /// independent of the box size.
  double chebyshev_mass() const;

  /// Affine map to/from the [-1,1]^dim reference coordinates.
  double to_reference(int k, double x) const {
    return (2.0 * x - lo_[k] - hi_[k]) / (hi_[k] - lo_[k]);
  }
  double from_reference(int k, double xhat) const {
    return center(k) + 0.5 * length(k) * xhat;
  }

  bool contains(std::span<const double> point, double tol = 0.0) const;
  /// True when every point of `inner` lies in this box (up to tol).
  bool contains_box(const BoxDomain& inner, double tol = 0.0) const;

  friend bool operator==(const BoxDomain&, const BoxDomain&) = default;

 private:
  int dim_;
  std::array<double, 3> lo_{};
  std::array<double, 3> hi_{};
};

}  // namespace sigquad
