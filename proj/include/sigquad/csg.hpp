#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "sigquad/box.hpp"

namespace sigquad {

inline constexpr std::uint64_t kDefaultRaySeed = 0x5371756164526179ull;

struct Ball {
  std::array<double, 3> center{};
  double radius = 0.0;
};

/// Closed triangulated surface: every facet is a vertex-index triple and
/// every edge is shared by exactly two facets.
struct Polyhedron {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<int, 3>> facets;
};

/// CSG tree of balls and polyhedra under union / intersection /
/// difference, evaluable as an indicator function.
class IndicatorDomain {
 public:
  enum class Kind { Ball, Polyhedron, Union, Intersection, Difference };

  static IndicatorDomain ball(std::array<double, 3> center, double radius);
  static IndicatorDomain polyhedron(std::vector<std::array<double, 3>> vertices,
                                    std::vector<std::array<int, 3>> facets);
  static IndicatorDomain make_union(std::vector<IndicatorDomain> children);
  static IndicatorDomain make_intersection(std::vector<IndicatorDomain> children);
  /// children[0] minus the union of the rest.
  static IndicatorDomain make_difference(std::vector<IndicatorDomain> children);

  /// Indicator function.  Balls are closed (|p-c| <= r).  Polyhedron
  /// membership is ray-crossing parity along a fixed direction; when the
  /// ray passes within 1e-12 of a facet edge/vertex (or grazes a parallel
  /// facet) the direction is re-drawn from a generator seeded with
  /// ray_seed, at most 8 retries, then an error is thrown.
  bool contains(std::array<double, 3> point,
                std::uint64_t ray_seed = kDefaultRaySeed) const;

  /// Bounding-box recipe: circumscribed cube for a ball, vertex box for a
  /// polyhedron, box union/intersection across children (difference keeps
  /// the first child's box).
  BoxDomain suggested_box() const;

  Kind kind() const { return kind_; }
  const Ball& as_ball() const;
  const Polyhedron& as_polyhedron() const;
  const std::vector<IndicatorDomain>& children() const { return children_; }

 private:
  IndicatorDomain() = default;

  Kind kind_ = Kind::Ball;
  Ball ball_{};
  std::shared_ptr<const Polyhedron> poly_;  // shared: domains are copied freely
  std::vector<IndicatorDomain> children_;
};

}  // namespace sigquad
