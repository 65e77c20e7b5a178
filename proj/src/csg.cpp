#include "sigquad/csg.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "sigquad/util.hpp"

namespace sigquad {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

constexpr double kEdgeEps = 1e-12;  // barycentric distance that forces a ray re-draw
const Vec3 kFixedRayDir = {0.2715896328, 0.6183744210, 0.7374128766};

enum class RayResult { Miss, Cross, Degenerate };

// Moeller-Trumbore crossing test for one facet; t <= 0 never counts.
RayResult facet_crossing(const Vec3& v0, const Vec3& v1, const Vec3& v2, const Vec3& origin,
                         const Vec3& dir) {
  const Vec3 e1 = sub(v1, v0);
  const Vec3 e2 = sub(v2, v0);
  const Vec3 normal = cross(e1, e2);
  const double normal_len = norm(normal);
  if (normal_len == 0.0) throw std::invalid_argument("polyhedron has a degenerate facet");

  const Vec3 pvec = cross(dir, e2);
  const double det = dot(e1, pvec);
  if (std::abs(det) <= kEdgeEps * normal_len) {
    // ray (near-)parallel to the facet plane: ambiguous only if the
    // origin is essentially on that plane
    const double dist = dot(sub(origin, v0), normal) / normal_len;
    if (std::abs(dist) <= kEdgeEps * (1.0 + norm(sub(origin, v0)))) return RayResult::Degenerate;
    return RayResult::Miss;
  }

  const double inv_det = 1.0 / det;
  const Vec3 tvec = sub(origin, v0);
  const double u = dot(tvec, pvec) * inv_det;
  const Vec3 qvec = cross(tvec, e1);
  const double v = dot(dir, qvec) * inv_det;
  const double t = dot(e2, qvec) * inv_det;

  if (t <= 0.0) return RayResult::Miss;
  if (u < -kEdgeEps || v < -kEdgeEps || u + v > 1.0 + kEdgeEps) return RayResult::Miss;
  if (u <= kEdgeEps || v <= kEdgeEps || u + v >= 1.0 - kEdgeEps) return RayResult::Degenerate;
  return RayResult::Cross;
}

bool polyhedron_contains(const Polyhedron& poly, const Vec3& point, std::uint64_t ray_seed) {
  Vec3 dir = kFixedRayDir;
  Rng rng(ray_seed);
  for (int attempt = 0; attempt <= 8; ++attempt) {
    int crossings = 0;
    bool degenerate = false;
    for (const auto& f : poly.facets) {
      switch (facet_crossing(poly.vertices[f[0]], poly.vertices[f[1]], poly.vertices[f[2]],
                             point, dir)) {
        case RayResult::Cross:
          ++crossings;
          break;
        case RayResult::Degenerate:
          degenerate = true;
          break;
        case RayResult::Miss:
          break;
      }
      if (degenerate) break;
    }
    if (!degenerate) return (crossings % 2) == 1;
    // deterministic re-draw of the ray direction
    do {
      dir = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    } while (norm(dir) < 0.1);
    const double len = norm(dir);
    dir = {dir[0] / len, dir[1] / len, dir[2] / len};
  }
  throw std::runtime_error("polyhedron_contains: ray casting degenerate after 8 retries");
}

void validate_polyhedron(const Polyhedron& poly) {
  const int nv = static_cast<int>(poly.vertices.size());
  if (nv < 4 || poly.facets.size() < 4)
    throw std::invalid_argument("polyhedron: need at least 4 vertices and 4 facets");
  for (const auto& v : poly.vertices)
    for (double c : v)
      if (!std::isfinite(c)) throw std::invalid_argument("polyhedron: non-finite vertex");

  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& f : poly.facets) {
    for (int c : f)
      if (c < 0 || c >= nv)
        throw std::invalid_argument("polyhedron: facet index out of range");
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
      throw std::invalid_argument("polyhedron: degenerate facet (repeated vertex)");
    for (int e = 0; e < 3; ++e) {
      int a = f[e], b = f[(e + 1) % 3];
      edge_count[{std::min(a, b), std::max(a, b)}] += 1;
    }
  }
  for (const auto& [edge, count] : edge_count)
    if (count != 2)
      throw std::invalid_argument("polyhedron: edge (" + std::to_string(edge.first) + "," +
                                  std::to_string(edge.second) + ") shared by " +
                                  std::to_string(count) + " facets (surface not closed)");
}

}  // namespace

IndicatorDomain IndicatorDomain::ball(std::array<double, 3> center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("ball: radius must be positive");
  for (double c : center)
    if (!std::isfinite(c)) throw std::invalid_argument("ball: non-finite center");
  IndicatorDomain d;
  d.kind_ = Kind::Ball;
  d.ball_ = Ball{center, radius};
  return d;
}

IndicatorDomain IndicatorDomain::polyhedron(std::vector<std::array<double, 3>> vertices,
                                            std::vector<std::array<int, 3>> facets) {
  auto poly = std::make_shared<Polyhedron>(Polyhedron{std::move(vertices), std::move(facets)});
  validate_polyhedron(*poly);
  IndicatorDomain d;
  d.kind_ = Kind::Polyhedron;
  d.poly_ = std::move(poly);
  return d;
}

IndicatorDomain IndicatorDomain::make_union(std::vector<IndicatorDomain> children) {
  if (children.empty()) throw std::invalid_argument("union: needs at least one child");
  IndicatorDomain d;
  d.kind_ = Kind::Union;
  d.children_ = std::move(children);
  return d;
}

IndicatorDomain IndicatorDomain::make_intersection(std::vector<IndicatorDomain> children) {
  if (children.empty()) throw std::invalid_argument("intersection: needs at least one child");
  IndicatorDomain d;
  d.kind_ = Kind::Intersection;
  d.children_ = std::move(children);
  return d;
}

IndicatorDomain IndicatorDomain::make_difference(std::vector<IndicatorDomain> children) {
  if (children.size() < 2) throw std::invalid_argument("difference: needs at least two children");
  IndicatorDomain d;
  d.kind_ = Kind::Difference;
  d.children_ = std::move(children);
  return d;
}

const Ball& IndicatorDomain::as_ball() const {
  if (kind_ != Kind::Ball) throw std::logic_error("as_ball: not a ball node");
  return ball_;
}

const Polyhedron& IndicatorDomain::as_polyhedron() const {
  if (kind_ != Kind::Polyhedron) throw std::logic_error("as_polyhedron: not a polyhedron node");
  return *poly_;
}

bool IndicatorDomain::contains(std::array<double, 3> point, std::uint64_t ray_seed) const {
  for (double c : point)
    if (!std::isfinite(c)) throw std::invalid_argument("contains: non-finite point");
  switch (kind_) {
    case Kind::Ball: {
      const Vec3 d = sub(point, ball_.center);
      return dot(d, d) <= ball_.radius * ball_.radius;
    }
    case Kind::Polyhedron:
      return polyhedron_contains(*poly_, point, ray_seed);
    case Kind::Union:
      for (const auto& c : children_)
        if (c.contains(point, ray_seed)) return true;
      return false;
    case Kind::Intersection:
      for (const auto& c : children_)
        if (!c.contains(point, ray_seed)) return false;
      return true;
    case Kind::Difference:
      if (!children_[0].contains(point, ray_seed)) return false;
      for (std::size_t i = 1; i < children_.size(); ++i)
        if (children_[i].contains(point, ray_seed)) return false;
      return true;
  }
  throw std::logic_error("contains: malformed tree");
}

BoxDomain IndicatorDomain::suggested_box() const {
  switch (kind_) {
    case Kind::Ball: {
      double lo[3], hi[3];
      for (int k = 0; k < 3; ++k) {
        lo[k] = ball_.center[k] - ball_.radius;
        hi[k] = ball_.center[k] + ball_.radius;
      }
      return BoxDomain(std::span<const double>(lo, 3), std::span<const double>(hi, 3));
    }
    case Kind::Polyhedron: {
      double lo[3], hi[3];
      for (int k = 0; k < 3; ++k) {
        lo[k] = poly_->vertices[0][k];
        hi[k] = poly_->vertices[0][k];
      }
      for (const auto& v : poly_->vertices)
        for (int k = 0; k < 3; ++k) {
          lo[k] = std::min(lo[k], v[k]);
          hi[k] = std::max(hi[k], v[k]);
        }
      return BoxDomain(std::span<const double>(lo, 3), std::span<const double>(hi, 3));
    }
    case Kind::Union: {
      double lo[3], hi[3];
      bool first = true;
      for (const auto& c : children_) {
        BoxDomain b = c.suggested_box();
        for (int k = 0; k < 3; ++k) {
          lo[k] = first ? b.lo(k) : std::min(lo[k], b.lo(k));
          hi[k] = first ? b.hi(k) : std::max(hi[k], b.hi(k));
        }
        first = false;
      }
      return BoxDomain(std::span<const double>(lo, 3), std::span<const double>(hi, 3));
    }
    case Kind::Intersection: {
      double lo[3], hi[3];
      bool first = true;
      for (const auto& c : children_) {
        BoxDomain b = c.suggested_box();
        for (int k = 0; k < 3; ++k) {
          lo[k] = first ? b.lo(k) : std::max(lo[k], b.lo(k));
          hi[k] = first ? b.hi(k) : std::min(hi[k], b.hi(k));
        }
        first = false;
      }
      for (int k = 0; k < 3; ++k)
        if (!(lo[k] < hi[k]))
          throw std::runtime_error("suggested_box: intersection of bounding boxes is empty");
      return BoxDomain(std::span<const double>(lo, 3), std::span<const double>(hi, 3));
    }
    case Kind::Difference:
      return children_[0].suggested_box();
  }
  throw std::logic_error("suggested_box: malformed tree");
}

}  // namespace sigquad
