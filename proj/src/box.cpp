#include "sigquad/box.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sigquad {

BoxDomain::BoxDomain(std::span<const double> lo, std::span<const double> hi) {
  if (lo.size() != hi.size() || lo.empty() || lo.size() > 3)
    throw std::invalid_argument("BoxDomain: dimension must be 1, 2 or 3");
  dim_ = static_cast<int>(lo.size());
  for (int k = 0; k < dim_; ++k) {
    if (!std::isfinite(lo[k]) || !std::isfinite(hi[k]))
      throw std::invalid_argument("BoxDomain: non-finite bound");
    if (!(lo[k] < hi[k]))
      throw std::invalid_argument("BoxDomain: need lo < hi in axis " + std::to_string(k));
    lo_[k] = lo[k];
    hi_[k] = hi[k];
  }
}

BoxDomain BoxDomain::cube(double lo, double hi, int dim) {
  std::array<double, 3> l{lo, lo, lo}, h{hi, hi, hi};
  return BoxDomain(std::span<const double>(l.data(), dim),
                   std::span<const double>(h.data(), dim));
}

double BoxDomain::volume() const {
  double v = 1.0;
  for (int k = 0; k < dim_; ++k) v *= length(k);
  return v;
}

double BoxDomain::chebyshev_mass() const {
  double m = 1.0;
  for (int k = 0; k < dim_; ++k) m *= std::numbers::pi;
  return m;
}

bool BoxDomain::contains(std::span<const double> point, double tol) const {
  if (static_cast<int>(point.size()) != dim_) return false;
  for (int k = 0; k < dim_; ++k)
    if (point[k] < lo_[k] - tol || point[k] > hi_[k] + tol) return false;
  return true;
}

bool BoxDomain::contains_box(const BoxDomain& inner, double tol) const {
  if (inner.dim_ != dim_) return false;
  for (int k = 0; k < dim_; ++k)
    if (inner.lo_[k] < lo_[k] - tol || inner.hi_[k] > hi_[k] + tol) return false;
  return true;
}

}  // namespace sigquad
