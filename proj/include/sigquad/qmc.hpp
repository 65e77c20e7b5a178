#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sigquad/box.hpp"
#include "sigquad/compress.hpp"
#include "sigquad/csg.hpp"

namespace sigquad {

/// Van der Corput radical inverse of index >= 1 in the given base.
double radical_inverse(long long index, int base);

/// First `count` points of the plain Halton sequence (bases 2,3,5; no
/// scrambling, leaping or skipping; index starts at 1), affinely mapped
/// to the box.  Returns count * dim coordinates, point-major.
std::vector<double> halton(const BoxDomain& box, long long count);

/// Equal-weight discrete measure: the Halton points of the box that lie
/// in the domain, each carrying vol(B)/K.
struct PointCloud {
  BoxDomain box;
  long long total_generated = 0;   // K
  double per_point_weight = 0.0;   // nu = vol(B)/K
  std::vector<double> points;      // L*3, point-major

  long long size() const { return static_cast<long long>(points.size()) / 3; }
  const double* point(long long i) const { return points.data() + 3 * static_cast<std::size_t>(i); }
  double weight_sum() const { return per_point_weight * static_cast<double>(size()); }
};

/// Filters halton(box, count) through the indicator.  Throws when no
/// point lands in the domain (wrong box or empty domain).
PointCloud qmc_measure(const IndicatorDomain& domain, const BoxDomain& box,
                       long long count, std::uint64_t ray_seed = kDefaultRaySeed);

/// QMC moments m_j = nu * sum_i p_j(Q_i), accumulated in point order.
MomentVector qmc_moments(const PointCloud& cloud, const ChebBasis& basis);

/// nu * sum_i f(Q_i): the full QMC value the compressed rule reproduces.
double qmc_integrate(const PointCloud& cloud,
                     const std::function<double(double, double, double)>& f);

/// Full pipeline: qmc_measure -> basis on the box -> Gauss-Chebyshev rule
/// -> QMC moments -> compression.  (n+1)^3 nodes reproducing the QMC
/// value of every polynomial of total degree <= n.
SignedRule compress_qmc(const IndicatorDomain& domain, const BoxDomain& box,
                        long long count, int n,
                        std::uint64_t ray_seed = kDefaultRaySeed);

}  // namespace sigquad
