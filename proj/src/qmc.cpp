#include "sigquad/qmc.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sigquad {

double radical_inverse(long long index, int base) {
  if (index < 1) throw std::invalid_argument("radical_inverse: index starts at 1");
  if (base < 2) throw std::invalid_argument("radical_inverse: base must be >= 2");
  const double inv_base = 1.0 / base;
  double f = 0.0;
  double bk = inv_base;
  while (index > 0) {
    f += static_cast<double>(index % base) * bk;
    index /= base;
    bk *= inv_base;
  }
  return f;
}

std::vector<double> halton(const BoxDomain& box, long long count) {
  if (count < 1) throw std::invalid_argument("halton: need at least one point");
  const int d = box.dim();
  if (d > 3) throw std::invalid_argument("halton: dimension must be <= 3");
  static constexpr int kBases[3] = {2, 3, 5};

  std::vector<double> pts(static_cast<std::size_t>(count) * d);
  for (long long i = 1; i <= count; ++i)
    for (int k = 0; k < d; ++k) {
      const double u = radical_inverse(i, kBases[k]);
      pts[static_cast<std::size_t>(i - 1) * d + k] = box.lo(k) + u * box.length(k);
    }
  return pts;
}

PointCloud qmc_measure(const IndicatorDomain& domain, const BoxDomain& box, long long count,
                       std::uint64_t ray_seed) {
  if (box.dim() != 3) throw std::invalid_argument("qmc_measure: box must be 3D");
  std::vector<double> pts = halton(box, count);

  PointCloud cloud{box, count, box.volume() / static_cast<double>(count), {}};
  cloud.points.reserve(pts.size() / 4);
  for (long long i = 0; i < count; ++i) {
    const double* p = pts.data() + static_cast<std::size_t>(i) * 3;
    if (domain.contains({p[0], p[1], p[2]}, ray_seed)) {
      cloud.points.push_back(p[0]);
      cloud.points.push_back(p[1]);
      cloud.points.push_back(p[2]);
    }
  }
  if (cloud.points.empty())
    throw std::invalid_argument(
        "qmc_measure: no Halton point fell inside the domain (empty domain or wrong box)");
  return cloud;
}

MomentVector qmc_moments(const PointCloud& cloud, const ChebBasis& basis) {
  if (!(basis.box() == cloud.box))
    throw std::invalid_argument("qmc_moments: basis box differs from cloud box");

  // Accumulated in extended precision: the sums run over tens of
  // thousands of points, and their rounding error is later amplified by
  // the Chebyshev coefficients of the integrand near the box corners.
  // Extended accumulation keeps each moment correct to its own ulp.
  const int n = basis.degree();
  const int n_funcs = basis.size();
  const auto& order = basis.order();
  std::vector<long double> sums(n_funcs, 0.0L);
  std::vector<long double> tau(static_cast<std::size_t>(3) * (n + 1));

  const long double inv_sqrt_pi = 1.0L / std::sqrt(std::numbers::pi_v<long double>);
  const long double sqrt_2_over_pi = std::sqrt(2.0L / std::numbers::pi_v<long double>);

  const long long l = cloud.size();
  for (long long i = 0; i < l; ++i) {
    const double* p = cloud.point(i);
    for (int k = 0; k < 3; ++k) {
      const long double xhat = basis.box().to_reference(k, p[k]);
      long double* t = tau.data() + static_cast<std::size_t>(k) * (n + 1);
      t[0] = inv_sqrt_pi;
      if (n >= 1) {
        long double t_prev = 1.0L, t_cur = xhat;
        t[1] = sqrt_2_over_pi * t_cur;
        for (int m = 2; m <= n; ++m) {
          const long double t_next = 2.0L * xhat * t_cur - t_prev;
          t_prev = t_cur;
          t_cur = t_next;
          t[m] = sqrt_2_over_pi * t_cur;
        }
      }
    }
    for (int j = 0; j < n_funcs; ++j)
      sums[j] += tau[order[j].e[0]] * tau[(n + 1) + order[j].e[1]] *
                 tau[2 * (n + 1) + order[j].e[2]];
  }

  std::vector<double> values(n_funcs);
  for (int j = 0; j < n_funcs; ++j)
    values[j] = static_cast<double>(static_cast<long double>(cloud.per_point_weight) * sums[j]);
  return MomentVector{basis, std::move(values)};
}

double qmc_integrate(const PointCloud& cloud,
                     const std::function<double(double, double, double)>& f) {
  double s = 0.0;
  const long long l = cloud.size();
  for (long long i = 0; i < l; ++i) {
    const double* p = cloud.point(i);
    s += f(p[0], p[1], p[2]);
  }
  return cloud.per_point_weight * s;
}

SignedRule compress_qmc(const IndicatorDomain& domain, const BoxDomain& box, long long count,
                        int n, std::uint64_t ray_seed) {
  if (n < 0) throw std::invalid_argument("compress_qmc: degree must be >= 0");
  const PointCloud cloud = qmc_measure(domain, box, count, ray_seed);
  const ChebBasis basis(box, n);
  const QuadRule rule = gauss_chebyshev_box(box, n);
  return compress(qmc_moments(cloud, basis), rule);
}

}  // namespace sigquad
