#include "sigquad/quad_rules.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sigquad {

double QuadRule::weight_sum() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

namespace {

// Reference tensorial Gauss-Chebyshev data on [-1,1]^d; box-independent,
// so it is computed once per (dim, n) and affinely mapped on request.
struct GcReference {
  std::vector<double> nodes;  // (n+1)^d * d
  double weight = 0.0;        // (pi/(n+1))^d, equal for all nodes
};

std::shared_ptr<const GcReference> gc_reference(int dim, int n) {
  static std::map<std::pair<int, int>, std::shared_ptr<const GcReference>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(dim, n);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const int q = n + 1;
  std::vector<double> nodes1d(q);
  for (int i = 1; i <= q; ++i)
    nodes1d[i - 1] = std::cos((2.0 * i - 1.0) * std::numbers::pi / (2.0 * q));

  auto ref = std::make_shared<GcReference>();
  ref->weight = 1.0;
  for (int k = 0; k < dim; ++k) ref->weight *= std::numbers::pi / q;

  long long m = 1;
  for (int k = 0; k < dim; ++k) m *= q;
  ref->nodes.resize(static_cast<std::size_t>(m) * dim);
  for (long long i = 0; i < m; ++i) {
    long long rest = i;
    for (int k = dim - 1; k >= 0; --k) {
      ref->nodes[static_cast<std::size_t>(i) * dim + k] = nodes1d[rest % q];
      rest /= q;
    }
  }
  cache.emplace(key, ref);
  return ref;
}

}  // namespace

QuadRule gauss_chebyshev_box(const BoxDomain& box, int n) {
  if (n < 0) throw std::invalid_argument("gauss_chebyshev_box: degree must be >= 0");
  auto ref = gc_reference(box.dim(), n);
  const int d = box.dim();
  const long long m = static_cast<long long>(ref->nodes.size()) / d;

  QuadRule rule{box, 2 * n, {}, {}};
  rule.nodes.resize(ref->nodes.size());
  rule.weights.assign(static_cast<std::size_t>(m), ref->weight);
  for (long long i = 0; i < m; ++i)
    for (int k = 0; k < d; ++k)
      rule.nodes[static_cast<std::size_t>(i) * d + k] =
          box.from_reference(k, ref->nodes[static_cast<std::size_t>(i) * d + k]);
  return rule;
}

QuadRule gauss_legendre(int q) {
  if (q < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  constexpr double kTol = 1e-15;         // documented node tolerance
  constexpr long double kTight = 1e-18L; // drive the residual below double rounding
  constexpr int kMaxIter = 100;

  QuadRule rule{BoxDomain::cube(-1.0, 1.0, 1), 2 * q - 1, {}, {}};
  rule.nodes.resize(q);
  rule.weights.resize(q);

  // The iteration runs in long double so the rounded nodes and weights
  // are correct to the last double bit.
  const int half = (q + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-point initial guess for the i-th largest root.
    long double z = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (q + 0.5L));
    long double pp = 0.0L;
    long double last_step = 1.0L;
    int iter = 0;
    for (; iter < kMaxIter; ++iter) {
      long double p1 = 1.0L, p2 = 0.0L;
      for (int k = 0; k < q; ++k) {
        long double p3 = p2;
        p2 = p1;
        p1 = ((2.0L * k + 1.0L) * z * p2 - k * p3) / (k + 1);
      }
      pp = q * (z * p1 - p2) / (z * z - 1.0L);
      long double step = p1 / pp;
      z -= step;
      last_step = step < 0.0L ? -step : step;
      if (last_step <= kTight) break;
    }
    if (iter == kMaxIter && !(last_step <= kTol))
      throw std::runtime_error("gauss_legendre: Newton iteration did not converge");
    rule.nodes[i] = static_cast<double>(-z);
    rule.nodes[q - 1 - i] = static_cast<double>(z);
    const double w = static_cast<double>(2.0L / ((1.0L - z * z) * pp * pp));
    rule.weights[i] = w;
    rule.weights[q - 1 - i] = w;
  }
  return rule;
}

double verify_rule_exactness(const QuadRule& rule, const ChebBasis& basis) {
  if (!(rule.box == basis.box()))
    throw std::invalid_argument("verify_rule_exactness: rule and basis boxes differ");
  if (rule.ade < 2 * basis.degree())
    throw std::invalid_argument("verify_rule_exactness: rule ade " + std::to_string(rule.ade) +
                                " below 2*degree " + std::to_string(2 * basis.degree()));

  const int n_funcs = basis.size();
  const int m = rule.size();
  const int d = rule.dim();

  // W[j][i] = sqrt(u_i) p_j(x_i), stored basis-major so each pairwise
  // product is a contiguous dot over the nodes.
  std::vector<double> w(static_cast<std::size_t>(n_funcs) * m);
  std::vector<double> row(n_funcs);
  BasisEvaluator evaluate(basis);
  for (int i = 0; i < m; ++i) {
    evaluate(std::span<const double>(rule.node(i), d), row);
    const double su = std::sqrt(rule.weights[i]);
    for (int j = 0; j < n_funcs; ++j) w[static_cast<std::size_t>(j) * m + i] = su * row[j];
  }

  double residual = 0.0;
  for (int j = 0; j < n_funcs; ++j) {
    const double* wj = w.data() + static_cast<std::size_t>(j) * m;
    for (int k = j; k < n_funcs; ++k) {
      const double* wk = w.data() + static_cast<std::size_t>(k) * m;
      double g = 0.0;
      for (int i = 0; i < m; ++i) g += wj[i] * wk[i];
      double err = std::abs(j == k ? g - 1.0 : g);
      if (err > residual) residual = err;
    }
  }
  return residual;
}

}  // namespace sigquad
