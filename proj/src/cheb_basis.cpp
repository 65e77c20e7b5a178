#include "sigquad/cheb_basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sigquad {

namespace {

const double kInvSqrtPi = 1.0 / std::sqrt(std::numbers::pi);
const double kSqrt2OverPi = std::sqrt(2.0 / std::numbers::pi);

std::vector<MultiIndex> graded_lex_order(int n, int d) {
  std::vector<MultiIndex> order;
  for (int total = 0; total <= n; ++total) {
    if (d == 1) {
      order.push_back({{total, 0, 0}});
    } else if (d == 2) {
      for (int i1 = 0; i1 <= total; ++i1) order.push_back({{i1, total - i1, 0}});
    } else {
      for (int i1 = 0; i1 <= total; ++i1)
        for (int i2 = 0; i2 <= total - i1; ++i2)
          order.push_back({{i1, i2, total - i1 - i2}});
    }
  }
  return order;
}

}  // namespace

void eval_tau(double xhat, int n, double* tau) {
  tau[0] = kInvSqrtPi;
  if (n == 0) return;
  double t_prev = 1.0;
  double t_cur = xhat;
  tau[1] = kSqrt2OverPi * t_cur;
  for (int m = 2; m <= n; ++m) {
    double t_next = 2.0 * xhat * t_cur - t_prev;
    t_prev = t_cur;
    t_cur = t_next;
    tau[m] = kSqrt2OverPi * t_cur;
  }
}

ChebBasis::ChebBasis(const BoxDomain& box, int degree) : box_(box), degree_(degree) {
  if (degree < 0) throw std::invalid_argument("ChebBasis: degree must be >= 0");
  order_ = graded_lex_order(degree, box.dim());
}

void ChebBasis::eval(std::span<const double> point, std::span<double> out) const {
  const int d = dim();
  if (static_cast<int>(point.size()) != d)
    throw std::invalid_argument("ChebBasis::eval: point dimension mismatch");
  if (static_cast<int>(out.size()) != size())
    throw std::invalid_argument("ChebBasis::eval: output size mismatch");
  for (int k = 0; k < d; ++k)
    if (!std::isfinite(point[k]))
      throw std::invalid_argument("ChebBasis::eval: non-finite point");

  std::vector<double> tau(static_cast<std::size_t>(d) * (degree_ + 1));
  for (int k = 0; k < d; ++k)
    eval_tau(box_.to_reference(k, point[k]), degree_, tau.data() + k * (degree_ + 1));

  const int stride = degree_ + 1;
  for (int j = 0; j < size(); ++j) {
    const MultiIndex& mi = order_[j];
    double v = tau[mi.e[0]];
    for (int k = 1; k < d; ++k) v *= tau[k * stride + mi.e[k]];
    out[j] = v;
  }
}

std::vector<double> ChebBasis::eval(std::span<const double> point) const {
  std::vector<double> out(size());
  eval(point, out);
  return out;
}

double ChebBasis::christoffel(std::span<const double> point) const {
  std::vector<double> vals = eval(point);
  double k = 0.0;
  for (double v : vals) k += v * v;
  return k;
}

ChebBasis::XAntiderivative ChebBasis::antiderivative_x(int j) const {
  if (dim() != 2)
    throw std::invalid_argument("antiderivative_x: defined for 2D bases only");
  if (j < 0 || j >= size()) throw std::out_of_range("antiderivative_x: index out of range");

  const int m = order_[j].e[0];
  const double scale = 0.5 * box_.length(0);

  // integral T_0 = T_1, integral T_1 = T_2/4,
  // integral T_m = T_{m+1}/(2(m+1)) - T_{m-1}/(2(m-1)) for m >= 2;
  // integration constant 0.
  XAntiderivative a;
  a.y_index = order_[j].e[1];
  a.x_coeffs.assign(static_cast<std::size_t>(m) + 2, 0.0);
  if (m == 0) {
    a.x_coeffs[1] = kInvSqrtPi * scale;
  } else if (m == 1) {
    a.x_coeffs[2] = kSqrt2OverPi / 4.0 * scale;
  } else {
    a.x_coeffs[static_cast<std::size_t>(m) + 1] = kSqrt2OverPi / (2.0 * (m + 1)) * scale;
    a.x_coeffs[static_cast<std::size_t>(m) - 1] = -kSqrt2OverPi / (2.0 * (m - 1)) * scale;
  }
  return a;
}

double ChebBasis::eval_antiderivative(int j, std::span<const double> point) const {
  if (dim() != 2)
    throw std::invalid_argument("eval_antiderivative: defined for 2D bases only");
  if (static_cast<int>(point.size()) != 2)
    throw std::invalid_argument("eval_antiderivative: need a 2D point");
  XAntiderivative a = antiderivative_x(j);

  const double xhat = box_.to_reference(0, point[0]);
  double t_prev = 1.0, t_cur = xhat;
  double sx = a.x_coeffs[0];
  if (a.x_coeffs.size() > 1) sx += a.x_coeffs[1] * t_cur;
  for (std::size_t k = 2; k < a.x_coeffs.size(); ++k) {
    double t_next = 2.0 * xhat * t_cur - t_prev;
    t_prev = t_cur;
    t_cur = t_next;
    sx += a.x_coeffs[k] * t_cur;
  }

  std::vector<double> tau(static_cast<std::size_t>(a.y_index) + 1);
  eval_tau(box_.to_reference(1, point[1]), a.y_index, tau.data());
  return sx * tau[a.y_index];
}

BasisEvaluator::BasisEvaluator(const ChebBasis& basis)
    : basis_(&basis),
      tau_(static_cast<std::size_t>(basis.dim()) * (basis.degree() + 1)) {}

void BasisEvaluator::operator()(std::span<const double> point, std::span<double> out) {
  const int d = basis_->dim();
  const int stride = basis_->degree() + 1;
  for (int k = 0; k < d; ++k)
    eval_tau(basis_->box().to_reference(k, point[k]), basis_->degree(),
             tau_.data() + k * stride);
  const auto& order = basis_->order();
  const int n_funcs = basis_->size();
  for (int j = 0; j < n_funcs; ++j) {
    const MultiIndex& mi = order[j];
    double v = tau_[mi.e[0]];
    for (int k = 1; k < d; ++k) v *= tau_[k * stride + mi.e[k]];
    out[j] = v;
  }
}

}  // namespace sigquad
