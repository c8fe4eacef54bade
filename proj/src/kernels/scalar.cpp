#include "zerocert/kernels.hpp"

namespace zerocert::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

double weighted_squared_norm_scalar(const double* x, const double* w, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += w[i] * (x[i] * x[i]);
  return sum;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void bvp_residual_scalar(const double* v, const double* f, std::size_t n, double inv_h2,
                         double gamma, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? v[i - 1] : 0.0;
    const double right = i + 1 < n ? v[i + 1] : 0.0;
    const double lap = ((2.0 * v[i] - left) - right) * inv_h2;
    out[i] = (lap + gamma * ((v[i] * v[i]) * v[i])) - f[i];
  }
}

void bvp_apply_jacobian_scalar(const double* v, const double* y, std::size_t n, double inv_h2,
                               double gamma, double* out) {
  const double three_gamma = 3.0 * gamma;
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? y[i - 1] : 0.0;
    const double right = i + 1 < n ? y[i + 1] : 0.0;
    const double lap = ((2.0 * y[i] - left) - right) * inv_h2;
    out[i] = lap + (three_gamma * (v[i] * v[i])) * y[i];
  }
}

constexpr KernelTable kScalarTable{
    Isa::scalar,
    "scalar",
    &dot_scalar,
    &weighted_squared_norm_scalar,
    &axpy_scalar,
    &bvp_residual_scalar,
    &bvp_apply_jacobian_scalar,
};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalarTable; }

}  // namespace zerocert::kernels
