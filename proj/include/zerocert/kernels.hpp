#pragma once

// Data-parallel inner loops used by the residual problems, the least-squares
// functional and the descent solver.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The variant is chosen once at runtime from the CPU features; the
// environment variable ZEROCERT_ISA=scalar forces the reference path.
//
// Elementwise kernels (axpy, bvp_residual, bvp_apply_jacobian) produce bitwise
// identical results on both paths. Reductions (dot, squared norms) use a
// different summation order on the vector path and agree to rounding.

#include <cstddef>
#include <span>
#include <string_view>

namespace zerocert::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  const char* name;
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*weighted_squared_norm)(const double* x, const double* w, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // out_i = (2 v_i - v_{i-1} - v_{i+1}) * inv_h2 + gamma * v_i^3 - f_i, zero Dirichlet ends.
  void (*bvp_residual)(const double* v, const double* f, std::size_t n, double inv_h2, double gamma,
                       double* out);
  // out = J(v) y for the (symmetric) Jacobian of bvp_residual.
  void (*bvp_apply_jacobian)(const double* v, const double* y, std::size_t n, double inv_h2,
                             double gamma, double* out);
};

const KernelTable& scalar_table() noexcept;

// Returns nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* table_for(Isa isa) noexcept;

bool isa_available(Isa isa) noexcept;

// Table selected for this process (resolved on first use).
const KernelTable& active() noexcept;

std::string_view isa_name(Isa isa) noexcept;

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}

inline double squared_norm(std::span<const double> x) {
  return active().dot(x.data(), x.data(), x.size());
}

inline double weighted_squared_norm(std::span<const double> x, std::span<const double> w) {
  return active().weighted_squared_norm(x.data(), w.data(), x.size());
}

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active().axpy(a, x.data(), y.data(), x.size());
}

}  // namespace zerocert::kernels
