#pragma once

// Batch kernels over structure-of-arrays data. Each kernel has a scalar reference and,
// on x86-64, an AVX2 variant chosen at runtime. Both paths use the same operation order
// (the one reduction keeps four interleaved partial sums), so results are bit-identical.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace poncelet::kernels {

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa);

// Bytecode for a stack machine evaluating a weight expression in variables a, b, c.
enum class Op : std::uint8_t { var_a, var_b, var_c, constant, add, sub, mul, div, neg, sqrt, powi, pow };

struct Instr {
  Op op;
  int ival = 0;       // integer exponent for powi
  double value = 0;   // literal for constant, exponent for pow
};

struct Program {
  std::vector<Instr> code;
  int max_depth = 0;
};

inline constexpr int kMaxStack = 64;

struct Kernels {
  Isa isa;
  // x = u*lam + v/lam + w for lam = (cr, ci) on the unit circle.
  void (*sample_uvw)(const double* cr, const double* ci, std::size_t n, const double uvw[6],
                     double* xr, double* xi);
  // Normalized barycentric combination of three vertex arrays.
  void (*combine3)(const double* w1, const double* w2, const double* w3, const double* const vx[3],
                   const double* const vy[3], std::size_t n, double* ox, double* oy);
  // Sum of squared algebraic residuals of a conic over points.
  double (*conic_sumsq)(const double* x, const double* y, std::size_t n, const double coeffs[6]);
  // |z[i+1] - z[i]| * inv_dt, wrapping at the end (closed path).
  void (*speeds)(const double* x, const double* y, std::size_t n, double inv_dt, double* out);
  // Evaluates prog with a, b, c taken lane-wise from the arrays.
  void (*run_program)(const Program& prog, const double* a, const double* b, const double* c,
                      std::size_t n, double* out);
};

const Kernels& scalar_kernels();
// Null when the AVX2 variant is not compiled in or not supported by the CPU.
const Kernels* avx2_kernels();

// Kernel table in use: AVX2 when available unless PONCELET_SIMD=scalar, or after force().
const Kernels& active();
void force(Isa isa);
void reset();

}  // namespace poncelet::kernels
