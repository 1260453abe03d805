#include <cmath>

#include "kernels_impl.hpp"

namespace poncelet::kernels {

namespace {

void sample_uvw(const double* cr, const double* ci, std::size_t n, const double p[6], double* xr,
                double* xi) {
  for (std::size_t i = 0; i < n; ++i) {
    // 1/lam = conj(lam) on the unit circle.
    double ur = p[0] * cr[i] - p[1] * ci[i];
    double ui = p[0] * ci[i] + p[1] * cr[i];
    double vr = p[2] * cr[i] + p[3] * ci[i];
    double vi = p[3] * cr[i] - p[2] * ci[i];
    xr[i] = (ur + vr) + p[4];
    xi[i] = (ui + vi) + p[5];
  }
}

void combine3(const double* w1, const double* w2, const double* w3, const double* const vx[3],
              const double* const vy[3], std::size_t n, double* ox, double* oy) {
  for (std::size_t i = 0; i < n; ++i) {
    double s = (w1[i] + w2[i]) + w3[i];
    double x = (w1[i] * vx[0][i] + w2[i] * vx[1][i]) + w3[i] * vx[2][i];
    double y = (w1[i] * vy[0][i] + w2[i] * vy[1][i]) + w3[i] * vy[2][i];
    ox[i] = x / s;
    oy[i] = y / s;
  }
}

double conic_sumsq(const double* x, const double* y, std::size_t n, const double c[6]) {
  // Four interleaved partial sums, mirroring the vector lanes.
  double acc[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    double xi = x[i], yi = y[i];
    double r = ((c[0] * xi * xi + c[1] * xi * yi) + c[2] * yi * yi) + ((c[3] * xi + c[4] * yi) + c[5]);
    acc[i & 3] += r * r;
  }
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void speeds(const double* x, const double* y, std::size_t n, double inv_dt, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = (i + 1 == n) ? 0 : i + 1;
    double dx = x[j] - x[i], dy = y[j] - y[i];
    out[i] = std::sqrt(dx * dx + dy * dy) * inv_dt;
  }
}

double powi(double x, int e) {
  unsigned m = e < 0 ? static_cast<unsigned>(-e) : static_cast<unsigned>(e);
  double r = 1.0, base = x;
  while (m) {
    if (m & 1u) r = r * base;
    m >>= 1;
    if (m) base = base * base;
  }
  return e < 0 ? 1.0 / r : r;
}

void run_program(const Program& prog, const double* a, const double* b, const double* c,
                 std::size_t n, double* out) {
  double st[kMaxStack];
  for (std::size_t i = 0; i < n; ++i) {
    int sp = 0;
    for (const Instr& ins : prog.code) {
      switch (ins.op) {
        case Op::var_a: st[sp++] = a[i]; break;
        case Op::var_b: st[sp++] = b[i]; break;
        case Op::var_c: st[sp++] = c[i]; break;
        case Op::constant: st[sp++] = ins.value; break;
        case Op::add: --sp; st[sp - 1] = st[sp - 1] + st[sp]; break;
        case Op::sub: --sp; st[sp - 1] = st[sp - 1] - st[sp]; break;
        case Op::mul: --sp; st[sp - 1] = st[sp - 1] * st[sp]; break;
        case Op::div: --sp; st[sp - 1] = st[sp - 1] / st[sp]; break;
        case Op::neg: st[sp - 1] = -st[sp - 1]; break;
        case Op::sqrt: st[sp - 1] = std::sqrt(st[sp - 1]); break;
        case Op::powi: st[sp - 1] = powi(st[sp - 1], ins.ival); break;
        case Op::pow: st[sp - 1] = std::pow(st[sp - 1], ins.value); break;
      }
    }
    out[i] = st[0];
  }
}

}  // namespace

double scalar_powi(double x, int e) { return powi(x, e); }

const Kernels& scalar_kernels() {
  static const Kernels k{Isa::scalar, sample_uvw, combine3, conic_sumsq, speeds, run_program};
  return k;
}

}  // namespace poncelet::kernels
