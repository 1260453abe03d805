#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace poncelet::kernels {

namespace {

void sample_uvw(const double* cr, const double* ci, std::size_t n, const double p[6], double* xr,
                double* xi) {
  const __m256d u_r = _mm256_set1_pd(p[0]), u_i = _mm256_set1_pd(p[1]);
  const __m256d v_r = _mm256_set1_pd(p[2]), v_i = _mm256_set1_pd(p[3]);
  const __m256d w_r = _mm256_set1_pd(p[4]), w_i = _mm256_set1_pd(p[5]);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r = _mm256_loadu_pd(cr + i), m = _mm256_loadu_pd(ci + i);
    __m256d ur = _mm256_sub_pd(_mm256_mul_pd(u_r, r), _mm256_mul_pd(u_i, m));
    __m256d ui = _mm256_add_pd(_mm256_mul_pd(u_r, m), _mm256_mul_pd(u_i, r));
    __m256d vr = _mm256_add_pd(_mm256_mul_pd(v_r, r), _mm256_mul_pd(v_i, m));
    __m256d vi = _mm256_sub_pd(_mm256_mul_pd(v_i, r), _mm256_mul_pd(v_r, m));
    _mm256_storeu_pd(xr + i, _mm256_add_pd(_mm256_add_pd(ur, vr), w_r));
    _mm256_storeu_pd(xi + i, _mm256_add_pd(_mm256_add_pd(ui, vi), w_i));
  }
  if (i < n) scalar_kernels().sample_uvw(cr + i, ci + i, n - i, p, xr + i, xi + i);
}

void combine3(const double* w1, const double* w2, const double* w3, const double* const vx[3],
              const double* const vy[3], std::size_t n, double* ox, double* oy) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(w1 + i), b = _mm256_loadu_pd(w2 + i), c = _mm256_loadu_pd(w3 + i);
    __m256d s = _mm256_add_pd(_mm256_add_pd(a, b), c);
    __m256d x = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(a, _mm256_loadu_pd(vx[0] + i)), _mm256_mul_pd(b, _mm256_loadu_pd(vx[1] + i))),
        _mm256_mul_pd(c, _mm256_loadu_pd(vx[2] + i)));
    __m256d y = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(a, _mm256_loadu_pd(vy[0] + i)), _mm256_mul_pd(b, _mm256_loadu_pd(vy[1] + i))),
        _mm256_mul_pd(c, _mm256_loadu_pd(vy[2] + i)));
    _mm256_storeu_pd(ox + i, _mm256_div_pd(x, s));
    _mm256_storeu_pd(oy + i, _mm256_div_pd(y, s));
  }
  if (i < n) {
    const double* tx[3] = {vx[0] + i, vx[1] + i, vx[2] + i};
    const double* ty[3] = {vy[0] + i, vy[1] + i, vy[2] + i};
    scalar_kernels().combine3(w1 + i, w2 + i, w3 + i, tx, ty, n - i, ox + i, oy + i);
  }
}

double conic_sumsq(const double* x, const double* y, std::size_t n, const double c[6]) {
  const __m256d A = _mm256_set1_pd(c[0]), B = _mm256_set1_pd(c[1]), C = _mm256_set1_pd(c[2]);
  const __m256d D = _mm256_set1_pd(c[3]), E = _mm256_set1_pd(c[4]), F = _mm256_set1_pd(c[5]);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d xv = _mm256_loadu_pd(x + i), yv = _mm256_loadu_pd(y + i);
    __m256d q = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(_mm256_mul_pd(A, xv), xv), _mm256_mul_pd(_mm256_mul_pd(B, xv), yv)),
        _mm256_mul_pd(_mm256_mul_pd(C, yv), yv));
    __m256d l = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(D, xv), _mm256_mul_pd(E, yv)), F);
    __m256d r = _mm256_add_pd(q, l);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(r, r));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  for (; i < n; ++i) {
    double xi = x[i], yi = y[i];
    double r = ((c[0] * xi * xi + c[1] * xi * yi) + c[2] * yi * yi) + ((c[3] * xi + c[4] * yi) + c[5]);
    lanes[i & 3] += r * r;
  }
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

void speeds(const double* x, const double* y, std::size_t n, double inv_dt, double* out) {
  if (n < 2) {
    scalar_kernels().speeds(x, y, n, inv_dt, out);
    return;
  }
  const __m256d k = _mm256_set1_pd(inv_dt);
  std::size_t i = 0;
  for (; i + 5 <= n; i += 4) {
    __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i + 1), _mm256_loadu_pd(x + i));
    __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i + 1), _mm256_loadu_pd(y + i));
    __m256d d = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(d, k));
  }
  for (; i < n; ++i) {
    std::size_t j = (i + 1 == n) ? 0 : i + 1;
    double dx = x[j] - x[i], dy = y[j] - y[i];
    out[i] = std::sqrt(dx * dx + dy * dy) * inv_dt;
  }
}

__m256d powi4(__m256d x, int e) {
  unsigned m = e < 0 ? static_cast<unsigned>(-e) : static_cast<unsigned>(e);
  __m256d r = _mm256_set1_pd(1.0), base = x;
  while (m) {
    if (m & 1u) r = _mm256_mul_pd(r, base);
    m >>= 1;
    if (m) base = _mm256_mul_pd(base, base);
  }
  return e < 0 ? _mm256_div_pd(_mm256_set1_pd(1.0), r) : r;
}

void run_program(const Program& prog, const double* a, const double* b, const double* c,
                 std::size_t n, double* out) {
  __m256d st[kMaxStack];
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    int sp = 0;
    for (const Instr& ins : prog.code) {
      switch (ins.op) {
        case Op::var_a: st[sp++] = _mm256_loadu_pd(a + i); break;
        case Op::var_b: st[sp++] = _mm256_loadu_pd(b + i); break;
        case Op::var_c: st[sp++] = _mm256_loadu_pd(c + i); break;
        case Op::constant: st[sp++] = _mm256_set1_pd(ins.value); break;
        case Op::add: --sp; st[sp - 1] = _mm256_add_pd(st[sp - 1], st[sp]); break;
        case Op::sub: --sp; st[sp - 1] = _mm256_sub_pd(st[sp - 1], st[sp]); break;
        case Op::mul: --sp; st[sp - 1] = _mm256_mul_pd(st[sp - 1], st[sp]); break;
        case Op::div: --sp; st[sp - 1] = _mm256_div_pd(st[sp - 1], st[sp]); break;
        case Op::neg: st[sp - 1] = _mm256_xor_pd(st[sp - 1], _mm256_set1_pd(-0.0)); break;
        case Op::sqrt: st[sp - 1] = _mm256_sqrt_pd(st[sp - 1]); break;
        case Op::powi: st[sp - 1] = powi4(st[sp - 1], ins.ival); break;
        case Op::pow: {
          alignas(32) double lane[4];
          _mm256_store_pd(lane, st[sp - 1]);
          for (double& v : lane) v = std::pow(v, ins.value);
          st[sp - 1] = _mm256_load_pd(lane);
          break;
        }
      }
    }
    _mm256_storeu_pd(out + i, st[0]);
  }
  if (i < n) scalar_kernels().run_program(prog, a + i, b + i, c + i, n - i, out + i);
}

}  // namespace

const Kernels& avx2_table() {
  static const Kernels k{Isa::avx2, sample_uvw, combine3, conic_sumsq, speeds, run_program};
  return k;
}

}  // namespace poncelet::kernels
