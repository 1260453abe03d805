#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>

#include "poncelet/error.hpp"

namespace poncelet {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

struct Tolerances {
  double circle_tol = 1e-6;  // relative semi-axis agreement
  double degen_tol = 1e-7;   // absolute, on data scaled to unit RMS radius
  double fit_tol = 1e-9;     // RMS algebraic residual on scaled data
};

enum class ConicKind { ellipse, circle, segment, point, other };

const char* to_string(ConicKind k);
ConicKind conic_kind_from_string(const std::string& s);
inline bool is_conic(ConicKind k) { return k != ConicKind::other; }

// Ax^2 + Bxy + Cy^2 + Dx + Ey + F = 0 with unit-norm coefficients.
struct ConicFit {
  std::array<double, 6> coeffs{};
  ConicKind kind = ConicKind::other;
  cplx center{};
  double semi_major = 0;
  double semi_minor = 0;
  double angle = 0;  // of the major axis, in (-pi/2, pi/2]
  double residual_rms = 0;
  std::string diagnostics;
};

struct UVW {
  cplx u, v, w;
};

struct Triangle {
  std::array<cplx, 3> v;
};

double delta(double a, double b);

// Roots of c3 z^3 + c2 z^2 + c1 z + c0, with multiplicity.
std::array<cplx, 3> solve_cubic(cplx c3, cplx c2, cplx c1, cplx c0);

ConicFit fit_conic(std::span<const cplx> points, const Tolerances& tol = {});

ConicKind classify_conic(const ConicFit& fit, double circle_tol, double degen_tol,
                         double fit_tol = Tolerances{}.fit_tol);

// Unit-norm coefficients of the ellipse with the given center, semi-axes and major-axis angle.
std::array<double, 6> conic_from_shape(cplx center, double semi_major, double semi_minor,
                                       double angle);

// Center, axes and angle recovered from conic coefficients. kind is ellipse/circle when the
// quadratic form is definite with real axes, other otherwise; residual is left untouched.
ConicFit shape_from_coeffs(const std::array<double, 6>& coeffs, const Tolerances& tol = {});

// Image of the conic under (x, y) -> (sx x, sy y).
ConicFit scale_conic(const ConicFit& fit, double sx, double sy, const Tolerances& tol = {});

ConicFit ellipse_from_uvw(const UVW& p, const Tolerances& tol = {});

// Signed number of turns of the closed polygon around origin.
int winding_number(std::span<const cplx> closed_path, cplx origin);

int winding_sign_from_uvw(const UVW& p);

double normalize_angle(double angle);

}  // namespace poncelet
