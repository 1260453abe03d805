#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "poncelet/centers.hpp"
#include "poncelet/geometry.hpp"

namespace poncelet {

enum class Family { confocal, incircle, circumcircle, homothetic, excentral, dual, custom };

const char* to_string(Family f);
Family family_from_string(const std::string& s);
const std::vector<Family>& named_families();

// Outer ellipse x^2/a^2 + y^2/b^2 = 1 with a concentric, axis-parallel caustic (a_c, b_c).
struct ConcentricPair {
  double a = 0, b = 0;
  double a_c = 0, b_c = 0;
  Family family = Family::custom;
};

// The pair after (x, y) -> (x/a, y/b): outer unit circle, caustic with semi-axes (ap, bp) and
// foci f = -g.
struct NormalizedPair {
  cplx f, g;
  double ap = 0, bp = 0;
  double p = 0, q = 0;              // (ap + bp)/2, (ap - bp)/2
  double p_outer = 0, q_outer = 0;  // (a + b)/2, (a - b)/2
};

struct TriangleSample {
  Triangle tri;
  cplx lambda;
};

std::pair<double, double> confocal_caustic(double a, double b);

// a_c/a + b_c/b - 1: zero iff the pair carries 3-periodics.
double closure_residual(const ConcentricPair& pair);
// a/a_c + b/b_c - 1, the condition as it is sometimes printed.
double printed_closure_residual(const ConcentricPair& pair);

// circum_ac sets the caustic of the circumcircle family (default 0.6 a).
ConcentricPair family_pair(Family family, double a, double b,
                           std::optional<double> circum_ac = std::nullopt,
                           const CenterTable& table = CenterTable::builtin());

NormalizedPair normalize(const ConcentricPair& pair);

// Roots of z (z - f)(z - g) = lambda (1 - conj(f) z)(1 - conj(g) z).
std::array<cplx, 3> blaschke_triangle(const NormalizedPair& np, cplx lambda);

// Vertices sorted by argument.
TriangleSample triangle_at(const ConcentricPair& pair, cplx lambda);

// Samples at lambda_j = exp(2 pi i (j + offset)/n) for j < cycles*n. Vertices are sorted by
// argument at the first sample and then follow nearest continuation.
std::vector<TriangleSample> family_triangles(const ConcentricPair& pair, int n, int cycles = 1,
                                             double offset = 0);

// Distance-to-tangency of the line through p1, p2 against the caustic, measured in the frame
// where the caustic is the unit circle.
double tangency_residual(cplx p1, cplx p2, double a_c, double b_c);

struct TangentConstruction {
  TriangleSample sample;
  double closure = 0;  // tangency residual of the third side
};

// P1 = (a cos t, b sin t); P2, P3 from the two tangents through P1.
TangentConstruction tangent_construction(const ConcentricPair& pair, double vertex_angle);

struct StationaryCaustic {
  double t = 0;
  double a_c = 0, b_c = 0;
  double diameter = 0;
};

// Searches a_c = t a, b_c = (1 - t) b for the caustic that keeps X_k fixed.
StationaryCaustic find_stationary_caustic(double a, double b, int k,
                                          const CenterTable& table = CenterTable::builtin(),
                                          int samples = 64);

// Angular parameter atan2(y/b, x/a) of a point on the outer ellipse.
double ellipse_angle(const ConcentricPair& pair, cplx z);

}  // namespace poncelet
