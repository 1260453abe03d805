#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "poncelet/families.hpp"

namespace poncelet {

struct LocusTrace {
  int k = 0;  // 0 for a combination of centers
  ConcentricPair pair;
  std::vector<cplx> lambdas;
  std::vector<cplx> points;
  int repaired = 0;  // samples rebuilt from lambda-neighbours after a singular evaluation
};

// lambda_j = exp(2 pi i j / n) for j < cycles*n.
LocusTrace trace_locus(const ConcentricPair& pair, int k, int n = 720, int cycles = 1,
                       const CenterTable& table = CenterTable::builtin());

// Locus of sum_i c_i X_{k_i} (coefficients not renormalized).
LocusTrace trace_combination(const ConcentricPair& pair, const std::vector<std::pair<int, double>>& terms,
                             int n = 720, int cycles = 1, const CenterTable& table = CenterTable::builtin());

// Which semi-axes enter p = (a + b)/2, q = (a - b)/2.
enum class PQReading { outer, caustic };
const char* to_string(PQReading r);

// Locus of alpha X2 + beta X3 as u lambda + v / lambda + w. With the outer reading the result
// is in the pair's own frame.
UVW uvw_from_combo(const NormalizedPair& np, cplx alpha, cplx beta, PQReading reading = PQReading::outer);

// Ellipse of alpha X2 + beta X3 + gamma X_fixed where X_fixed is stationary at fixed_point.
ConicFit predict_locus(const ConcentricPair& pair, double alpha, double beta, double gamma,
                       cplx fixed_point, const Tolerances& tol = {});

// Expresses X_k as alpha X2 + beta X3 + gamma X_s with X_s the family's stationary center. Tries
// the fixed X2/X3 combinations, then the combo table, then a least-squares fit over a few family
// members; table rows and fits are kept only if they reproduce X_k on those members.
struct ComboExpansion {
  double alpha = 0, beta = 0, gamma = 0;
  int stationary = 0;
  std::string source;  // "fixed", "table", "fitted"
};
std::optional<ComboExpansion> expand_combo(const ConcentricPair& pair, int k,
                                           const CenterTable& table = CenterTable::builtin());

// Stationary center of a named family (0 for custom pairs).
int stationary_center(Family f);

struct LocusVerdict {
  ConicKind kind = ConicKind::other;
  ConicFit fit;
  std::optional<ConicFit> predicted;
  std::optional<UVW> uvw;
  double max_prediction_gap = 0;  // pointwise, relative to the outer semi-major axis
  double center_gap = 0;          // fitted vs predicted center, absolute
  double axis_gap = 0;            // fitted vs predicted axes, relative
  double normalized_gap = 0;      // same comparison after mapping both to the unit-circle frame
  int winding = 0;                // over one lambda cycle; 0 when undefined
  double min_speed = 0;
  int repaired = 0;
};

LocusVerdict classify_locus(const ConcentricPair& pair, int k, int n = 720, const Tolerances& tol = {},
                            const CenterTable& table = CenterTable::builtin());

// Same for alpha X2 + beta X3 (+ gamma X_stationary, which sits at the common center).
LocusVerdict classify_combo(const ConcentricPair& pair, double alpha, double beta, int n = 720,
                            const Tolerances& tol = {}, const CenterTable& table = CenterTable::builtin());

// alpha/beta ratios of alpha X2 + beta X3 with a segment locus over the confocal family.
std::pair<double, double> degenerate_ratios(double a, double b);
std::pair<double, double> degenerate_ratios_rho(double rho);

struct CircularRatios {
  double printed_plus = 0, printed_minus = 0;
  std::vector<double> numeric;  // ratios found by the scan, ascending
  double printed_sum = 0;
  double numeric_sum = NAN;     // when exactly two ratios were found
};
// Printed values plus a numeric scan of alpha/beta in [-5, 5] for circular loci.
CircularRatios circular_ratios(double a, double b, int grid = 2001, int n = 720,
                               const CenterTable& table = CenterTable::builtin());

struct Monotonicity {
  double min_speed = 0;     // numeric minimum of |dX/dt|, t = arg lambda
  double analytic_min = 0;  // (|u| - |v|)^2, the bound on |dX/dt|^2
  bool monotone = false;
};
Monotonicity monotonicity_report(const LocusTrace& trace, const UVW& uvw);

// Turns of the locus about its fitted center over three lambda cycles.
int winding_of_locus(const ConcentricPair& pair, int k, int n = 720,
                     const CenterTable& table = CenterTable::builtin());
int winding_of_trace(const LocusTrace& trace, cplx center);

}  // namespace poncelet
