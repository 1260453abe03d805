#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "poncelet/locus.hpp"

namespace poncelet {

// Key for the locus of the three excenters in the confocal table.
inline constexpr int kExcenters = -1;

enum class ShapeNote {
  similar_billiard,
  similar_caustic,
  similar_rotated_billiard,
  similar_rotated_caustic,
  identical_billiard,
  identical_caustic,
  circle,
  plain,
};
const char* to_string(ShapeNote s);

using AxisFn = std::function<std::pair<double, double>(double a, double b)>;

struct AxisFormula {
  int k = 0;
  Family family = Family::confocal;
  ShapeNote note = ShapeNote::plain;
  bool radius = false;  // both entries carry the circle radius
  AxisFn eval;          // as printed
  AxisFn corrected;     // set when the printed form fails against traced loci
  std::string erratum;  // what the correction changes
};

const std::vector<AxisFormula>& confocal_formulas();
const std::vector<AxisFormula>& homothetic_formulas();
const AxisFormula& axis_formula(Family family, int k);

std::pair<double, double> confocal_axes(int k, double a, double b);
std::pair<double, double> homothetic_axes(int k, double a, double b);

struct FormulaCheck {
  int k = 0;
  Family family = Family::confocal;
  double a_over_b = 0;
  std::pair<double, double> formula{};  // printed values, signs kept
  double fitted_major = 0, fitted_minor = 0, fitted_angle = 0;
  double rel_error = 0;                 // printed form vs fit
  double corrected_error = -1;          // corrected form vs fit, when one exists
  bool skipped = false;                 // formula has a pole at this aspect ratio
  bool pass = false;
  std::string note;
};

// Compares the printed semi-axes with the fitted locus (unordered, absolute values).
FormulaCheck check_formula(Family family, int k, double a_over_b, int n = 1440, double tol = 1e-6,
                           const CenterTable& table = CenterTable::builtin());

// Fitted locus of the union of the three excenters.
ConicFit excenter_locus(const ConcentricPair& pair, int n = 720);

struct SpecialRatio {
  int k = 0;
  std::string description;
  double closed_form = 0;  // the printed aspect ratio
  double root = 0;         // found by bisection
  double residual = 0;     // of the stated equality at closed_form
  double tolerance = 0;
  bool pass = false;
};
std::vector<SpecialRatio> special_ratios();

struct ShapeRelation {
  std::string name;
  double value = 0, expected = 0;
  bool pass = false;
};
std::vector<ShapeRelation> shape_relations(double a, double b);

}  // namespace poncelet
