#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "poncelet/expr.hpp"
#include "poncelet/geometry.hpp"

namespace poncelet {

struct CenterSpec {
  int k = 0;
  std::string source;  // weight expression as written in the table
  expr::NodePtr weight;
  kernels::Program program;
  bool squared_rational = false;
};

class CenterTable {
 public:
  // Parses "k; expression; true|false" records; '#' starts a comment line. Throws parse errors
  // and consistency errors when a stored flag disagrees with the structural check.
  static CenterTable parse(std::string_view text, const std::string& origin = "<table>");
  static CenterTable load(const std::string& path);
  // Table compiled into the binary.
  static const CenterTable& builtin();

  bool contains(int k) const { return specs_.count(k) != 0; }
  const CenterSpec& at(int k) const;
  std::vector<int> indices() const;
  std::size_t size() const { return specs_.size(); }

 private:
  std::map<int, CenterSpec> specs_;
};

// Lengths opposite vertices 1, 2, 3.
std::array<double, 3> side_lengths(const Triangle& t);

cplx center_point(const Triangle& t, int k, const CenterTable& table = CenterTable::builtin());

// Batch evaluation. Entries whose weights are singular (0/0 at isosceles shapes, or a near-zero
// weight sum relative to the weights) are flagged in singular and left as NaN.
void center_points(std::span<const Triangle> tris, int k, std::span<cplx> out,
                   std::vector<unsigned char>* singular = nullptr,
                   const CenterTable& table = CenterTable::builtin());

struct Radii {
  double r = 0, R = 0, rho = 0;
};
Radii inradius_circumradius(const Triangle& t);

// Table of X_k = alpha X1 + beta X2 + gamma X3 with coefficients in rho = r/R.
std::vector<int> combo_rows();
bool has_combo_row(int k);
std::array<double, 3> combo_coefficients(int k, double rho);

// X1 = alpha X2 + beta X3 + gamma X9.
std::array<double, 3> x9_identity_coefficients(double rho);
// The X9 row of the combo table obtained by inverting the identity above.
std::array<double, 3> x9_row_from_identity(double rho);

// |X_k - (alpha X1 + beta X2 + gamma X3)| / R.
double combo_residual(const Triangle& t, int k, const CenterTable& table = CenterTable::builtin());
double x9_identity_residual(const Triangle& t, const CenterTable& table = CenterTable::builtin());

struct FixedCombo {
  int k;
  std::optional<std::array<double, 2>> coeffs;  // X_k = alpha X2 + beta X3
};
const std::vector<FixedCombo>& x2x3_fixed_combos();
std::optional<std::array<double, 2>> fixed_combo(int k);

Triangle excentral_triangle(const Triangle& t);

}  // namespace poncelet
