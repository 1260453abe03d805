#pragma once

// Weight expressions over sidelengths a, b, c: + - * / ^, unary minus, sqrt(...).

#include <memory>
#include <string>
#include <string_view>

#include "poncelet/kernels.hpp"

namespace poncelet::expr {

enum class Kind { number, var, add, sub, mul, div, neg, pow, sqrt };

struct Node {
  Kind kind = Kind::number;
  double value = 0;  // number literal, or the exponent for pow
  int var = 0;       // 0, 1, 2 for a, b, c
  std::shared_ptr<const Node> lhs, rhs;
};

using NodePtr = std::shared_ptr<const Node>;

// Exponents must be constant subexpressions; they are folded at parse time.
NodePtr parse(std::string_view text);

double eval(const Node& n, double a, double b, double c);

bool depends_on_vars(const Node& n);

kernels::Program compile(const Node& n);

// True when the weight, as a function of (a, b, c), is even in every variable or odd in every
// variable, i.e. a rational function of a^2, b^2, c^2 up to a common abc factor. Decided by
// expanding to a quotient of polynomials; any sqrt of a non-constant that is not raised to an
// even power makes the answer false.
bool squared_rational(const Node& n);

std::string to_string(const Node& n);

}  // namespace poncelet::expr
