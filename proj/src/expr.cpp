#include "poncelet/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "poncelet/error.hpp"

namespace poncelet::expr {

namespace {

NodePtr make(Kind k, NodePtr l = nullptr, NodePtr r = nullptr, double value = 0, int var = 0) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  n->value = value;
  n->var = var;
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr run() {
    NodePtr n = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::parse, "expression: " + msg + " at column " + std::to_string(pos_ + 1) +
                                 " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr sum() {
    NodePtr n = product();
    for (;;) {
      if (eat('+')) n = make(Kind::add, n, product());
      else if (eat('-')) n = make(Kind::sub, n, product());
      else return n;
    }
  }
  NodePtr product() {
    NodePtr n = unary();
    for (;;) {
      if (eat('*')) n = make(Kind::mul, n, unary());
      else if (eat('/')) n = make(Kind::div, n, unary());
      else return n;
    }
  }
  NodePtr unary() {
    if (eat('-')) return make(Kind::neg, unary());
    if (eat('+')) return unary();
    return power();
  }
  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) {
      std::size_t at = pos_;
      NodePtr e = unary();
      if (depends_on_vars(*e)) {
        pos_ = at;
        fail("exponent must be constant");
      }
      return make(Kind::pow, base, nullptr, eval(*e, 0, 0, 0));
    }
    return base;
  }
  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = sum();
      if (!eat(')')) fail("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t end = pos_;
      while (end < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.'))
        ++end;
      if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
        std::size_t k = end + 1;
        if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
        if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
          end = k;
          while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
        }
      }
      std::string tok(s_.substr(pos_, end - pos_));
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        fail("bad number '" + tok + "'");
      }
      if (used != tok.size()) fail("bad number '" + tok + "'");
      pos_ = end;
      return make(Kind::number, nullptr, nullptr, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) ++end;
      std::string_view id = s_.substr(pos_, end - pos_);
      if (id == "a" || id == "b" || id == "c") {
        pos_ = end;
        return make(Kind::var, nullptr, nullptr, 0, id[0] - 'a');
      }
      if (id == "sqrt") {
        pos_ = end;
        if (!eat('(')) fail("expected '(' after sqrt");
        NodePtr n = sum();
        if (!eat(')')) fail("expected ')'");
        return make(Kind::sqrt, n);
      }
      fail("unknown identifier '" + std::string(id) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

bool is_integer(double x, int& out) {
  if (std::nearbyint(x) != x || std::abs(x) > 1e6) return false;
  out = static_cast<int>(x);
  return true;
}

}  // namespace

NodePtr parse(std::string_view text) { return Parser(text).run(); }

bool depends_on_vars(const Node& n) {
  if (n.kind == Kind::var) return true;
  return (n.lhs && depends_on_vars(*n.lhs)) || (n.rhs && depends_on_vars(*n.rhs));
}

double eval(const Node& n, double a, double b, double c) {
  switch (n.kind) {
    case Kind::number: return n.value;
    case Kind::var: return n.var == 0 ? a : n.var == 1 ? b : c;
    case Kind::add: return eval(*n.lhs, a, b, c) + eval(*n.rhs, a, b, c);
    case Kind::sub: return eval(*n.lhs, a, b, c) - eval(*n.rhs, a, b, c);
    case Kind::mul: return eval(*n.lhs, a, b, c) * eval(*n.rhs, a, b, c);
    case Kind::div: return eval(*n.lhs, a, b, c) / eval(*n.rhs, a, b, c);
    case Kind::neg: return -eval(*n.lhs, a, b, c);
    case Kind::sqrt: return std::sqrt(eval(*n.lhs, a, b, c));
    case Kind::pow: return std::pow(eval(*n.lhs, a, b, c), n.value);
  }
  return NAN;
}

namespace {

int emit(const Node& n, kernels::Program& p, int depth) {
  using kernels::Op;
  if (!depends_on_vars(n)) {
    p.code.push_back({Op::constant, 0, eval(n, 0, 0, 0)});
    return depth + 1;
  }
  auto binary = [&](Op op) {
    int d1 = emit(*n.lhs, p, depth);
    int d2 = emit(*n.rhs, p, depth + 1);
    p.code.push_back({op, 0, 0});
    return std::max(d1, d2);
  };
  switch (n.kind) {
    case Kind::var:
      p.code.push_back({static_cast<Op>(static_cast<int>(Op::var_a) + n.var), 0, 0});
      return depth + 1;
    case Kind::add: return binary(Op::add);
    case Kind::sub: return binary(Op::sub);
    case Kind::mul: return binary(Op::mul);
    case Kind::div: return binary(Op::div);
    case Kind::neg: {
      int d = emit(*n.lhs, p, depth);
      p.code.push_back({Op::neg, 0, 0});
      return d;
    }
    case Kind::sqrt: {
      int d = emit(*n.lhs, p, depth);
      p.code.push_back({Op::sqrt, 0, 0});
      return d;
    }
    case Kind::pow: {
      int d = emit(*n.lhs, p, depth);
      int e = 0;
      if (is_integer(n.value, e)) p.code.push_back({Op::powi, e, 0});
      else p.code.push_back({Op::pow, 0, n.value});
      return d;
    }
    case Kind::number: break;
  }
  return depth + 1;
}

// Sparse polynomial in a, b, c.
using Mono = std::array<int, 3>;
using Poly = std::map<Mono, double>;

struct Rat {
  Poly num, den;
};

Poly pconst(double v) { return Poly{{Mono{0, 0, 0}, v}}; }

Poly padd(const Poly& x, const Poly& y, double sy = 1.0) {
  Poly r = x;
  for (const auto& [m, v] : y) r[m] += sy * v;
  return r;
}

Poly pmul(const Poly& x, const Poly& y) {
  Poly r;
  for (const auto& [m1, v1] : x)
    for (const auto& [m2, v2] : y) r[Mono{m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]}] += v1 * v2;
  return r;
}

Poly ppow(const Poly& x, int e) {
  Poly r = pconst(1.0);
  for (int i = 0; i < e; ++i) r = pmul(r, x);
  return r;
}

Poly flip(const Poly& x, int var) {
  Poly r;
  for (const auto& [m, v] : x) r[m] = (m[var] % 2 ? -v : v);
  return r;
}

double max_coeff(const Poly& x) {
  double m = 0;
  for (const auto& [k, v] : x) m = std::max(m, std::abs(v));
  return m;
}

// Zero up to rounding relative to scale.
bool is_zero(const Poly& x, double scale) {
  for (const auto& [m, v] : x)
    if (std::abs(v) > 1e-12 * scale) return false;
  return true;
}

Poly strip(const Poly& x) {
  Poly r;
  for (const auto& [m, v] : x)
    if (v != 0) r[m] = v;
  return r;
}

std::optional<Rat> expand(const Node& n);

std::optional<Rat> expand_pow(const Node& base, int e) {
  if (base.kind == Kind::sqrt && e % 2 == 0) {
    auto inner = expand(*base.lhs);
    if (!inner) return std::nullopt;
    e /= 2;
    Rat r;
    bool neg = e < 0;
    int m = neg ? -e : e;
    r.num = ppow(inner->num, m);
    r.den = ppow(inner->den, m);
    if (neg) std::swap(r.num, r.den);
    return r;
  }
  auto b = expand(base);
  if (!b) return std::nullopt;
  bool neg = e < 0;
  int m = neg ? -e : e;
  Rat r{strip(ppow(b->num, m)), strip(ppow(b->den, m))};
  if (neg) std::swap(r.num, r.den);
  return r;
}

std::optional<Rat> expand(const Node& n) {
  if (!depends_on_vars(n)) return Rat{pconst(eval(n, 0, 0, 0)), pconst(1.0)};
  switch (n.kind) {
    case Kind::var: {
      Mono m{0, 0, 0};
      m[n.var] = 1;
      return Rat{Poly{{m, 1.0}}, pconst(1.0)};
    }
    case Kind::add:
    case Kind::sub: {
      auto x = expand(*n.lhs), y = expand(*n.rhs);
      if (!x || !y) return std::nullopt;
      double s = n.kind == Kind::add ? 1.0 : -1.0;
      if (x->den == y->den) return Rat{strip(padd(x->num, y->num, s)), x->den};
      return Rat{strip(padd(pmul(x->num, y->den), pmul(y->num, x->den), s)), strip(pmul(x->den, y->den))};
    }
    case Kind::mul: {
      auto x = expand(*n.lhs), y = expand(*n.rhs);
      if (!x || !y) return std::nullopt;
      return Rat{strip(pmul(x->num, y->num)), strip(pmul(x->den, y->den))};
    }
    case Kind::div: {
      auto x = expand(*n.lhs), y = expand(*n.rhs);
      if (!x || !y) return std::nullopt;
      return Rat{strip(pmul(x->num, y->den)), strip(pmul(x->den, y->num))};
    }
    case Kind::neg: {
      auto x = expand(*n.lhs);
      if (!x) return std::nullopt;
      for (auto& [m, v] : x->num) v = -v;
      return x;
    }
    case Kind::pow: {
      int e = 0;
      if (!is_integer(n.value, e)) return std::nullopt;
      return expand_pow(*n.lhs, e);
    }
    case Kind::sqrt:
    case Kind::number: break;
  }
  return std::nullopt;
}

// +1 if even in var, -1 if odd, 0 if neither.
int parity_in(const Rat& r, int var) {
  const Poly lhs = pmul(flip(r.num, var), r.den);
  const Poly rhs = pmul(r.num, flip(r.den, var));
  const double scale = std::max(max_coeff(lhs), max_coeff(rhs));
  if (is_zero(padd(lhs, rhs, -1.0), scale)) return 1;
  if (is_zero(padd(lhs, rhs, 1.0), scale)) return -1;
  return 0;
}

void print(const Node& n, std::ostringstream& os) {
  switch (n.kind) {
    case Kind::number: os << n.value; return;
    case Kind::var: os << static_cast<char>('a' + n.var); return;
    case Kind::neg: os << "(-"; print(*n.lhs, os); os << ")"; return;
    case Kind::sqrt: os << "sqrt("; print(*n.lhs, os); os << ")"; return;
    case Kind::pow: os << "("; print(*n.lhs, os); os << ")^(" << n.value << ")"; return;
    default: break;
  }
  const char* op = n.kind == Kind::add ? " + " : n.kind == Kind::sub ? " - " : n.kind == Kind::mul ? "*" : "/";
  os << "(";
  print(*n.lhs, os);
  os << op;
  print(*n.rhs, os);
  os << ")";
}

}  // namespace

kernels::Program compile(const Node& n) {
  kernels::Program p;
  p.max_depth = emit(n, p, 0);
  if (p.max_depth > kernels::kMaxStack)
    throw Error(Errc::parse, "expression too deep for the evaluator stack");
  return p;
}

bool squared_rational(const Node& n) {
  auto r = expand(n);
  if (!r || max_coeff(r->den) == 0) return false;
  int s[3];
  for (int v = 0; v < 3; ++v) {
    s[v] = parity_in(*r, v);
    if (s[v] == 0) return false;
  }
  return s[0] == s[1] && s[1] == s[2];
}

std::string to_string(const Node& n) {
  std::ostringstream os;
  os.precision(17);
  print(n, os);
  return os.str();
}

}  // namespace poncelet::expr
