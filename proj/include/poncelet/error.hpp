#pragma once

#include <stdexcept>
#include <string>

namespace poncelet {

enum class Errc {
  domain,
  degree,
  arity,
  proximity,
  geometry,
  missing_center,
  evaluation,
  pole,
  missing_row,
  missing_formula,
  no_solution,
  consistency,
  parse,
  usage,
  io,
};

const char* to_string(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace poncelet
