#pragma once
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>

namespace bour {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {
  using Error::Error;
};
struct ConvergenceError : Error {
  using Error::Error;
};
struct StiffnessError : Error {
  using Error::Error;
};
struct DegenerateFrameError : Error {
  using Error::Error;
};
struct BranchDomainError : Error {
  using Error::Error;
};
struct ConstraintError : Error {
  using Error::Error;
};
struct InvalidArgument : Error {
  using Error::Error;
};

struct ParseError : Error {
  std::size_t offset;
  std::set<std::string> expected;

  ParseError(std::size_t off, std::set<std::string> exp)
      : Error(describe(off, exp)), offset(off), expected(std::move(exp)) {}

 private:
  static std::string describe(std::size_t off, const std::set<std::string>& exp) {
    std::string s = "parse error at offset " + std::to_string(off) + ", expected one of:";
    for (const auto& e : exp) s += " " + e;
    return s;
  }
};

}  // namespace bour
