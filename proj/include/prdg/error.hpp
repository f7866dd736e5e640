#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prdg {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
  using Error::Error;
};

class GeometryError : public Error {
public:
  using Error::Error;
};

/// Mesh file parse failure; `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// The patch barycenters do not determine a degree-k polynomial.
class UnisolvenceError : public Error {
public:
  UnisolvenceError(std::size_t element, double sigma_min)
      : Error("element " + std::to_string(element) +
              ": weighted design matrix is rank deficient (sigma_min = " +
              std::to_string(sigma_min) + ")"),
        element_(element), sigma_min_(sigma_min) {}
  std::size_t element() const { return element_; }
  double sigma_min() const { return sigma_min_; }

private:
  std::size_t element_;
  double sigma_min_;
};

class SolverError : public Error {
public:
  using Error::Error;
};

}  // namespace prdg
