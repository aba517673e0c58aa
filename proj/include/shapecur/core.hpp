#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace shapecur {

using Vec2 = Eigen::Vector2d;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Axis-aligned rectangle [x0,x1] x [y0,y1].
struct Rect {
  double x0 = -1.0;
  double x1 = 1.0;
  double y0 = -1.0;
  double y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool contains(const Vec2& p) const {
    return p.x() >= x0 && p.x() <= x1 && p.y() >= y0 && p.y() <= y1;
  }
  bool operator==(const Rect&) const = default;
};

// Error hierarchy. The CLI maps each family to an exit code.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidCurve : public Error {
 public:
  using Error::Error;
};

class OutOfDomain : public Error {
 public:
  OutOfDomain(std::size_t index, const Vec2& p);
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class AssemblyFailure : public NumericError {
 public:
  using NumericError::NumericError;
};

class NotInGeneralPosition : public NumericError {
 public:
  using NumericError::NumericError;
};

class InconsistentJumps : public NumericError {
 public:
  using NumericError::NumericError;
};

class InconsistentMoments : public NumericError {
 public:
  using NumericError::NumericError;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public IoError {
 public:
  ParseError(const std::string& what, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace shapecur
