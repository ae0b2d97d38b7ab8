#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bscroll {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: unparsable expressions, out-of-domain generators,
/// invalid frames or configurations. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure during a well-posed computation (exit code 3).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A jet function evaluated outside its domain (log/sqrt of a non-positive
/// value, division by zero, ...). `offset` is the byte offset of the
/// expression node that failed, when the error came from an expression.
class DomainError : public InputError {
 public:
  DomainError(std::string function, double point, std::string detail = {});

  const std::string& function() const { return function_; }
  double point() const { return point_; }
  bool has_offset() const { return offset_ != npos; }
  std::size_t offset() const { return offset_; }

  DomainError with_offset(std::size_t offset) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::string function_;
  double point_;
  std::string detail_;
  std::size_t offset_ = npos;
};

/// h'(s) vanishes; no null frame can be built from h there.
class DegenerateGenerator : public DomainError {
 public:
  DegenerateGenerator(double s, double derivative);
};

class SyntaxError : public InputError {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected,
              const std::string& found);

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownFunction : public InputError {
 public:
  UnknownFunction(std::string name, std::size_t offset);
  const std::string& name() const { return name_; }
  std::size_t offset() const { return offset_; }

 private:
  std::string name_;
  std::size_t offset_;
};

class PoleError : public NumericError {
 public:
  using NumericError::NumericError;
};

class NotLorentz : public InputError {
 public:
  explicit NotLorentz(double residual);
  double residual() const { return residual_; }

 private:
  double residual_;
};

class OrientationError : public InputError {
 public:
  using InputError::InputError;
};

class NormalizationError : public InputError {
 public:
  using InputError::InputError;
};

class InitError : public InputError {
 public:
  using InputError::InputError;
};

class StepUnderflow : public NumericError {
 public:
  using NumericError::NumericError;
};

class MaxStepsExceeded : public NumericError {
 public:
  using NumericError::NumericError;
};

class OutOfRange : public NumericError {
 public:
  using NumericError::NumericError;
};

class UnboundedCurve : public NumericError {
 public:
  using NumericError::NumericError;
};

class ClassifierInconsistency : public NumericError {
 public:
  using NumericError::NumericError;
};

class OrientationBreak : public InputError {
 public:
  using InputError::InputError;
};

class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

class NoSolutionFound : public NumericError {
 public:
  NoSolutionFound(double best_r1, double best_r2);
  double best_r1() const { return best_r1_; }
  double best_r2() const { return best_r2_; }

 private:
  double best_r1_;
  double best_r2_;
};

}  // namespace bscroll
