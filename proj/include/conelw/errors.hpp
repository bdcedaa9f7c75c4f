#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace conelw {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed DSL source. `offset` is a byte offset into the source string.
class ParseError : public Error {
 public:
  enum class Kind { Syntax, UnknownIdentifier, WrongArity, BadVariable };

  ParseError(Kind kind, std::size_t offset, std::string message,
             std::vector<std::string> expected = {});

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Kind kind_;
  std::size_t offset_;
  std::string detail_;
  std::vector<std::string> expected_;
};

/// Evaluation left the domain of an operation (log of a non-positive value,
/// division by zero, ...). `subexpression` is the pretty-printed culprit.
class EvalError : public Error {
 public:
  EvalError(const std::string& what, std::string subexpression)
      : Error(what + " in `" + subexpression + "`"),
        subexpression_(std::move(subexpression)) {}
  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double at)
      : Error(what), at_(at) {}
  double at() const noexcept { return at_; }

 private:
  double at_;
};

/// Problem-instance data that violates a standing hypothesis (negative p,
/// schema problems, bad expressions). `path` locates the offending field.
class InstanceError : public Error {
 public:
  InstanceError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// lambda is too small for the Green's kernel or for the derived constants
/// M, N to be positive.
class InadmissibleLambda : public Error {
 public:
  InadmissibleLambda(const std::string& what, double lambda, double exp_p1)
      : Error(what), lambda(lambda), exp_p1(exp_p1) {}

  double lambda;
  double exp_p1;
  std::optional<double> M;
  std::optional<double> N;
  std::optional<double> lambda_margin;
};

/// IVP solution left its safety box or became non-finite.
class IvpBlowup : public Error {
 public:
  IvpBlowup(const std::string& what, double t, double y)
      : Error(what), t(t), y(y) {}
  double t;
  double y;
};

/// Fixed-point iterate escaped its admissible range.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, int iteration)
      : Error(what), iteration(iteration) {}
  int iteration;
};

class NotInCone : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace conelw
