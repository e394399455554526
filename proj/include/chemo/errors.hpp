#pragma once

#include <stdexcept>
#include <string>

namespace chemo {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model parameter or control value lies outside its admissible range.
class OutOfRange : public Error {
 public:
  OutOfRange(std::string field, const std::string& what)
      : Error("out of range: " + field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Initial data violates the sign or mass requirements.
class InitialDataError : public Error {
 public:
  enum class Kind { NonnegativityViolation, ZeroMass, PositivityViolation, GridMismatch };
  InitialDataError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// The signal field has collapsed below the trust floor (or is non-finite).
class SingularSignal : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  NoConvergence(int iterations, double residual)
      : Error("CG did not converge after " + std::to_string(iterations) +
              " iterations (relative residual " + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace chemo
