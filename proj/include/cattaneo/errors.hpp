#pragma once

#include <stdexcept>
#include <string>

namespace cattaneo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Parameters/SpectrumModel/grid invariant was violated. The message names it.
class InvalidParameters : public Error {
 public:
  using Error::Error;
};

// Branch formulas exist only for sigma = 2, tau = 1, m in {0, 1}.
class UnsupportedNormalization : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  SingularMatrix(const std::string& what, double condition_estimate)
      : Error(what), condition_estimate_(condition_estimate) {}
  [[nodiscard]] double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

class QuarticSolveError : public Error {
 public:
  QuarticSolveError(const std::string& what, double mu, double residual)
      : Error(what), mu_(mu), residual_(residual) {}
  [[nodiscard]] double mu() const { return mu_; }
  [[nodiscard]] double residual() const { return residual_; }

 private:
  double mu_;
  double residual_;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

// A power-law fit whose r² falls below the acceptance floor.
class FitRefused : public Error {
 public:
  FitRefused(const std::string& what, double slope, double r_squared)
      : Error(what), slope_(slope), r_squared_(r_squared) {}
  [[nodiscard]] double slope() const { return slope_; }
  [[nodiscard]] double r_squared() const { return r_squared_; }

 private:
  double slope_;
  double r_squared_;
};

}  // namespace cattaneo
