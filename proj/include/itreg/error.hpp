#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace itreg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class GridMismatch : public Error {
public:
  GridMismatch(std::size_t lhs, std::size_t rhs)
      : Error("grid mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

class SpectrumNotReal : public Error {
public:
  SpectrumNotReal(int mode, double defect)
      : Error("spectrum is not conjugate symmetric at mode " + std::to_string(mode) +
              " (defect " + std::to_string(defect) + ")"),
        mode_(mode) {}
  int mode() const noexcept { return mode_; }

private:
  int mode_;
};

/// Raised when a negative spectral power blows up a coefficient.
class SourceDivisionError : public Error {
public:
  explicit SourceDivisionError(int mode)
      : Error("spectral division overflows at mode " + std::to_string(mode)), mode_(mode) {}
  int mode() const noexcept { return mode_; }

private:
  int mode_;
};

class ProxFailure : public Error {
public:
  explicit ProxFailure(std::size_t sample)
      : Error("entropy prox did not converge at sample " + std::to_string(sample)),
        sample_(sample) {}
  std::size_t sample() const noexcept { return sample_; }

private:
  std::size_t sample_;
};

class NonConvergence : public Error {
public:
  NonConvergence(int iterations, double residual)
      : Error("Douglas-Rachford did not converge in " + std::to_string(iterations) +
              " iterations (residual " + std::to_string(residual) + ")"),
        iterations_(iterations), residual_(residual) {}
  int iterations() const noexcept { return iterations_; }
  double final_residual() const noexcept { return residual_; }

private:
  int iterations_;
  double residual_;
};

/// The penalty has no (finite) subgradient at the requested base point.
class SubgradientUndefined : public Error {
public:
  using Error::Error;
};

class Unsupported : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class InsufficientData : public Error {
public:
  using Error::Error;
};

/// A worst-case noise candidate failed; the original error is nested.
class CandidateFailure : public Error {
public:
  CandidateFailure(int k, const std::string& what)
      : Error("worst-case candidate k = " + std::to_string(k) + " failed: " + what), k_(k) {}
  int candidate() const noexcept { return k_; }

private:
  int k_;
};

class NonPositiveError : public Error {
public:
  using Error::Error;
};

}  // namespace itreg
