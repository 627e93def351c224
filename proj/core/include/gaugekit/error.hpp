#pragma once

#include <stdexcept>
#include <string>

namespace gaugekit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter violates an operation's precondition. `key()` names it.
class InvalidArgument : public Error {
 public:
  InvalidArgument(std::string key, const std::string& message)
      : Error(key + ": " + message), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class DimensionCapExceeded : public Error {
 public:
  DimensionCapExceeded(std::size_t dim, std::size_t cap)
      : Error("Hilbert-space dimension " + std::to_string(dim) +
              " exceeds the configured cap " + std::to_string(cap)),
        dim_(dim),
        cap_(cap) {}

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t dim_;
  std::size_t cap_;
};

/// Bound states leak into the Dirichlet wall; retry with a wider grid.
class GridTooSmall : public Error {
 public:
  GridTooSmall(double boundary_ratio, double suggested_extent)
      : Error("wavefunction amplitude near the grid boundary is " +
              std::to_string(boundary_ratio) +
              " of its maximum (limit 1e-6); suggested half-extent >= " +
              std::to_string(suggested_extent)),
        ratio_(boundary_ratio),
        suggested_(suggested_extent) {}

  double boundary_ratio() const noexcept { return ratio_; }
  double suggested_extent() const noexcept { return suggested_; }

 private:
  double ratio_;
  double suggested_;
};

class EigenDecompositionError : public Error {
 public:
  using Error::Error;
};

}  // namespace gaugekit
