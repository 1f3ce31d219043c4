#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nssga {

/// Unscrambled Sobol low-discrepancy sequence (Joe-Kuo direction numbers,
/// Gray-code ordering). The first point is the origin.
class SobolSequence {
 public:
  static constexpr std::size_t max_dimensions = 10;
  static constexpr int bits = 32;

  /// Throws ConfigError if dimensions is 0 or exceeds max_dimensions.
  explicit SobolSequence(std::size_t dimensions);

  std::size_t dimensions() const noexcept { return dims_; }

  /// Index of the point the next call to next() returns.
  std::uint64_t index() const noexcept { return index_; }

  /// Returns the next point in [0, 1)^d. The span is valid until the next call.
  std::span<const double> next();

  void skip(std::uint64_t count);

 private:
  std::size_t dims_;
  std::uint64_t index_ = 0;
  std::vector<std::uint32_t> directions_;  // dims_ x bits
  std::vector<std::uint32_t> state_;
  std::vector<double> point_;
};

}  // namespace nssga
