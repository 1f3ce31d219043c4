#include "nssga/sobol.hpp"

#include <array>
#include <bit>
#include <string>

#include "nssga/errors.hpp"

namespace nssga {

namespace {

struct Primitive {
  unsigned degree;
  unsigned coeffs;
  std::array<std::uint32_t, 5> m;
};

// Joe & Kuo (2008), new-joe-kuo-6.21201, dimensions 2..10. Dimension 1 is the
// van der Corput sequence.
constexpr std::array<Primitive, SobolSequence::max_dimensions - 1> kPrimitives{{
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
}};

}  // namespace

SobolSequence::SobolSequence(std::size_t dimensions)
    : dims_(dimensions),
      directions_(dimensions * bits),
      state_(dimensions, 0),
      point_(dimensions, 0.0) {
  if (dimensions == 0 || dimensions > max_dimensions) {
    throw ConfigError("Sobol sequence supports 1.." + std::to_string(max_dimensions) +
                      " dimensions, got " + std::to_string(dimensions));
  }
  for (int i = 0; i < bits; ++i) {
    directions_[i] = std::uint32_t{1} << (bits - 1 - i);
  }
  for (std::size_t d = 1; d < dims_; ++d) {
    const Primitive& p = kPrimitives[d - 1];
    std::uint32_t* v = directions_.data() + d * bits;
    const unsigned s = p.degree;
    for (unsigned i = 0; i < s; ++i) {
      v[i] = p.m[i] << (bits - 1 - i);
    }
    for (unsigned i = s; i < static_cast<unsigned>(bits); ++i) {
      v[i] = v[i - s] ^ (v[i - s] >> s);
      for (unsigned k = 1; k < s; ++k) {
        if ((p.coeffs >> (s - 1 - k)) & 1U) {
          v[i] ^= v[i - k];
        }
      }
    }
  }
}

std::span<const double> SobolSequence::next() {
  if (index_ > 0) {
    // Gray-code update: flip the direction number at the lowest zero bit of index-1.
    const auto c = static_cast<std::size_t>(std::countr_one(index_ - 1));
    if (c >= static_cast<std::size_t>(bits)) {
      throw ConfigError("Sobol sequence exhausted");
    }
    for (std::size_t d = 0; d < dims_; ++d) {
      state_[d] ^= directions_[d * bits + c];
    }
  }
  constexpr double scale = 1.0 / 4294967296.0;
  for (std::size_t d = 0; d < dims_; ++d) {
    point_[d] = static_cast<double>(state_[d]) * scale;
  }
  ++index_;
  return point_;
}

void SobolSequence::skip(std::uint64_t count) {
  for (std::uint64_t i = 0; i < count; ++i) next();
}

}  // namespace nssga
