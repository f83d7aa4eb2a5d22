#pragma once

#include <cstdint>
#include <limits>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/integer.hpp>

#include "nrsched/rational.hpp"

namespace nrsched::detail {

using Wide = __int128;

/// Rational times expressed as integers over one common denominator.
struct ScaledTimes {
  std::vector<BigInt> value;
  BigInt denominator = 1;
};

inline ScaledTimes scale_to_integers(const std::vector<Rational>& times) {
  ScaledTimes out;
  for (const auto& t : times) {
    BigInt d = denominator_of(t);
    out.denominator = out.denominator / boost::multiprecision::gcd(out.denominator, d) * d;
  }
  out.value.reserve(times.size());
  for (const auto& t : times) out.value.push_back(numerator_of(t) * (out.denominator / denominator_of(t)));
  return out;
}

/// True when every value fits a Wide after multiplication by `factor` with headroom for sums.
inline bool fits_wide(const std::vector<BigInt>& values, const BigInt& factor) {
  static const BigInt limit = BigInt(1) << 120;
  for (const auto& v : values)
    if (v * factor >= limit) return false;
  return true;
}

template <class T>
T narrow(const BigInt& v) {
  if constexpr (std::is_same_v<T, BigInt>) {
    return v;
  } else {
    // Wide: assemble from two 64-bit halves; callers guarantee |v| < 2^120.
    bool negative = v < 0;
    BigInt mag = negative ? BigInt(-v) : v;
    std::uint64_t lo = static_cast<std::uint64_t>(mag & BigInt(std::numeric_limits<std::uint64_t>::max()));
    std::uint64_t hi = static_cast<std::uint64_t>(mag >> 64);
    Wide out = (static_cast<Wide>(hi) << 64) | static_cast<Wide>(lo);
    return negative ? -out : out;
  }
}

template <class T>
BigInt widen(const T& v) {
  if constexpr (std::is_same_v<T, BigInt>) {
    return v;
  } else {
    bool negative = v < 0;
    unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    BigInt out = BigInt(static_cast<std::uint64_t>(mag >> 64));
    out <<= 64;
    out += BigInt(static_cast<std::uint64_t>(mag));
    return negative ? BigInt(-out) : out;
  }
}

}  // namespace nrsched::detail
