#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace ttpos {

// Exact multiple of 1/4. Every index in the model lives on this lattice.
struct Quarter {
  std::int64_t q = 0;

  static constexpr Quarter whole(std::int64_t n) { return Quarter{4 * n}; }

  constexpr Quarter operator+(Quarter o) const { return Quarter{q + o.q}; }
  constexpr Quarter operator-(Quarter o) const { return Quarter{q - o.q}; }
  constexpr Quarter operator-() const { return Quarter{-q}; }
  constexpr Quarter& operator+=(Quarter o) {
    q += o.q;
    return *this;
  }
  constexpr auto operator<=>(const Quarter&) const = default;

  std::string str() const {
    if (q % 4 == 0) return std::to_string(q / 4);
    std::int64_t n = q, d = 4;
    if (n % 2 == 0) {
      n /= 2;
      d = 2;
    }
    return std::to_string(n) + "/" + std::to_string(d);
  }
};

inline std::ostream& operator<<(std::ostream& os, Quarter v) { return os << v.str(); }

// chi - outward/4 + inward/4
constexpr Quarter index(std::int64_t euler_char, std::int64_t outward_corners,
                        std::int64_t inward_corners) {
  return Quarter{4 * euler_char - outward_corners + inward_corners};
}

}  // namespace ttpos
