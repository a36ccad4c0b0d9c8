#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tuttepath {

/// Exact value k/3. All bridge-count budgets are kept in thirds so that the
/// bound comparison is an integer comparison.
struct Third {
  std::int64_t num = 0;

  constexpr Third() = default;
  constexpr explicit Third(std::int64_t numerator) : num(numerator) {}

  static constexpr Third whole(std::int64_t k) { return Third{3 * k}; }
  static constexpr Third of(std::int64_t k) { return Third{k}; }

  constexpr Third operator+(Third o) const { return Third{num + o.num}; }
  constexpr Third operator-(Third o) const { return Third{num - o.num}; }
  constexpr Third operator-() const { return Third{-num}; }
  constexpr Third& operator+=(Third o) {
    num += o.num;
    return *this;
  }
  constexpr Third& operator-=(Third o) {
    num -= o.num;
    return *this;
  }
  constexpr auto operator<=>(const Third&) const = default;

  /// Smallest integer >= value.
  constexpr std::int64_t ceil() const {
    return num >= 0 ? (num + 2) / 3 : -((-num) / 3);
  }
  /// Largest integer <= value.
  constexpr std::int64_t floor() const {
    return num >= 0 ? num / 3 : -((-num + 2) / 3);
  }

  std::string str() const {
    if (num % 3 == 0) return std::to_string(num / 3);
    return std::to_string(num) + "/3";
  }
};

inline std::ostream& operator<<(std::ostream& os, Third t) { return os << t.str(); }

/// (n - 6)/3, the size-dependent part of the path bound.
constexpr Third size_term(std::int64_t n) { return Third{n - 6}; }

/// Compares an integer count against a thirds budget.
constexpr bool within(std::int64_t count, Third budget) { return Third::whole(count) <= budget; }

}  // namespace tuttepath
