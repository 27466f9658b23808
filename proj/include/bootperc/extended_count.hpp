#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>

#include "bootperc/errors.hpp"

namespace bootperc {

// A non-negative count or the distinguished value "infinite" (girth of a
// forest, D(G) of a complete graph). Infinite compares above every finite
// value.
class ExtendedCount {
 public:
  constexpr ExtendedCount(std::size_t v) : value_(v) {}  // NOLINT: implicit by design of call sites

  static constexpr ExtendedCount infinite() { return ExtendedCount(); }

  constexpr bool is_infinite() const noexcept { return !value_.has_value(); }
  constexpr bool is_finite() const noexcept { return value_.has_value(); }

  std::size_t value() const {
    if (!value_) throw InvalidArgument("value() of an infinite count");
    return *value_;
  }

  friend constexpr bool operator==(const ExtendedCount&, const ExtendedCount&) = default;

  friend constexpr std::strong_ordering operator<=>(const ExtendedCount& a, const ExtendedCount& b) {
    if (a.is_infinite() || b.is_infinite())
      return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
    return *a.value_ <=> *b.value_;
  }

  std::string to_string() const { return value_ ? std::to_string(*value_) : "inf"; }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedCount& c) { return os << c.to_string(); }

 private:
  constexpr ExtendedCount() = default;
  std::optional<std::size_t> value_;
};

}  // namespace bootperc
