#pragma once

#include <compare>
#include <iosfwd>
#include <limits>

namespace epigauss {

/// A value in R ∪ {+∞}. NaN and −∞ are rejected at construction, so the
/// ordering is total and `+∞` absorbs addition.
class ExtReal {
 public:
  constexpr ExtReal() noexcept = default;
  ExtReal(double v);  // NOLINT: implicit by intent, throws on NaN / -inf

  static constexpr ExtReal infinity() noexcept { return ExtReal(Raw{}, std::numeric_limits<double>::infinity()); }

  constexpr bool is_finite() const noexcept { return v_ != std::numeric_limits<double>::infinity(); }
  constexpr bool is_infinite() const noexcept { return !is_finite(); }

  /// Raw double; +∞ maps to IEEE +inf.
  constexpr double value() const noexcept { return v_; }

  friend constexpr auto operator<=>(ExtReal a, ExtReal b) noexcept {
    return a.v_ < b.v_ ? std::strong_ordering::less
         : a.v_ > b.v_ ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
  }
  friend constexpr bool operator==(ExtReal a, ExtReal b) noexcept { return a.v_ == b.v_; }

  friend ExtReal operator+(ExtReal a, ExtReal b) noexcept;
  ExtReal& operator+=(ExtReal o) noexcept { return *this = *this + o; }

 private:
  struct Raw {};
  constexpr ExtReal(Raw, double v) noexcept : v_(v) {}
  double v_ = 0.0;
};

ExtReal min(ExtReal a, ExtReal b) noexcept;
ExtReal max(ExtReal a, ExtReal b) noexcept;

std::ostream& operator<<(std::ostream& os, ExtReal v);

}  // namespace epigauss
