#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace polariscope {

// Half-integer angular momentum value, stored as 2j so that j in
// {0, 1/2, 1, 3/2, ...} is exact.  Also used for projections m, which
// may be negative.
class HalfInt {
public:
  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int twice) : twice_(twice) {}

  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt integer(int n) { return HalfInt(2 * n); }

  // Parses "4", "-3", "7/2", "-1/2".
  static HalfInt parse(const std::string& text);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return twice_ / 2.0; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  // A projection m is valid for spin j when |2m| <= 2j and both have
  // the same parity.
  constexpr bool valid_projection(HalfInt m) const {
    int am = m.twice_ < 0 ? -m.twice_ : m.twice_;
    return am <= twice_ && ((twice_ - m.twice_) % 2 == 0);
  }

  // Multiplicity 2j+1 of a spin magnitude.
  constexpr int multiplicity() const { return twice_ + 1; }

  friend constexpr bool operator==(HalfInt, HalfInt) = default;
  friend constexpr auto operator<=>(HalfInt a, HalfInt b) {
    return a.twice_ <=> b.twice_;
  }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) {
    return HalfInt(a.twice_ + b.twice_);
  }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) {
    return HalfInt(a.twice_ - b.twice_);
  }
  friend constexpr HalfInt operator-(HalfInt a) { return HalfInt(-a.twice_); }

  std::string str() const;

private:
  int twice_ = 0;
};

// Triangle inequality |a-b| <= c <= a+b with integer perimeter.
constexpr bool triangle_ok(HalfInt a, HalfInt b, HalfInt c) {
  int ta = a.twice(), tb = b.twice(), tc = c.twice();
  if (ta < 0 || tb < 0 || tc < 0) return false;
  if ((ta + tb + tc) % 2 != 0) return false;
  int d = ta - tb;
  if (d < 0) d = -d;
  return d <= tc && tc <= ta + tb;
}

namespace literals {
constexpr HalfInt operator""_hi(unsigned long long n) {
  return HalfInt::integer(static_cast<int>(n));
}
// 2j literal: 7_half is j = 7/2.
constexpr HalfInt operator""_half(unsigned long long n) {
  return HalfInt::from_twice(static_cast<int>(n));
}
}  // namespace literals

}  // namespace polariscope
