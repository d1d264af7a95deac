#include "polariscope/half_int.hpp"

#include <charconv>

namespace polariscope {

HalfInt HalfInt::parse(const std::string& text) {
  auto bad = [&] {
    throw std::invalid_argument("not a half-integer: '" + text + "'");
  };
  std::string s = text;
  // trim
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) bad();
  s = s.substr(b, e - b + 1);

  int num = 0, den = 1;
  auto slash = s.find('/');
  std::string num_s = slash == std::string::npos ? s : s.substr(0, slash);
  auto [p1, ec1] = std::from_chars(num_s.data(), num_s.data() + num_s.size(), num);
  if (ec1 != std::errc{} || p1 != num_s.data() + num_s.size()) bad();
  if (slash != std::string::npos) {
    std::string den_s = s.substr(slash + 1);
    auto [p2, ec2] = std::from_chars(den_s.data(), den_s.data() + den_s.size(), den);
    if (ec2 != std::errc{} || p2 != den_s.data() + den_s.size() || den != 2) bad();
  }
  return den == 2 ? HalfInt::from_twice(num) : HalfInt::integer(num);
}

std::string HalfInt::str() const {
  if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

}  // namespace polariscope
