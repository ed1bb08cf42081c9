#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dgt {

/// Exact non-negative rational, stored in lowest terms with a positive
/// denominator.  All threshold comparisons in the library go through
/// cross-multiplied integer arithmetic; no floating point is ever involved.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}

  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ <= 0) throw std::invalid_argument("Rational: denominator must be positive");
    if (num_ < 0) throw std::invalid_argument("Rational: numerator must be non-negative");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  /// Parses "NUM/DEN" (or a bare integer).  Decimals are rejected: the
  /// whole point of this class is that 2/11 stays 2/11.
  static Rational parse(const std::string& text) {
    auto integer = [&](const std::string& part) {
      std::size_t used = 0;
      std::int64_t v;
      try {
        v = std::stoll(part, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("Rational: cannot parse '" + text + "'");
      }
      if (used != part.size())
        throw std::invalid_argument("Rational: cannot parse '" + text + "' (write NUM/DEN)");
      return v;
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(integer(text), 1);
    return Rational(integer(text.substr(0, slash)), integer(text.substr(slash + 1)));
  }

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  Rational operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }

  bool positive() const { return num_ > 0; }

 private:
  void normalize() {
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    std::int64_t g = std::gcd(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  std::int64_t num_;
  std::int64_t den_;
};

/// a = largest integer with a <= 1/alpha; the largest query size on which a
/// NO answer certifies that the queried set is clean.
inline int floor_inv_alpha(const Rational& alpha) {
  if (!alpha.positive() || alpha >= Rational(1, 1))
    throw std::invalid_argument("floor_inv_alpha: alpha must lie in (0,1)");
  return static_cast<int>(alpha.den() / alpha.num());
}

}  // namespace dgt
