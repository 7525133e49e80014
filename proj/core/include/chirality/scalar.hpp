#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace chiral {

enum class ArithmeticMode { kExact, kFloat };

// Process-wide mode. Scalars built from literals or parsed text follow it;
// arithmetic between an exact and a float operand yields a float.
ArithmeticMode arithmetic_mode();
void set_arithmetic_mode(ArithmeticMode mode);

class ScopedArithmeticMode {
 public:
  explicit ScopedArithmeticMode(ArithmeticMode mode);
  ~ScopedArithmeticMode();
  ScopedArithmeticMode(const ScopedArithmeticMode&) = delete;
  ScopedArithmeticMode& operator=(const ScopedArithmeticMode&) = delete;

 private:
  ArithmeticMode previous_;
};

/// A real number, either an exact GMP rational or an IEEE double.
class Scalar {
 public:
  Scalar() : Scalar(0L) {}
  Scalar(int value) : Scalar(static_cast<long>(value)) {}  // NOLINT
  Scalar(long value);                                      // NOLINT
  Scalar(long long value) : Scalar(static_cast<long>(value)) {}  // NOLINT
  Scalar(long num, long den);
  explicit Scalar(mpq_class value);

  static Scalar from_double(double value);
  static Scalar exact(const mpq_class& value) { return Scalar(value); }
  static Scalar floating(double value);
  // Accepts "7", "-3/4", "0.125", "1e-3".
  static Scalar parse(std::string_view text);

  bool is_exact() const { return exact_; }
  int sign() const;
  bool is_zero() const { return sign() == 0; }
  double to_double() const;
  const mpq_class& rational() const;
  std::string str() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  friend int compare(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return compare(a, b) != 0; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return compare(a, b) > 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return compare(a, b) >= 0; }

 private:
  void demote();
  void check_finite() const;

  mpq_class q_;
  double d_ = 0.0;
  bool exact_ = true;
};

Scalar abs(const Scalar& x);
Scalar pow2(int exponent);  // 2^exponent, exponent may be negative

}  // namespace chiral
