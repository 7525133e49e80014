#include "chirality/scalar.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

#include "chirality/errors.hpp"

namespace chiral {
namespace {

std::atomic<ArithmeticMode> g_mode{ArithmeticMode::kExact};

bool float_mode() { return g_mode.load(std::memory_order_relaxed) == ArithmeticMode::kFloat; }

mpq_class parse_decimal(std::string_view text) {
  // mantissa[e exponent], handled exactly
  std::string s(text);
  std::size_t epos = s.find_first_of("eE");
  long exponent = 0;
  if (epos != std::string::npos) {
    char* end = nullptr;
    exponent = std::strtol(s.c_str() + epos + 1, &end, 10);
    if (end == s.c_str() + epos + 1 || *end != '\0') throw InvalidInput("bad exponent in '" + s + "'");
    s.resize(epos);
  }
  bool negative = false;
  std::size_t pos = 0;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    negative = s[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      throw InvalidInput("bad number '" + std::string(text) + "'");
    }
  }
  if (digits.empty()) throw InvalidInput("bad number '" + std::string(text) + "'");
  mpz_class num(digits, 10);
  if (negative) num = -num;
  long scale = exponent - frac_digits;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  mpq_class result = scale >= 0 ? mpq_class(num * ten_pow) : mpq_class(num, ten_pow);
  result.canonicalize();
  return result;
}

}  // namespace

ArithmeticMode arithmetic_mode() { return g_mode.load(std::memory_order_relaxed); }
void set_arithmetic_mode(ArithmeticMode mode) { g_mode.store(mode, std::memory_order_relaxed); }

ScopedArithmeticMode::ScopedArithmeticMode(ArithmeticMode mode) : previous_(arithmetic_mode()) {
  set_arithmetic_mode(mode);
}
ScopedArithmeticMode::~ScopedArithmeticMode() { set_arithmetic_mode(previous_); }

Scalar::Scalar(long value) {
  if (float_mode()) {
    exact_ = false;
    d_ = static_cast<double>(value);
  } else {
    q_ = value;
  }
}

Scalar::Scalar(long num, long den) {
  if (den == 0) throw NumericError("zero denominator");
  if (float_mode()) {
    exact_ = false;
    d_ = static_cast<double>(num) / static_cast<double>(den);
  } else {
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
}

Scalar::Scalar(mpq_class value) : q_(std::move(value)) { q_.canonicalize(); }

Scalar Scalar::floating(double value) {
  Scalar s;
  s.exact_ = false;
  s.q_ = 0;
  s.d_ = value;
  s.check_finite();
  return s;
}

Scalar Scalar::from_double(double value) {
  if (!std::isfinite(value)) throw NumericError("non-finite value");
  if (float_mode()) return floating(value);
  return Scalar(mpq_class(value));
}

Scalar Scalar::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw InvalidInput("empty number");
  mpq_class value;
  std::size_t slash = text.find('/');
  if (slash != std::string_view::npos) {
    mpq_class num = parse_decimal(text.substr(0, slash));
    mpq_class den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    value = num / den;
  } else {
    value = parse_decimal(text);
  }
  if (float_mode()) return floating(value.get_d());
  return Scalar(value);
}

int Scalar::sign() const {
  if (exact_) return sgn(q_);
  return (d_ > 0) - (d_ < 0);
}

double Scalar::to_double() const { return exact_ ? q_.get_d() : d_; }

const mpq_class& Scalar::rational() const {
  if (!exact_) throw NumericError("rational value requested from a float scalar");
  return q_;
}

std::string Scalar::str() const {
  if (exact_) return q_.get_str();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", d_);
  return buf;
}

void Scalar::demote() {
  if (exact_) {
    d_ = q_.get_d();
    exact_ = false;
  }
}

void Scalar::check_finite() const {
  if (!exact_ && !std::isfinite(d_)) throw NumericError("non-finite float result");
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (exact_) {
    r.q_ = -q_;
  } else {
    r.d_ = -d_;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (exact_ && rhs.exact_) {
    q_ += rhs.q_;
  } else {
    demote();
    d_ += rhs.to_double();
    check_finite();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  if (exact_ && rhs.exact_) {
    q_ -= rhs.q_;
  } else {
    demote();
    d_ -= rhs.to_double();
    check_finite();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (exact_ && rhs.exact_) {
    q_ *= rhs.q_;
  } else {
    demote();
    d_ *= rhs.to_double();
    check_finite();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (rhs.is_zero()) throw NumericError("division by zero");
  if (exact_ && rhs.exact_) {
    q_ /= rhs.q_;
  } else {
    demote();
    d_ /= rhs.to_double();
    check_finite();
  }
  return *this;
}

int compare(const Scalar& a, const Scalar& b) {
  if (a.exact_ && b.exact_) return cmp(a.q_, b.q_);
  double x = a.to_double();
  double y = b.to_double();
  return (x > y) - (x < y);
}

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

Scalar pow2(int exponent) {
  if (arithmetic_mode() == ArithmeticMode::kFloat) return Scalar::floating(std::ldexp(1.0, exponent));
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(std::abs(exponent)));
  return Scalar(exponent >= 0 ? mpq_class(p) : mpq_class(mpz_class(1), p));
}

}  // namespace chiral
