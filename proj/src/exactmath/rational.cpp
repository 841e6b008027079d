#include "flopslope/exactmath/rational.hpp"

#include "flopslope/error.hpp"

#include <cctype>
#include <ostream>

namespace flopslope {

namespace mp = boost::multiprecision;

Rational::Rational(long long value) : value_(value) {}

Rational::Rational(Integer value) : value_(std::move(value)) {}

Rational::Rational(Integer numerator, Integer denominator) {
  if (denominator == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  value_ = Value(std::move(numerator), std::move(denominator));
}

Rational::Rational(long long numerator, long long denominator)
    : Rational(Integer(numerator), Integer(denominator)) {}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw ParseError("malformed integer '" + std::string(s) + "'");
  }
  Integer value{std::string(s)};
  return negative ? Integer(-value) : value;
}

Integer pow10(unsigned n) {
  Integer r = 1;
  for (unsigned i = 0; i < n; ++i) r *= 10;
  return r;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw ParseError("malformed denominator in '" + std::string(text) + "'");
    Integer den(std::string{den_text});
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(std::move(num), std::move(den));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw ParseError("malformed decimal '" + std::string(text) + "'");
    }
    Integer scale = pow10(static_cast<unsigned>(frac.size()));
    Integer num = (whole.empty() ? Integer(0) : Integer(std::string(whole))) * scale +
                  (frac.empty() ? Integer(0) : Integer(std::string(frac)));
    if (negative) num = -num;
    return Rational(std::move(num), std::move(scale));
  }
  return Rational(parse_integer(text));
}

Integer Rational::numerator() const { return mp::numerator(value_); }
Integer Rational::denominator() const { return mp::denominator(value_); }

int Rational::sign() const { return value_.sign(); }

bool Rational::is_integer() const { return mp::denominator(value_) == 1; }

Rational Rational::abs() const { return Rational(Value(mp::abs(value_))); }

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return Rational(Value(1) / value_);
}

Integer Rational::floor() const {
  Integer n = numerator();
  Integer d = denominator();
  Integer q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(Value(-value_)); }

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  if (lhs.value_ < rhs.value_) return std::strong_ordering::less;
  if (lhs.value_ > rhs.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  std::string out = numerator().str();
  if (!is_integer()) {
    out += '/';
    out += denominator().str();
  }
  return out;
}

std::string Rational::decimal(int significant) const {
  if (significant < 1) significant = 1;
  if (is_zero()) return "0";
  Integer num = mp::abs(numerator());
  Integer den = denominator();

  // exponent e with 10^e <= |q| < 10^(e+1)
  int e = static_cast<int>(num.str().size()) - static_cast<int>(den.str().size());
  auto at_least_pow10 = [&](int k) {
    // |q| >= 10^k  <=>  num * 10^-k >= den
    return k >= 0 ? num >= den * pow10(static_cast<unsigned>(k)) : num * pow10(static_cast<unsigned>(-k)) >= den;
  };
  while (!at_least_pow10(e)) --e;
  while (at_least_pow10(e + 1)) ++e;

  int shift = significant - 1 - e;
  Integer scaled_num = shift >= 0 ? num * pow10(static_cast<unsigned>(shift)) : num;
  Integer scaled_den = shift >= 0 ? den : den * pow10(static_cast<unsigned>(-shift));
  Integer digits = (2 * scaled_num + scaled_den) / (2 * scaled_den);  // round half up
  if (digits == pow10(static_cast<unsigned>(significant))) {
    digits /= 10;
    ++e;
  }
  std::string d = digits.str();
  while (d.size() > 1 && d.back() == '0') d.pop_back();

  std::string out = sign() < 0 ? "-" : "";
  if (e < -4 || e >= significant) {
    out += d.substr(0, 1);
    if (d.size() > 1) out += "." + d.substr(1);
    out += (e < 0 ? "e-" : "e+");
    std::string ex = std::to_string(e < 0 ? -e : e);
    if (ex.size() < 2) ex = "0" + ex;
    out += ex;
  } else if (e < 0) {
    out += "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + d;
  } else {
    auto int_len = static_cast<std::size_t>(e + 1);
    if (d.size() <= int_len) {
      out += d + std::string(int_len - d.size(), '0');
    } else {
      out += d.substr(0, int_len) + "." + d.substr(int_len);
    }
  }
  return out;
}

double Rational::to_double() const { return value_.convert_to<double>(); }

std::size_t Rational::hash() const {
  return std::hash<std::string>{}(str());
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (hi < lo) return simplest_between(hi, lo);
  if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
  if (hi.sign() < 0) return -simplest_between(-hi, -lo);
  Rational fl(lo.floor());
  if (fl == lo) return lo;
  if (fl + 1 <= hi) return fl + 1;
  return fl + simplest_between((hi - fl).inverse(), (lo - fl).inverse()).inverse();
}

}  // namespace flopslope
