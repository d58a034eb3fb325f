#include "bisheaf/rational.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "bisheaf/types.hpp"

namespace bisheaf {
namespace {

__extension__ using Wide = __int128;

std::int64_t narrow(Wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    contract_violation("rational arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make(Wide n, Wide d) {
  if (d == 0) contract_violation("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Wide g = wide_gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rational(narrow(n), narrow(d));
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) contract_violation("rational with zero denominator");
  if (d < 0) {
    if (n == std::numeric_limits<std::int64_t>::min() || d == std::numeric_limits<std::int64_t>::min())
      contract_violation("rational arithmetic overflow");
    n = -n;
    d = -d;
  }
  std::int64_t g = std::gcd(n, d);
  num_ = n / g;
  den_ = d / g;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::from_double(double v, double tol) {
  if (!std::isfinite(v)) invalid_config("non-finite coefficient");
  if (std::fabs(v) > 9.0e15) invalid_config("coefficient magnitude too large for exact snapping");
  // Continued-fraction convergents h/k.
  double x = v;
  Wide h_prev = 1, h = static_cast<Wide>(std::floor(x));
  Wide k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    if (std::fabs(static_cast<double>(h) / static_cast<double>(k) - v) <= tol) break;
    if (frac < 1e-18) break;
    x = 1.0 / frac;
    Wide a = static_cast<Wide>(std::floor(x));
    frac = x - std::floor(x);
    Wide h_next = a * h + h_prev;
    Wide k_next = a * k + k_prev;
    if (k_next > (Wide{1} << 62)) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return make(h, k);
}

Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      std::int64_t n = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return Rational(n);
    }
    std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
    std::int64_t n = std::stoll(ns, &used);
    if (used != ns.size()) throw std::invalid_argument(s);
    std::int64_t d = std::stoll(ds, &used);
    if (used != ds.size()) throw std::invalid_argument(s);
    if (d == 0) throw std::invalid_argument(s);
    return Rational(n, d);
  } catch (const std::logic_error&) {
    invalid_config("cannot parse rational '" + s + "'");
  }
}

Rational Rational::operator-() const { return make(-Wide{num_}, den_); }

Rational& Rational::operator+=(const Rational& o) {
  return *this = make(Wide{num_} * o.den_ + Wide{o.num_} * den_, Wide{den_} * o.den_);
}

Rational& Rational::operator-=(const Rational& o) {
  return *this = make(Wide{num_} * o.den_ - Wide{o.num_} * den_, Wide{den_} * o.den_);
}

Rational& Rational::operator*=(const Rational& o) {
  return *this = make(Wide{num_} * o.num_, Wide{den_} * o.den_);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) contract_violation("rational division by zero");
  return *this = make(Wide{num_} * o.den_, Wide{den_} * o.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide l = Wide{a.num_} * b.den_;
  Wide r = Wide{b.num_} * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace bisheaf
