#pragma once

#include <array>
#include <map>
#include <string>

#include "bisheaf/rational.hpp"

namespace bisheaf {

/// Exponent tuple (x, y). For one-variable germs the y exponent is always 0.
using Exponent = std::array<int, 2>;

/// Truncated polynomial jet in one or two variables at the origin.
///
/// Coefficients are exact rationals. The representation is canonical: zero
/// coefficients are never stored, and any term whose total degree exceeds
/// `max_degree()` is discarded on insertion.
class Germ {
 public:
  static constexpr int kDefaultMaxDegree = 12;

  explicit Germ(int nvars = 1, int max_degree = kDefaultMaxDegree);

  static Germ monomial(int nvars, Exponent e, Rational c = 1, int max_degree = kDefaultMaxDegree);
  /// c·x^k in one variable.
  static Germ power(int k, Rational c = 1);

  int nvars() const { return nvars_; }
  int max_degree() const { return max_degree_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }

  Rational coefficient(Exponent e) const;
  void add_term(Exponent e, Rational c);

  bool is_zero() const { return terms_.empty(); }
  /// Highest total degree present; -1 for the zero germ.
  int degree() const;
  /// Lowest total degree present; -1 for the zero germ.
  int order() const;

  Rational constant_term() const { return coefficient({0, 0}); }
  /// Exact Hessian at the origin: [[f_xx, f_xy], [f_xy, f_yy]] (1×1 block used for nvars 1).
  std::array<std::array<Rational, 2>, 2> hessian_at_origin() const;
  std::array<Rational, 2> gradient_at_origin() const;

  /// Formal partial derivative in variable `var` (0 = x, 1 = y).
  Germ derivative(int var = 0) const;
  /// Terms of total degree in [lo, hi].
  Germ homogeneous_range(int lo, int hi) const;
  Germ with_nvars(int nvars) const;
  Germ with_max_degree(int max_degree) const;

  double evaluate(double x, double y = 0.0) const;

  Germ& operator+=(const Germ& o);
  Germ& operator-=(const Germ& o);
  Germ& operator*=(const Rational& c);
  friend Germ operator+(Germ a, const Germ& b) { return a += b; }
  friend Germ operator-(Germ a, const Germ& b) { return a -= b; }
  friend Germ operator*(Germ a, const Rational& c) { return a *= c; }
  /// Polynomial product, truncated at the larger of the two truncation orders.
  friend Germ operator*(const Germ& a, const Germ& b);

  /// Equality compares variables and terms; truncation order is not part of the value.
  friend bool operator==(const Germ& a, const Germ& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Human-readable form, e.g. "x^3 - 3*x*y^2"; "0" for the zero germ.
  std::string to_string() const;

 private:
  int nvars_;
  int max_degree_;
  std::map<Exponent, Rational> terms_;
};

}  // namespace bisheaf
