#include "bisheaf/germ.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bisheaf/types.hpp"

namespace bisheaf {

Germ::Germ(int nvars, int max_degree) : nvars_(nvars), max_degree_(max_degree) {
  if (nvars != 1 && nvars != 2) contract_violation("germ must have 1 or 2 variables");
  if (max_degree < 0) contract_violation("germ truncation order must be non-negative");
}

Germ Germ::monomial(int nvars, Exponent e, Rational c, int max_degree) {
  Germ g(nvars, max_degree);
  g.add_term(e, c);
  return g;
}

Germ Germ::power(int k, Rational c) {
  return monomial(1, {k, 0}, c, std::max(kDefaultMaxDegree, k));
}

Rational Germ::coefficient(Exponent e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational{} : it->second;
}

void Germ::add_term(Exponent e, Rational c) {
  if (e[0] < 0 || e[1] < 0) contract_violation("negative exponent in germ term");
  if (nvars_ == 1 && e[1] != 0) contract_violation("y exponent on a one-variable germ");
  if (e[0] + e[1] > max_degree_ || c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int Germ::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1]);
  return d;
}

int Germ::order() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int t = e[0] + e[1];
    if (d < 0 || t < d) d = t;
  }
  return d;
}

std::array<std::array<Rational, 2>, 2> Germ::hessian_at_origin() const {
  Rational fxx = coefficient({2, 0}) * 2;
  Rational fxy = coefficient({1, 1});
  Rational fyy = coefficient({0, 2}) * 2;
  return {{{fxx, fxy}, {fxy, fyy}}};
}

std::array<Rational, 2> Germ::gradient_at_origin() const {
  return {coefficient({1, 0}), coefficient({0, 1})};
}

Germ Germ::derivative(int var) const {
  if (var < 0 || var >= nvars_) contract_violation("derivative variable out of range");
  Germ out(nvars_, max_degree_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    out.add_term(d, c * e[var]);
  }
  return out;
}

Germ Germ::homogeneous_range(int lo, int hi) const {
  Germ out(nvars_, max_degree_);
  for (const auto& [e, c] : terms_) {
    int t = e[0] + e[1];
    if (t >= lo && t <= hi) out.add_term(e, c);
  }
  return out;
}

Germ Germ::with_nvars(int nvars) const {
  Germ out(nvars, max_degree_);
  for (const auto& [e, c] : terms_) out.add_term(e, c);
  return out;
}

Germ Germ::with_max_degree(int max_degree) const {
  Germ out(nvars_, max_degree);
  for (const auto& [e, c] : terms_) out.add_term(e, c);
  return out;
}

double Germ::evaluate(double x, double y) const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += c.to_double() * std::pow(x, e[0]) * std::pow(y, e[1]);
  return s;
}

Germ& Germ::operator+=(const Germ& o) {
  if (o.nvars_ != nvars_) contract_violation("adding germs with different variable counts");
  max_degree_ = std::max(max_degree_, o.max_degree_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Germ& Germ::operator-=(const Germ& o) {
  if (o.nvars_ != nvars_) contract_violation("subtracting germs with different variable counts");
  max_degree_ = std::max(max_degree_, o.max_degree_);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Germ& Germ::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Germ operator*(const Germ& a, const Germ& b) {
  if (a.nvars_ != b.nvars_) contract_violation("multiplying germs with different variable counts");
  Germ out(a.nvars_, std::max(a.max_degree_, b.max_degree_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term({ea[0] + eb[0], ea[1] + eb[1]}, ca * cb);
  return out;
}

std::string Germ::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponent, Rational>> ordered(terms_.begin(), terms_.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& l, const auto& r) {
    int dl = l.first[0] + l.first[1], dr = r.first[0] + r.first[1];
    if (dl != dr) return dl < dr;
    return l.first[0] > r.first[0];
  });
  std::string out;
  bool first = true;
  for (const auto& [e, c] : ordered) {
    Rational mag = c < Rational{} ? -c : c;
    if (first) {
      if (c < Rational{}) out += "-";
    } else {
      out += c < Rational{} ? " - " : " + ";
    }
    first = false;
    std::string mono;
    auto var = [&](const char* name, int p) {
      if (p == 0) return;
      if (!mono.empty()) mono += "*";
      mono += name;
      if (p > 1) mono += "^" + std::to_string(p);
    };
    var("x", e[0]);
    var("y", e[1]);
    if (mono.empty()) {
      out += mag.to_string();
    } else if (mag == Rational{1}) {
      out += mono;
    } else {
      out += mag.to_string() + "*" + mono;
    }
  }
  return out;
}

}  // namespace bisheaf
