#include "bisheaf/singularity.hpp"

#include <algorithm>
#include <array>

namespace bisheaf {

std::string to_string(SingularityName n) {
  switch (n) {
    case SingularityName::Regular: return "Regular";
    case SingularityName::Morse: return "Morse";
    case SingularityName::Fold: return "Fold";
    case SingularityName::Cusp: return "Cusp";
    case SingularityName::Swallowtail: return "Swallowtail";
    case SingularityName::EllipticUmbilic: return "EllipticUmbilic";
    case SingularityName::HyperbolicUmbilic: return "HyperbolicUmbilic";
    case SingularityName::Unclassified: return "Unclassified";
  }
  return "?";
}

SingularityName parse_singularity(std::string_view s) {
  for (auto n : {SingularityName::Regular, SingularityName::Morse, SingularityName::Fold, SingularityName::Cusp,
                 SingularityName::Swallowtail, SingularityName::EllipticUmbilic, SingularityName::HyperbolicUmbilic,
                 SingularityName::Unclassified})
    if (to_string(n) == s) return n;
  invalid_config("unknown singularity class '" + std::string(s) + "'");
}

bool is_catalogue(SingularityName n) {
  return n == SingularityName::Fold || n == SingularityName::Cusp || n == SingularityName::Swallowtail ||
         n == SingularityName::EllipticUmbilic || n == SingularityName::HyperbolicUmbilic;
}

SingularityClass catalogue_class(SingularityName n) {
  switch (n) {
    case SingularityName::Regular: return {n, 0, 0};
    case SingularityName::Morse: return {n, 0, 0};
    case SingularityName::Fold: return {n, 1, 1};
    case SingularityName::Cusp: return {n, 1, 2};
    case SingularityName::Swallowtail: return {n, 1, 3};
    case SingularityName::EllipticUmbilic: return {n, 2, 3};
    case SingularityName::HyperbolicUmbilic: return {n, 2, 3};
    case SingularityName::Unclassified: break;
  }
  contract_violation("Unclassified has no catalogue record");
}

const std::vector<SingularityName>& catalogue_names() {
  static const std::vector<SingularityName> names{SingularityName::Fold, SingularityName::Cusp,
                                                  SingularityName::Swallowtail, SingularityName::EllipticUmbilic,
                                                  SingularityName::HyperbolicUmbilic};
  return names;
}

namespace {

int pure_power(SingularityName n) {
  switch (n) {
    case SingularityName::Fold: return 3;
    case SingularityName::Cusp: return 4;
    case SingularityName::Swallowtail: return 5;
    default: return 0;
  }
}

bool is_umbilic(SingularityName n) {
  return n == SingularityName::EllipticUmbilic || n == SingularityName::HyperbolicUmbilic;
}

SingularityName by_order(int order) {
  switch (order) {
    case 3: return SingularityName::Fold;
    case 4: return SingularityName::Cusp;
    case 5: return SingularityName::Swallowtail;
    default: return SingularityName::Unclassified;
  }
}

SingularityClass corank_one_class(int residual_order) {
  SingularityName n = by_order(residual_order);
  if (n != SingularityName::Unclassified) return catalogue_class(n);
  return {n, 1, residual_order >= 3 ? residual_order - 2 : 0};
}

// Cubic part as coefficients of x³, x²y, xy², y³.
using Cubic = std::array<Rational, 4>;

Cubic cubic_of(const Germ& g) {
  return {g.coefficient({3, 0}), g.coefficient({2, 1}), g.coefficient({1, 2}), g.coefficient({0, 3})};
}

// Substitutes x → sx·(swap ? y : x), y → sy·(swap ? x : y).
Cubic transform(const Cubic& c, bool swap, int sx, int sy) {
  // Coefficient of x^(3-k) y^k picks up sx^(3-k) sy^k.
  Cubic out{};
  for (int k = 0; k < 4; ++k) {
    Rational v = c[static_cast<std::size_t>(k)];
    if ((3 - k) % 2 == 1) v *= sx;
    if (k % 2 == 1) v *= sy;
    int target = swap ? 3 - k : k;
    out[static_cast<std::size_t>(target)] = v;
  }
  return out;
}

SingularityName match_umbilic(const Cubic& cubic) {
  for (bool swap : {false, true}) {
    for (int sx : {1, -1}) {
      for (int sy : {1, -1}) {
        Cubic c = transform(cubic, swap, sx, sy);
        const Rational zero{};
        if (!c[0].is_zero() && c[1].is_zero() && c[2].is_zero() && !c[3].is_zero())
          return SingularityName::HyperbolicUmbilic;
        if (!c[0].is_zero() && c[1].is_zero() && c[3].is_zero() && !c[2].is_zero() && c[0] * c[2] < zero)
          return SingularityName::EllipticUmbilic;
      }
    }
  }
  return SingularityName::Unclassified;
}

}  // namespace

Germ normal_form(SingularityName n, int nvars) {
  if (!is_catalogue(n)) contract_violation(to_string(n) + " has no normal form");
  if (is_umbilic(n)) {
    if (nvars == 1) contract_violation(to_string(n) + " needs two variables");
    Germ g(2);
    g.add_term({3, 0}, 1);
    if (n == SingularityName::EllipticUmbilic) {
      g.add_term({1, 2}, -3);
    } else {
      g.add_term({0, 3}, 1);
    }
    return g;
  }
  Germ g(nvars == 2 ? 2 : 1);
  g.add_term({pure_power(n), 0}, 1);
  if (nvars == 2) g.add_term({0, 2}, 1);
  return g;
}

int hessian_rank(const Germ& g) {
  auto h = g.hessian_at_origin();
  if (g.nvars() == 1) return h[0][0].is_zero() ? 0 : 1;
  if ((h[0][0] * h[1][1] - h[0][1] * h[1][0]) != Rational{}) return 2;
  if (h[0][0].is_zero() && h[0][1].is_zero() && h[1][1].is_zero()) return 0;
  return 1;
}

int corank(const Germ& g) { return g.nvars() - hessian_rank(g); }

SingularityClass classify_germ(const Germ& g) {
  const SingularityClass regular = catalogue_class(SingularityName::Regular);
  if (g.is_zero() || !g.constant_term().is_zero()) return regular;
  auto grad = g.gradient_at_origin();
  if (!grad[0].is_zero() || !grad[1].is_zero()) return regular;

  int cr = corank(g);
  if (cr == 0) return catalogue_class(SingularityName::Morse);

  if (g.nvars() == 1) return corank_one_class(g.order());

  if (cr == 1) {
    auto h = g.hessian_at_origin();
    int morse_var;
    if (!h[0][0].is_zero() && h[0][1].is_zero() && h[1][1].is_zero()) {
      morse_var = 0;
    } else if (h[0][0].is_zero() && h[0][1].is_zero() && !h[1][1].is_zero()) {
      morse_var = 1;
    } else {
      return {SingularityName::Unclassified, 1, 0};  // kernel is not a coordinate axis
    }
    int residual_var = 1 - morse_var;
    Germ residual(2, g.max_degree());
    for (const auto& [e, c] : g.terms()) {
      if (e[0] != 0 && e[1] != 0) return {SingularityName::Unclassified, 1, 0};
      if (e[residual_var] != 0) residual.add_term(e, c);
    }
    if (residual.is_zero()) return {SingularityName::Unclassified, 1, 0};
    return corank_one_class(residual.order());
  }

  SingularityName n = match_umbilic(cubic_of(g));
  if (n == SingularityName::Unclassified) return {n, 2, 0};
  return catalogue_class(n);
}

Germ Unfolding::specialize(const std::vector<Rational>& values) const {
  if (values.size() != parameters.size()) contract_violation("one value per unfolding parameter required");
  Germ out = base;
  for (std::size_t i = 0; i < values.size(); ++i) out += parameters[i].monomial * values[i];
  return out;
}

std::string Unfolding::to_string() const {
  std::string out = base.to_string();
  for (const auto& p : parameters) {
    const auto& terms = p.monomial.terms();
    if (terms.size() == 1 && terms.begin()->second == Rational{-1}) {
      out += " - " + p.name + "*" + (p.monomial * Rational{-1}).to_string();
    } else if (terms.size() == 1 && terms.begin()->second == Rational{1}) {
      out += " + " + p.name + "*" + p.monomial.to_string();
    } else {
      out += " + " + p.name + "*(" + p.monomial.to_string() + ")";
    }
  }
  return out;
}

Unfolding versal_unfold(const SingularityClass& c) {
  if (!is_catalogue(c.name)) contract_violation("no versal unfolding for " + to_string(c.name));
  Unfolding u;
  u.base = normal_form(c.name);
  u.codim = catalogue_class(c.name).codim;
  auto mono2 = [](Exponent e, Rational k) { return Germ::monomial(2, e, k); };
  switch (c.name) {
    case SingularityName::Fold:
    case SingularityName::Cusp:
    case SingularityName::Swallowtail:
      for (int i = 1; i <= u.codim; ++i) u.parameters.push_back({"a" + std::to_string(i), Germ::power(i)});
      break;
    case SingularityName::EllipticUmbilic: {
      Germ radial = mono2({2, 0}, 1) + mono2({0, 2}, 1);
      u.parameters.push_back({"b1", radial});
      u.parameters.push_back({"b2", mono2({0, 1}, -1)});
      u.parameters.push_back({"b3", mono2({1, 0}, -1)});
      break;
    }
    case SingularityName::HyperbolicUmbilic:
      u.parameters.push_back({"b2", mono2({0, 1}, -1)});
      u.parameters.push_back({"b3", mono2({1, 0}, -1)});
      u.parameters.push_back({"b4", mono2({1, 1}, 1)});
      break;
    default:
      break;
  }
  return u;
}

std::vector<Germ> quotient_basis(const SingularityClass& c) {
  if (c.corank != 1 || !is_catalogue(c.name))
    contract_violation("quotient basis is defined for corank-1 catalogue classes, got " + to_string(c.name));
  std::vector<Germ> out;
  for (int i = 1; i <= c.codim; ++i) out.push_back(Germ::power(i));
  return out;
}

Semisheaf inject_singularity(const Semisheaf& s, const SingularityClass& c) {
  if (!is_catalogue(c.name)) contract_violation("cannot inject " + to_string(c.name) + " into sections");
  std::vector<Section> out = s.section_list();
  for (auto& sec : out) {
    if (is_umbilic(c.name) && sec.dims != 2)
      contract_violation(to_string(c.name) + " needs two-dimensional sections, section " + to_string(sec.index) +
                         " is " + std::to_string(sec.dims) + "-dimensional");
    sec.germ = normal_form(c.name, sec.dims);
  }
  return s.with_sections(std::move(out)).with_singular(true);
}

Bisemisheaf inject_singularity(const Bisemisheaf& b, const SingularityClass& c) {
  return {inject_singularity(b.right(), c), inject_singularity(b.left(), c)};
}

}  // namespace bisheaf
