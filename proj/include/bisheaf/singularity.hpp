#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bisheaf/germ.hpp"
#include "bisheaf/sheaf.hpp"

namespace bisheaf {

enum class SingularityName {
  Regular,
  Morse,
  Fold,
  Cusp,
  Swallowtail,
  EllipticUmbilic,
  HyperbolicUmbilic,
  Unclassified,
};

struct SingularityClass {
  SingularityName name = SingularityName::Unclassified;
  int corank = 0;
  int codim = 0;

  friend bool operator==(const SingularityClass&, const SingularityClass&) = default;
};

std::string to_string(SingularityName n);
SingularityName parse_singularity(std::string_view s);

/// True for the five degenerate germs with versal unfoldings:
/// fold, cusp, swallowtail and the two umbilics.
bool is_catalogue(SingularityName n);
/// (corank, codim) record of a named class. Unclassified has no canonical record.
SingularityClass catalogue_class(SingularityName n);
const std::vector<SingularityName>& catalogue_names();

/// Normal form of a catalogue germ. Corank-1 forms on two variables are
/// stabilized with a Morse square: x^(k+1) + y².
Germ normal_form(SingularityName n, int nvars = 0);

int hessian_rank(const Germ& g);
/// nvars − rank of the exact Hessian at the origin.
int corank(const Germ& g);

/// Total classification.
///
/// Non-critical germs (nonzero constant or gradient) and the zero germ are
/// Regular; a nondegenerate Hessian is Morse. Corank-1 germs are matched by
/// the lowest-order term of the residual variable once the Morse variable has
/// been split off, which is only attempted when the germ separates along the
/// coordinate axes. Corank-2 germs are matched on their cubic part under axis
/// swaps, sign flips and positive axis scalings. Everything else is
/// Unclassified with the computed corank.
SingularityClass classify_germ(const Germ& g);

struct UnfoldingParameter {
  std::string name;  // a1, a2, ... or b1, b2, ...
  Germ monomial;     // attached term, sign included (b2 ↦ -y)

  friend bool operator==(const UnfoldingParameter&, const UnfoldingParameter&) = default;
};

struct Unfolding {
  Germ base;
  std::vector<UnfoldingParameter> parameters;
  int codim = 0;

  /// F with every parameter slot set to the given value.
  Germ specialize(const std::vector<Rational>& values) const;
  /// e.g. "x^4 + a1*x + a2*x^2".
  std::string to_string() const;
};

Unfolding versal_unfold(const SingularityClass& c);

/// {x, x², ..., x^(k-1)} for a corank-1 class; throws for corank 2.
std::vector<Germ> quotient_basis(const SingularityClass& c);

/// Replaces every section germ with the normal form of `c` and marks the result singular (φ*).
Semisheaf inject_singularity(const Semisheaf& s, const SingularityClass& c);
Bisemisheaf inject_singularity(const Bisemisheaf& b, const SingularityClass& c);

}  // namespace bisheaf
